#include "graphmag/tensor.hpp"

#include "graphmag/error.hpp"

#include <string>

namespace graphmag {

std::string_view to_string(ErrorCode code) {
	switch (code) {
	case ErrorCode::NotHermitian: return "NotHermitian";
	case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
	case ErrorCode::DimensionMismatch: return "DimensionMismatch";
	case ErrorCode::TooFewQubits: return "TooFewQubits";
	case ErrorCode::TooLarge: return "TooLarge";
	case ErrorCode::InvalidGraph: return "InvalidGraph";
	case ErrorCode::BadAxis: return "BadAxis";
	case ErrorCode::MissingTauC: return "MissingTauC";
	case ErrorCode::BadProbability: return "BadProbability";
	case ErrorCode::SingularInformation: return "SingularInformation";
	case ErrorCode::DegeneratePosterior: return "DegeneratePosterior";
	case ErrorCode::BadDomain: return "BadDomain";
	case ErrorCode::EmptyGrid: return "EmptyGrid";
	case ErrorCode::ConfigError: return "ConfigError";
	case ErrorCode::IoError: return "IoError";
	}
	return "Unknown";
}

ComplexMatrix::ComplexMatrix(Eigen::Index rows, Eigen::Index cols) : m_(Eigen::MatrixXcd::Zero(rows, cols)) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cx_double>> rows) {
	const auto r = static_cast<Eigen::Index>(rows.size());
	const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
	m_ = Eigen::MatrixXcd::Zero(r, c);
	Eigen::Index i = 0;
	for (const auto& row : rows) {
		if (static_cast<Eigen::Index>(row.size()) != c) {
			throw Error(ErrorCode::DimensionMismatch, "ragged initializer list");
		}
		Eigen::Index j = 0;
		for (const auto& v : row) {
			m_(i, j++) = v;
		}
		++i;
	}
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index dim) {
	return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zeros(Eigen::Index rows, Eigen::Index cols) {
	return ComplexMatrix(rows, cols);
}

cx_double ComplexMatrix::at(Eigen::Index r, Eigen::Index c) const {
	if (r < 0 || c < 0 || r >= m_.rows() || c >= m_.cols()) {
		throw Error(ErrorCode::IndexOutOfRange,
		            "entry (" + std::to_string(r) + "," + std::to_string(c) + ") of " +
		                std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
	}
	return m_(r, c);
}

cx_double& ComplexMatrix::at(Eigen::Index r, Eigen::Index c) {
	if (r < 0 || c < 0 || r >= m_.rows() || c >= m_.cols()) {
		throw Error(ErrorCode::IndexOutOfRange,
		            "entry (" + std::to_string(r) + "," + std::to_string(c) + ") of " +
		                std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
	}
	return m_(r, c);
}

namespace {

void require_same_shape(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const char* what) {
	if (a.rows() != b.rows() || a.cols() != b.cols()) {
		throw Error(ErrorCode::DimensionMismatch, what);
	}
}

} // namespace

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
	require_same_shape(m_, other.m_, "max_abs_diff");
	if (m_.size() == 0) {
		return 0.0;
	}
	return (m_ - other.m_).cwiseAbs().maxCoeff();
}

double ComplexMatrix::hermiticity_error() const {
	if (m_.rows() != m_.cols()) {
		throw Error(ErrorCode::DimensionMismatch, "hermiticity of a non-square matrix");
	}
	if (m_.size() == 0) {
		return 0.0;
	}
	return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
	if (a.cols() != b.rows()) {
		throw Error(ErrorCode::DimensionMismatch, "matrix product");
	}
	return ComplexMatrix(a.m_ * b.m_);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_shape(a.m_, b.m_, "matrix sum");
	return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_shape(a.m_, b.m_, "matrix difference");
	return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix EigenDecomposition::reconstruct() const {
	return ComplexMatrix(eigenvectors * eigenvalues.cast<cx_double>().asDiagonal() * eigenvectors.adjoint());
}

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cx_double(0.0, -1.0)}, {cx_double(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix hadamard() {
	const double s = 1.0 / std::sqrt(2.0);
	return {{s, s}, {s, -s}};
}

} // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
	const auto& A = a.eigen();
	const auto& B = b.eigen();
	Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
	for (Eigen::Index i = 0; i < A.rows(); ++i) {
		for (Eigen::Index j = 0; j < A.cols(); ++j) {
			out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
		}
	}
	return ComplexMatrix(std::move(out));
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
	ComplexVector out(a.size() * b.size());
	for (Eigen::Index i = 0; i < a.size(); ++i) {
		out.segment(i * b.size(), b.size()) = a(i) * b;
	}
	return out;
}

EigenDecomposition eigh(const ComplexMatrix& h) {
	if (h.rows() != h.cols()) {
		throw Error(ErrorCode::DimensionMismatch, "eigh requires a square matrix");
	}
	const double asym = h.hermiticity_error();
	if (asym > kHermitianTol) {
		throw Error(ErrorCode::NotHermitian, "max |h - h^dagger| = " + std::to_string(asym));
	}
	const Eigen::MatrixXcd sym = 0.5 * (h.eigen() + h.eigen().adjoint());
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
	if (solver.info() != Eigen::Success) {
		throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
	}
	return {solver.eigenvalues(), solver.eigenvectors()};
}

void check_qubit_count(int n) {
	if (n < 1) {
		throw Error(ErrorCode::TooFewQubits, "qubit count " + std::to_string(n));
	}
	if (n > kMaxQubits) {
		throw Error(ErrorCode::TooLarge,
		            "qubit count " + std::to_string(n) + " exceeds dense cap " + std::to_string(kMaxQubits));
	}
}

std::size_t dimension_for(int n) {
	check_qubit_count(n);
	return std::size_t{1} << n;
}

ComplexMatrix embed_single(const ComplexMatrix& op, int k, int n) {
	check_qubit_count(n);
	if (k < 1 || k > n) {
		throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(k) + " of " + std::to_string(n));
	}
	if (op.rows() != 2 || op.cols() != 2) {
		throw Error(ErrorCode::DimensionMismatch, "embed_single expects a 2x2 operator");
	}
	const auto left = Eigen::Index{1} << (k - 1);
	const auto right = Eigen::Index{1} << (n - k);
	return kron(kron(ComplexMatrix::identity(left), op), ComplexMatrix::identity(right));
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale) {
	const auto dec = eigh(h);
	const Eigen::VectorXcd phases =
	    (dec.eigenvalues * (-scale)).unaryExpr([](double a) { return std::polar(1.0, a); });
	return ComplexMatrix(dec.eigenvectors * phases.asDiagonal() * dec.eigenvectors.adjoint());
}

} // namespace graphmag
