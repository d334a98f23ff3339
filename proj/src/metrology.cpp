#include "graphmag/metrology.hpp"

#include "graphmag/error.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace graphmag {

namespace {

void check_derivative(const DensityMatrix& rho, const ComplexMatrix& drho) {
	const auto dim = rho.matrix().rows();
	if (drho.rows() != dim || drho.cols() != dim) {
		throw Error(ErrorCode::DimensionMismatch, "derivative does not match density matrix");
	}
	if (const double h = drho.hermiticity_error(); h > kHermitianTol) {
		throw Error(ErrorCode::NotHermitian, "state derivative asymmetry " + std::to_string(h));
	}
}

// Derivatives rotated into the eigenbasis of rho, plus the eigenvalue sums.
struct SpectralFrame {
	Eigen::VectorXd ell;
	Eigen::MatrixXcd basis;

	explicit SpectralFrame(const DensityMatrix& rho) {
		auto dec = eigh(rho.matrix());
		ell = std::move(dec.eigenvalues);
		basis = std::move(dec.eigenvectors);
	}

	Eigen::MatrixXcd rotate(const ComplexMatrix& op) const { return basis.adjoint() * op.eigen() * basis; }
};

} // namespace

double qfi_mixed(const DensityMatrix& rho, const ComplexMatrix& drho) {
	check_derivative(rho, drho);
	const SpectralFrame frame(rho);
	const Eigen::MatrixXcd d = frame.rotate(drho);
	const Eigen::Index dim = d.rows();
	double q = 0.0;
	for (Eigen::Index j = 0; j < dim; ++j) {
		for (Eigen::Index i = 0; i < dim; ++i) {
			const double s = frame.ell(i) + frame.ell(j);
			if (s > kSupportCutoff) {
				q += std::norm(d(i, j)) / s;
			}
		}
	}
	return 2.0 * q;
}

Eigen::Matrix3d qfim_mixed(const DensityMatrix& rho, const std::array<ComplexMatrix, 3>& drhos) {
	for (const auto& d : drhos) {
		check_derivative(rho, d);
	}
	const SpectralFrame frame(rho);
	std::array<Eigen::MatrixXcd, 3> d;
	for (std::size_t a = 0; a < 3; ++a) {
		d[a] = frame.rotate(drhos[a]);
	}
	const Eigen::Index dim = d[0].rows();
	Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
	for (Eigen::Index j = 0; j < dim; ++j) {
		for (Eigen::Index i = 0; i < dim; ++i) {
			const double s = frame.ell(i) + frame.ell(j);
			if (s <= kSupportCutoff) continue;
			for (std::size_t a = 0; a < 3; ++a) {
				for (std::size_t b = a; b < 3; ++b) {
					// <i|d_a|j><j|d_b|i> = d_a(i,j) * conj(d_b(i,j)) for Hermitian d_b
					q(a, b) += (d[a](i, j) * std::conj(d[b](i, j))).real() / s;
				}
			}
		}
	}
	for (int a = 0; a < 3; ++a) {
		for (int b = 0; b < a; ++b) {
			q(a, b) = q(b, a);
		}
	}
	return 2.0 * q;
}

double qfi_pure_variance(const PureState& state, const ComplexMatrix& gen) {
	if (const double h = gen.hermiticity_error(); h > kHermitianTol) {
		throw Error(ErrorCode::NotHermitian, "generator asymmetry " + std::to_string(h));
	}
	const ComplexVector g_psi = gen.eigen() * state.amplitudes();
	const double second = g_psi.squaredNorm();
	const double first = state.amplitudes().dot(g_psi).real();
	return 4.0 * (second - first * first);
}

Eigen::Matrix3d qfim_pure_covariance(const PureState& state, const std::array<ComplexMatrix, 3>& gens) {
	std::array<ComplexVector, 3> a_psi;
	std::array<double, 3> mean{};
	for (std::size_t a = 0; a < 3; ++a) {
		a_psi[a] = gens[a].eigen() * state.amplitudes();
		mean[a] = state.amplitudes().dot(a_psi[a]).real();
	}
	Eigen::Matrix3d q;
	for (std::size_t a = 0; a < 3; ++a) {
		for (std::size_t b = 0; b < 3; ++b) {
			// <A_a A_b> = (A_a psi)^dagger (A_b psi)
			q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
			    4.0 * (a_psi[a].dot(a_psi[b]).real() - mean[a] * mean[b]);
		}
	}
	return q;
}

ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho) {
	check_derivative(rho, drho);
	const SpectralFrame frame(rho);
	Eigen::MatrixXcd l = frame.rotate(drho);
	const Eigen::Index dim = l.rows();
	for (Eigen::Index j = 0; j < dim; ++j) {
		for (Eigen::Index i = 0; i < dim; ++i) {
			const double s = frame.ell(i) + frame.ell(j);
			l(i, j) = s > kSupportCutoff ? 2.0 * l(i, j) / s : cx_double(0.0);
		}
	}
	return ComplexMatrix(frame.basis * l * frame.basis.adjoint());
}

DensityMatrix dephased_closed_form(int n, double phi) {
	if (n < 2) {
		throw Error(ErrorCode::TooFewQubits, "closed form needs N >= 2");
	}
	const auto dim = dimension_for(n);
	const double c = std::sin(phi) * std::sin(static_cast<double>(n - 1) * phi);
	Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
	const double scale = 1.0 / static_cast<double>(dim);
	for (std::size_t b = 0; b < dim; ++b) {
		// <b|Z^{(x)N}|b> = (-1)^{popcount b}
		const double z = (std::popcount(b) & 1) ? -1.0 : 1.0;
		m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = scale * (1.0 + c * z);
	}
	return DensityMatrix(n, ComplexMatrix(std::move(m)));
}

double qcrb_single(double q) {
	if (!(q > kSupportCutoff)) {
		throw SingularInformationError(0, "quantum Fisher information " + std::to_string(q));
	}
	return 1.0 / q;
}

double qcrb_multi(const Eigen::Matrix3d& q) {
	const Eigen::Matrix3d sym = 0.5 * (q + q.transpose());
	Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(sym);
	const Eigen::Vector3d ev = solver.eigenvalues();
	const double top = ev.maxCoeff();
	int rank = 0;
	for (int i = 0; i < 3; ++i) {
		if (top > 0.0 && ev(i) > top / kMaxConditionNumber) ++rank;
	}
	if (!(top > 0.0) || !(ev.minCoeff() > 0.0) || top / ev.minCoeff() >= kMaxConditionNumber) {
		throw SingularInformationError(rank, "quantum Fisher information matrix is singular");
	}
	return ev.cwiseInverse().sum();
}

double qcrb(const FisherResult& result) {
	return result.mode == EstimationMode::Single ? qcrb_single(result.qfi) : qcrb_multi(result.qfim);
}

} // namespace graphmag
