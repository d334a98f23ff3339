#include "graphmag/noise.hpp"

#include "graphmag/error.hpp"

#include <cmath>
#include <string>

namespace graphmag {

NoiseKind parse_noise_kind(std::string_view name) {
	if (name == "none") return NoiseKind::None;
	if (name == "dephasing") return NoiseKind::Dephasing;
	if (name == "ou_homogeneous") return NoiseKind::OuHomogeneous;
	if (name == "ou_inhomogeneous") return NoiseKind::OuInhomogeneous;
	if (name == "ou_exact") return NoiseKind::OuExact;
	if (name == "bit_flip") return NoiseKind::BitFlip;
	if (name == "phase_flip") return NoiseKind::PhaseFlip;
	if (name == "depolarizing") return NoiseKind::Depolarizing;
	throw Error(ErrorCode::ConfigError, "unknown noise kind '" + std::string(name) + "'");
}

std::string_view to_string(NoiseKind kind) {
	switch (kind) {
	case NoiseKind::None: return "none";
	case NoiseKind::Dephasing: return "dephasing";
	case NoiseKind::OuHomogeneous: return "ou_homogeneous";
	case NoiseKind::OuInhomogeneous: return "ou_inhomogeneous";
	case NoiseKind::OuExact: return "ou_exact";
	case NoiseKind::BitFlip: return "bit_flip";
	case NoiseKind::PhaseFlip: return "phase_flip";
	case NoiseKind::Depolarizing: return "depolarizing";
	}
	return "?";
}

bool NoiseSpec::is_probability_kind() const {
	return kind == NoiseKind::BitFlip || kind == NoiseKind::PhaseFlip || kind == NoiseKind::Depolarizing;
}

namespace {

double require_tau_c(const NoiseSpec& spec) {
	if (!spec.tau_c) {
		throw Error(ErrorCode::MissingTauC, std::string(to_string(spec.kind)) + " noise needs tau_c");
	}
	if (!(*spec.tau_c > 0.0)) {
		throw Error(ErrorCode::BadDomain, "tau_c must be positive");
	}
	return *spec.tau_c;
}

void check_probability(double p) {
	if (!(p >= 0.0 && p <= 1.0)) {
		throw Error(ErrorCode::BadProbability, "probability " + std::to_string(p) + " outside [0, 1]");
	}
}

} // namespace

double q_of_t(const NoiseSpec& spec) {
	if (!(spec.t >= 0.0)) {
		throw Error(ErrorCode::BadDomain, "sensing time must be nonnegative");
	}
	if (std::isnan(spec.gamma)) {
		throw Error(ErrorCode::BadProbability, "gamma is NaN");
	}
	double q = 0.0;
	switch (spec.kind) {
	case NoiseKind::None:
		return 0.0;
	case NoiseKind::Dephasing:
	case NoiseKind::OuHomogeneous:
		q = spec.t == 0.0 ? 0.0 : -std::expm1(-spec.gamma * spec.t);
		break;
	case NoiseKind::OuInhomogeneous: {
		const double tau = require_tau_c(spec);
		q = spec.t == 0.0 ? 0.0 : -std::expm1(-spec.gamma * spec.t * spec.t / (2.0 * tau));
		break;
	}
	case NoiseKind::OuExact: {
		const double tau = require_tau_c(spec);
		const double f = spec.gamma * (spec.t + tau * std::expm1(-spec.t / tau));
		q = spec.t == 0.0 ? 0.0 : -std::expm1(-f);
		break;
	}
	case NoiseKind::BitFlip:
	case NoiseKind::PhaseFlip:
	case NoiseKind::Depolarizing:
		q = spec.gamma;
		break;
	}
	check_probability(q);
	return q;
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
	if (ops_.empty()) {
		throw Error(ErrorCode::BadDomain, "empty Kraus set");
	}
	for (const auto& k : ops_) {
		if (k.rows() != 2 || k.cols() != 2) {
			throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be 2x2");
		}
	}
	if (const double err = completeness_error(); err > kCompletenessTol) {
		throw Error(ErrorCode::BadProbability, "Kraus set violates completeness by " + std::to_string(err));
	}
}

double KrausSet::completeness_error() const {
	Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
	for (const auto& k : ops_) {
		sum += k.eigen().adjoint() * k.eigen();
	}
	return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

bool KrausSet::is_identity() const {
	const auto id = pauli::identity();
	if (ops_[0].max_abs_diff(id) != 0.0) {
		return false;
	}
	for (std::size_t i = 1; i < ops_.size(); ++i) {
		if (ops_[i].eigen().cwiseAbs().maxCoeff() != 0.0) {
			return false;
		}
	}
	return true;
}

KrausSet dephasing_kraus(double p) {
	check_probability(p);
	return KrausSet({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}},
	                 ComplexMatrix{{0.0, 0.0}, {0.0, std::sqrt(p)}}});
}

KrausSet kraus_set(const NoiseSpec& spec) {
	const double p = q_of_t(spec);
	const auto id = pauli::identity();
	const cx_double keep = std::sqrt(1.0 - p);
	switch (spec.kind) {
	case NoiseKind::None:
	case NoiseKind::Dephasing:
	case NoiseKind::OuHomogeneous:
	case NoiseKind::OuInhomogeneous:
	case NoiseKind::OuExact:
		return dephasing_kraus(p);
	case NoiseKind::BitFlip:
		return KrausSet({keep * id, cx_double(std::sqrt(p)) * pauli::x()});
	case NoiseKind::PhaseFlip:
		return KrausSet({keep * id, cx_double(std::sqrt(p)) * pauli::z()});
	case NoiseKind::Depolarizing: {
		const cx_double w = std::sqrt(p / 3.0);
		return KrausSet({keep * id, w * pauli::x(), w * pauli::y(), w * pauli::z()});
	}
	}
	throw Error(ErrorCode::ConfigError, "unknown noise kind");
}

DensityMatrix::DensityMatrix(int qubit_count, ComplexMatrix matrix, Unchecked)
    : qubit_count_(qubit_count), matrix_(std::move(matrix)) {}

DensityMatrix::DensityMatrix(int qubit_count, ComplexMatrix matrix)
    : qubit_count_(qubit_count), matrix_(std::move(matrix)) {
	const auto dim = static_cast<Eigen::Index>(dimension_for(qubit_count));
	if (matrix_.rows() != dim || matrix_.cols() != dim) {
		throw Error(ErrorCode::DimensionMismatch, "density matrix must be 2^N x 2^N");
	}
	if (const double h = matrix_.hermiticity_error(); h > kHermitianTol) {
		throw Error(ErrorCode::NotHermitian, "density matrix asymmetry " + std::to_string(h));
	}
	if (const double tr = matrix_.trace().real(); std::abs(tr - 1.0) > kTraceTol) {
		throw Error(ErrorCode::BadDomain, "density matrix trace " + std::to_string(tr));
	}
	if (const double lo = eigh(matrix_).eigenvalues(0); lo < -kPsdTol) {
		throw Error(ErrorCode::BadDomain, "density matrix eigenvalue " + std::to_string(lo));
	}
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
	const auto& a = psi.amplitudes();
	return DensityMatrix(psi.qubit_count(), ComplexMatrix(a * a.adjoint()), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int qubit_count) {
	const auto dim = static_cast<Eigen::Index>(dimension_for(qubit_count));
	return DensityMatrix(qubit_count,
	                     ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim)),
	                     Unchecked{});
}

double DensityMatrix::population(std::size_t k) const { return matrix_.at(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real(); }

Eigen::VectorXd DensityMatrix::populations() const { return matrix_.eigen().diagonal().real(); }

namespace {

// out += K X K^dagger with K acting on the qubit at bit position `bit`.
void accumulate_conjugation(const Eigen::MatrixXcd& x, const Eigen::Matrix2cd& k, Eigen::Index bit,
                            Eigen::MatrixXcd& scratch, Eigen::MatrixXcd& out) {
	const Eigen::Index dim = x.rows();
	const Eigen::Index stride = Eigen::Index{1} << bit;
	// scratch = K X (row mixing)
	for (Eigen::Index c = 0; c < dim; ++c) {
		for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
			if (r0 & stride) continue;
			const Eigen::Index r1 = r0 | stride;
			const cx_double a = x(r0, c);
			const cx_double b = x(r1, c);
			scratch(r0, c) = k(0, 0) * a + k(0, 1) * b;
			scratch(r1, c) = k(1, 0) * a + k(1, 1) * b;
		}
	}
	// out += scratch K^dagger (column mixing)
	const cx_double k00 = std::conj(k(0, 0));
	const cx_double k01 = std::conj(k(0, 1));
	const cx_double k10 = std::conj(k(1, 0));
	const cx_double k11 = std::conj(k(1, 1));
	for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
		if (c0 & stride) continue;
		const Eigen::Index c1 = c0 | stride;
		for (Eigen::Index r = 0; r < dim; ++r) {
			const cx_double a = scratch(r, c0);
			const cx_double b = scratch(r, c1);
			out(r, c0) += a * k00 + b * k01;
			out(r, c1) += a * k10 + b * k11;
		}
	}
}

Eigen::MatrixXcd apply_on_qubit(const Eigen::MatrixXcd& x, const KrausSet& ks, int qubit, int n) {
	const Eigen::Index bit = n - qubit;
	Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.rows(), x.cols());
	Eigen::MatrixXcd scratch(x.rows(), x.cols());
	for (const auto& k : ks.ops()) {
		const Eigen::Matrix2cd k2 = k.eigen();
		if (k2.cwiseAbs().maxCoeff() == 0.0) continue;
		accumulate_conjugation(x, k2, bit, scratch, out);
	}
	return out;
}

} // namespace

ComplexMatrix apply_channel_ordered(const ComplexMatrix& op, const KrausSet& ks, int n, const std::vector<int>& order) {
	const auto dim = static_cast<Eigen::Index>(dimension_for(n));
	if (op.rows() != dim || op.cols() != dim) {
		throw Error(ErrorCode::DimensionMismatch, "operator does not act on N qubits");
	}
	if (ks.is_identity()) {
		return op;
	}
	Eigen::MatrixXcd x = op.eigen();
	for (int q : order) {
		if (q < 1 || q > n) {
			throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q));
		}
		x = apply_on_qubit(x, ks, q, n);
	}
	return ComplexMatrix(std::move(x));
}

ComplexMatrix apply_channel_all(const ComplexMatrix& op, const KrausSet& ks, int n) {
	std::vector<int> order(static_cast<std::size_t>(n));
	for (int k = 1; k <= n; ++k) {
		order[static_cast<std::size_t>(k - 1)] = k;
	}
	return apply_channel_ordered(op, ks, n, order);
}

DensityMatrix apply_channel_all(const DensityMatrix& rho, const KrausSet& ks) {
	auto out = apply_channel_all(rho.matrix(), ks, rho.qubit_count());
	// CPTP maps preserve the invariants; only rounding asymmetry is removed here.
	out.eigen() = 0.5 * (out.eigen() + out.eigen().adjoint()).eval();
	return DensityMatrix(rho.qubit_count(), std::move(out), DensityMatrix::Unchecked{});
}

} // namespace graphmag
