#include "graphmag/encoding.hpp"

#include "graphmag/error.hpp"

#include <cmath>
#include <string>

namespace graphmag {

namespace {

// Pairs of H-eigenvalues closer than this take the limit value of the divided difference.
constexpr double kDegenerateGap = 1e-12;

const ComplexMatrix& pauli_for(Axis axis) {
	static const ComplexMatrix sx = pauli::x();
	static const ComplexMatrix sy = pauli::y();
	static const ComplexMatrix sz = pauli::z();
	switch (axis) {
	case Axis::X: return sx;
	case Axis::Y: return sy;
	case Axis::Z: return sz;
	}
	throw Error(ErrorCode::BadAxis, "unknown axis");
}

void check_time(double t) {
	if (!(t >= 0.0) || !std::isfinite(t)) {
		throw Error(ErrorCode::BadDomain, "sensing time must be finite and nonnegative");
	}
}

} // namespace

Axis parse_axis(std::string_view name) {
	if (name == "x" || name == "X") return Axis::X;
	if (name == "y" || name == "Y") return Axis::Y;
	if (name == "z" || name == "Z") return Axis::Z;
	throw Error(ErrorCode::BadAxis, "axis '" + std::string(name) + "'");
}

std::string_view to_string(Axis axis) {
	switch (axis) {
	case Axis::X: return "x";
	case Axis::Y: return "y";
	case Axis::Z: return "z";
	}
	return "?";
}

double PhaseVector::operator[](Axis a) const {
	switch (a) {
	case Axis::X: return x;
	case Axis::Y: return y;
	case Axis::Z: return z;
	}
	throw Error(ErrorCode::BadAxis, "unknown axis");
}

double PhaseVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

bool PhaseVector::is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

ComplexMatrix collective_j(Axis axis, int n) {
	const auto dim = static_cast<Eigen::Index>(dimension_for(n));
	const auto& s = pauli_for(axis);
	ComplexMatrix j = ComplexMatrix::zeros(dim, dim);
	for (int k = 1; k <= n; ++k) {
		j.eigen() += embed_single(s, k, n).eigen();
	}
	j.eigen() *= 0.5;
	return j;
}

ComplexMatrix larmor_hamiltonian(const PhaseVector& phi, int n) {
	if (!phi.is_finite()) {
		throw Error(ErrorCode::BadDomain, "Larmor frequencies must be finite");
	}
	ComplexMatrix h = ComplexMatrix::zeros(static_cast<Eigen::Index>(dimension_for(n)),
	                                       static_cast<Eigen::Index>(dimension_for(n)));
	for (auto a : kAllAxes) {
		if (phi[a] != 0.0) {
			h.eigen() += phi[a] * collective_j(a, n).eigen();
		}
	}
	return h;
}

ComplexMatrix single_qubit_unitary(const PhaseVector& phi, double t) {
	check_time(t);
	if (!phi.is_finite()) {
		throw Error(ErrorCode::BadDomain, "Larmor frequencies must be finite");
	}
	const double w = phi.norm();
	if (w == 0.0 || t == 0.0) {
		return pauli::identity();
	}
	// exp(-i theta n.sigma) = cos(theta) I - i sin(theta) n.sigma with theta = t|phi|/2
	const double theta = 0.5 * t * w;
	const cx_double c(std::cos(theta), 0.0);
	const cx_double s(0.0, -std::sin(theta) / w);
	Eigen::MatrixXcd u = c * Eigen::MatrixXcd::Identity(2, 2);
	u += s * (phi.x * pauli::x().eigen() + phi.y * pauli::y().eigen() + phi.z * pauli::z().eigen());
	return ComplexMatrix(std::move(u));
}

ComplexMatrix phase_unitary(const PhaseVector& phi, double t, int n) {
	check_qubit_count(n);
	const auto u1 = single_qubit_unitary(phi, t);
	ComplexMatrix u = u1;
	for (int k = 2; k <= n; ++k) {
		u = kron(u, u1);
	}
	return u;
}

EvolutionFrame::EvolutionFrame(const PhaseVector& phi, double t, int n)
    : n_(n), t_(t), spectrum_(eigh(larmor_hamiltonian(phi, n))) {
	check_time(t);
	const auto& v = spectrum_.eigenvectors;
	const Eigen::VectorXcd phases =
	    (spectrum_.eigenvalues * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
	unitary_ = ComplexMatrix(v * phases.asDiagonal() * v.adjoint());
}

ComplexMatrix EvolutionFrame::generator(Axis axis) const {
	const auto& v = spectrum_.eigenvectors;
	const auto& lam = spectrum_.eigenvalues;
	Eigen::MatrixXcd jt = v.adjoint() * collective_j(axis, n_).eigen() * v;
	const Eigen::Index dim = jt.rows();
	for (Eigen::Index k = 0; k < dim; ++k) {
		for (Eigen::Index j = 0; j < dim; ++j) {
			const double gap = lam(j) - lam(k);
			if (std::abs(gap) < kDegenerateGap) {
				jt(j, k) *= t_;
			} else {
				// (e^{i gap t} - 1) / (i gap)
				jt(j, k) *= (std::polar(1.0, gap * t_) - 1.0) / cx_double(0.0, gap);
			}
		}
	}
	Eigen::MatrixXcd a = v * jt * v.adjoint();
	a = 0.5 * (a + a.adjoint()).eval();
	return ComplexMatrix(std::move(a));
}

ComplexVector EvolutionFrame::state_derivative(const PureState& g, Axis axis) const {
	if (g.qubit_count() != n_) {
		throw Error(ErrorCode::DimensionMismatch, "state and frame qubit counts differ");
	}
	const ComplexVector a_g = generator(axis).eigen() * g.amplitudes();
	return cx_double(0.0, -1.0) * (unitary_.eigen() * a_g);
}

ComplexMatrix generator(Axis axis, const PhaseVector& phi, double t, int n) {
	return EvolutionFrame(phi, t, n).generator(axis);
}

ComplexVector pure_state_derivative(const PureState& g, const PhaseVector& phi, double t, Axis axis) {
	return EvolutionFrame(phi, t, g.qubit_count()).state_derivative(g, axis);
}

} // namespace graphmag
