#pragma once

#include "graphmag/states.hpp"
#include "graphmag/tensor.hpp"

#include <array>
#include <string_view>

namespace graphmag {

enum class Axis { X, Y, Z };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

Axis parse_axis(std::string_view name);
std::string_view to_string(Axis axis);

// Larmor frequencies (phi_x, phi_y, phi_z) in radians per unit time.
struct PhaseVector {
	double x = 0.0;
	double y = 0.0;
	double z = 0.0;

	static PhaseVector single(double phi) { return {phi, 0.0, 0.0}; }
	static PhaseVector uniform(double phi) { return {phi, phi, phi}; }

	double operator[](Axis a) const;
	double norm() const;
	bool is_finite() const;

	friend bool operator==(const PhaseVector&, const PhaseVector&) = default;
};

// J_axis = 1/2 sum_k sigma_axis^{(k)}
ComplexMatrix collective_j(Axis axis, int n);

// phi . J
ComplexMatrix larmor_hamiltonian(const PhaseVector& phi, int n);

// exp(-i t phi.sigma / 2), the per-qubit factor of the collective evolution.
ComplexMatrix single_qubit_unitary(const PhaseVector& phi, double t);

// exp(-i t phi.J) built as the N-fold tensor power of single_qubit_unitary.
ComplexMatrix phase_unitary(const PhaseVector& phi, double t, int n);

// Spectral frame of H = phi.J, shared by the generators of all three axes.
class EvolutionFrame {
public:
	EvolutionFrame(const PhaseVector& phi, double t, int n);

	int qubit_count() const { return n_; }
	double time() const { return t_; }

	// exp(-i t H) from the eigenbasis of H.
	const ComplexMatrix& unitary() const { return unitary_; }

	// A_axis = int_0^t e^{iuH} J_axis e^{-iuH} du, evaluated exactly in the eigenbasis.
	ComplexMatrix generator(Axis axis) const;

	// d/dphi_axis of U|g>, i.e. -i U A_axis |g>.
	ComplexVector state_derivative(const PureState& g, Axis axis) const;

private:
	int n_;
	double t_;
	EigenDecomposition spectrum_;
	ComplexMatrix unitary_;
};

ComplexMatrix generator(Axis axis, const PhaseVector& phi, double t, int n);
ComplexVector pure_state_derivative(const PureState& g, const PhaseVector& phi, double t, Axis axis);

} // namespace graphmag
