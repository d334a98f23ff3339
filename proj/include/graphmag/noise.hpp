#pragma once

#include "graphmag/states.hpp"
#include "graphmag/tensor.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace graphmag {

enum class NoiseKind {
	None,
	Dephasing,       // lambda = 1 - e^{-gamma t}
	OuHomogeneous,   // q = 1 - e^{-gamma t}
	OuInhomogeneous, // q = 1 - e^{-gamma t^2 / (2 tau_c)}
	OuExact,         // q = 1 - e^{-f(t)}, f(t) = gamma [t + tau_c (e^{-t/tau_c} - 1)]
	BitFlip,         // gamma is the flip probability
	PhaseFlip,
	Depolarizing,
};

NoiseKind parse_noise_kind(std::string_view name);
std::string_view to_string(NoiseKind kind);

inline constexpr double kDefaultTauC = 20.0;

struct NoiseSpec {
	NoiseKind kind = NoiseKind::None;
	double gamma = 0.0;
	std::optional<double> tau_c;
	double t = 1.0;

	// Channel parametrised directly by a probability (flip kinds).
	bool is_probability_kind() const;
};

// The single-qubit channel probability (lambda or q(t)) for `spec`.
double q_of_t(const NoiseSpec& spec);

class KrausSet {
public:
	static constexpr double kCompletenessTol = 1e-12;

	explicit KrausSet(std::vector<ComplexMatrix> ops);

	const std::vector<ComplexMatrix>& ops() const { return ops_; }
	// max |sum_i K_i^dagger K_i - I|
	double completeness_error() const;
	bool is_identity() const;

private:
	std::vector<ComplexMatrix> ops_;
};

KrausSet kraus_set(const NoiseSpec& spec);
KrausSet dephasing_kraus(double p);

// Hermitian, unit-trace, positive semidefinite 2^N x 2^N operator.
class DensityMatrix {
public:
	static constexpr double kTraceTol = 1e-10;
	static constexpr double kPsdTol = 1e-9;

	// Validates every invariant (including positivity via an eigensolve).
	DensityMatrix(int qubit_count, ComplexMatrix matrix);

	static DensityMatrix from_pure(const PureState& psi);
	static DensityMatrix maximally_mixed(int qubit_count);

	int qubit_count() const { return qubit_count_; }
	const ComplexMatrix& matrix() const { return matrix_; }
	// <k|rho|k>
	double population(std::size_t k) const;
	Eigen::VectorXd populations() const;

private:
	struct Unchecked {};
	DensityMatrix(int qubit_count, ComplexMatrix matrix, Unchecked);

	friend DensityMatrix apply_channel_all(const DensityMatrix&, const KrausSet&);

	int qubit_count_;
	ComplexMatrix matrix_;
};

// rho_k = sum_i K_i^{(k)} rho_{k-1} K_i^{(k)dagger} for k = 1..N in order.
DensityMatrix apply_channel_all(const DensityMatrix& rho, const KrausSet& ks);

// Same map on an arbitrary operator (used for parameter derivatives of rho).
ComplexMatrix apply_channel_all(const ComplexMatrix& op, const KrausSet& ks, int n);

// The same map with qubits visited in the given 1-based order.
ComplexMatrix apply_channel_ordered(const ComplexMatrix& op, const KrausSet& ks, int n, const std::vector<int>& order);

} // namespace graphmag
