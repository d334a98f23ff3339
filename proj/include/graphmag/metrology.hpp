#pragma once

#include "graphmag/noise.hpp"
#include "graphmag/states.hpp"
#include "graphmag/tensor.hpp"

#include <array>

namespace graphmag {

// Pairs of eigenvalues with l_i + l_j below this are outside the support.
inline constexpr double kSupportCutoff = 1e-12;
// Multi-phase bounds are reported only when cond(Q) stays below this.
inline constexpr double kMaxConditionNumber = 1e12;

enum class EstimationMode { Single, Multi };

struct FisherResult {
	EstimationMode mode = EstimationMode::Single;
	double qfi = 0.0;                              // scalar Q (single) or Tr Q (multi)
	Eigen::Matrix3d qfim = Eigen::Matrix3d::Zero(); // populated in multi mode
	double qcrb = 0.0;
};

double qfi_mixed(const DensityMatrix& rho, const ComplexMatrix& drho);

// Q_ab = 2 sum Re[<i|d_a rho|j><j|d_b rho|i>] / (l_i + l_j)
Eigen::Matrix3d qfim_mixed(const DensityMatrix& rho, const std::array<ComplexMatrix, 3>& drhos);

// 4 (<gen^2> - <gen>^2)
double qfi_pure_variance(const PureState& state, const ComplexMatrix& gen);

// 4 Re[<A_a A_b> - <A_a><A_b>] for Hermitian generators.
Eigen::Matrix3d qfim_pure_covariance(const PureState& state, const std::array<ComplexMatrix, 3>& gens);

// Symmetric logarithmic derivative on the support of rho.
ComplexMatrix sld(const DensityMatrix& rho, const ComplexMatrix& drho);

// (I + sin(phi) sin((N-1) phi) Z^{(x)N}) / 2^N, the fully dephased star-graph state.
DensityMatrix dephased_closed_form(int n, double phi);

// Throws SingularInformationError when Q is not invertible.
double qcrb(const FisherResult& result);
double qcrb_single(double q);
double qcrb_multi(const Eigen::Matrix3d& q);

} // namespace graphmag
