#pragma once

#include "graphmag/noise.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace graphmag {

// Counts per computational-basis outcome k in [0, 2^N).
struct MeasurementRecord {
	std::vector<std::uint64_t> counts;
	std::uint64_t shots = 0;
};

// mt19937_64 is fully specified by the standard, so seeded draws are
// bit-identical across platforms. Uniforms use the top 53 bits.
class PortableRng {
public:
	explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
	std::mt19937_64 engine_;
};

// splitmix64 finalizer over (seed, index); gives independent per-trial streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Multinomial draw of m shots from p_k = <k|rho|k> by inverse-CDF sampling.
MeasurementRecord sample_counts(const DensityMatrix& rho, std::uint64_t m, std::uint64_t seed);
MeasurementRecord sample_counts(const Eigen::VectorXd& probabilities, std::uint64_t m, std::uint64_t seed);

using DensityFamily = std::function<DensityMatrix(double)>;

// prod_k Tr[rho(phi)|k><k|] over every basis projector (independent of data).
double likelihood_paper(const DensityFamily& family, double phi);
double log_likelihood_paper(const Eigen::VectorXd& populations);

inline constexpr double kProbabilityFloor = 1e-300;

// sum_k counts_k log p_k; -infinity when a zero-probability outcome was observed.
double likelihood_multinomial(const MeasurementRecord& record, const DensityMatrix& rho);
double log_likelihood_multinomial(const MeasurementRecord& record, const Eigen::VectorXd& populations);

struct Posterior {
	std::vector<double> grid;    // ascending over the prior interval
	std::vector<double> density; // normalised by the trapezoidal rule
	double estimate = 0.0;       // posterior mean
	double spread = 0.0;         // posterior standard deviation
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

// Uniform prior over the grid interval. Throws DegeneratePosterior when no grid
// point has positive likelihood.
Posterior posterior_from_likelihood(std::vector<double> grid, const std::vector<double>& likelihood);
Posterior posterior_from_log_likelihood(std::vector<double> grid, const std::vector<double>& log_likelihood);

double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

struct QcrbComparison {
	double squared_error = 0.0; // mean (estimate - phi_true)^2
	double bound = 0.0;         // 1 / (M Q)
	bool satisfied = false;     // squared_error >= kSlack * bound
	static constexpr double kSlack = 0.8;
};

QcrbComparison mse_vs_qcrb(const std::vector<double>& estimates, double phi_true, std::uint64_t m, double q);

} // namespace graphmag
