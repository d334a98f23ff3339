#include "graphmag/bayes.hpp"

#include "graphmag/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace graphmag {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
	auto mix = [](std::uint64_t z) {
		z += 0x9e3779b97f4a7c15ULL;
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	};
	return mix(mix(seed) ^ index);
}

MeasurementRecord sample_counts(const Eigen::VectorXd& probabilities, std::uint64_t m, std::uint64_t seed) {
	if (m < 1) {
		throw Error(ErrorCode::BadDomain, "at least one shot is required");
	}
	const auto dim = static_cast<std::size_t>(probabilities.size());
	std::vector<double> cdf(dim);
	double total = 0.0;
	for (std::size_t k = 0; k < dim; ++k) {
		total += std::max(0.0, probabilities(static_cast<Eigen::Index>(k)));
		cdf[k] = total;
	}
	if (!(total > 0.0)) {
		throw Error(ErrorCode::BadDomain, "outcome probabilities sum to zero");
	}
	MeasurementRecord record{std::vector<std::uint64_t>(dim, 0), m};
	PortableRng rng(seed);
	for (std::uint64_t s = 0; s < m; ++s) {
		const double u = rng.uniform() * total;
		// First k with cdf[k] > u never lands on a zero-probability outcome.
		auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
		if (it == cdf.end()) {
			it = std::prev(cdf.end());
			while (it != cdf.begin() && *it == *std::prev(it)) --it;
		}
		++record.counts[static_cast<std::size_t>(it - cdf.begin())];
	}
	return record;
}

MeasurementRecord sample_counts(const DensityMatrix& rho, std::uint64_t m, std::uint64_t seed) {
	return sample_counts(rho.populations(), m, seed);
}

double log_likelihood_paper(const Eigen::VectorXd& populations) {
	double ll = 0.0;
	for (Eigen::Index k = 0; k < populations.size(); ++k) {
		const double p = populations(k);
		if (!(p > 0.0)) {
			return -std::numeric_limits<double>::infinity();
		}
		ll += std::log(p);
	}
	return ll;
}

double likelihood_paper(const DensityFamily& family, double phi) {
	const auto pops = family(phi).populations();
	double product = 1.0;
	for (Eigen::Index k = 0; k < pops.size(); ++k) {
		product *= std::max(0.0, pops(k));
	}
	return product;
}

double log_likelihood_multinomial(const MeasurementRecord& record, const Eigen::VectorXd& populations) {
	if (record.counts.size() != static_cast<std::size_t>(populations.size())) {
		throw Error(ErrorCode::DimensionMismatch, "record and state dimensions differ");
	}
	double ll = 0.0;
	for (std::size_t k = 0; k < record.counts.size(); ++k) {
		const auto c = record.counts[k];
		if (c == 0) continue;
		const double p = populations(static_cast<Eigen::Index>(k));
		if (!(p > 0.0)) {
			return -std::numeric_limits<double>::infinity();
		}
		ll += static_cast<double>(c) * std::log(std::max(p, kProbabilityFloor));
	}
	return ll;
}

double likelihood_multinomial(const MeasurementRecord& record, const DensityMatrix& rho) {
	return log_likelihood_multinomial(record, rho.populations());
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
	if (points < 2 || !(hi > lo)) {
		throw Error(ErrorCode::BadDomain, "grid needs at least 2 points over a nonempty interval");
	}
	std::vector<double> grid(points);
	const double step = (hi - lo) / static_cast<double>(points - 1);
	for (std::size_t i = 0; i < points; ++i) {
		grid[i] = lo + step * static_cast<double>(i);
	}
	grid.back() = hi;
	return grid;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
	double s = 0.0;
	for (std::size_t i = 1; i < x.size(); ++i) {
		s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
	}
	return s;
}

namespace {

Posterior normalise(std::vector<double> grid, std::vector<double> weights) {
	const double z = trapezoid(grid, weights);
	if (!(z > 0.0) || !std::isfinite(z)) {
		throw Error(ErrorCode::DegeneratePosterior, "likelihood integrates to " + std::to_string(z));
	}
	for (auto& w : weights) {
		w /= z;
	}
	std::vector<double> first(grid.size());
	for (std::size_t i = 0; i < grid.size(); ++i) {
		first[i] = grid[i] * weights[i];
	}
	const double mean = trapezoid(grid, first);
	std::vector<double> second(grid.size());
	for (std::size_t i = 0; i < grid.size(); ++i) {
		second[i] = (grid[i] - mean) * (grid[i] - mean) * weights[i];
	}
	const double var = std::max(0.0, trapezoid(grid, second));
	return Posterior{std::move(grid), std::move(weights), mean, std::sqrt(var)};
}

void check_grid(const std::vector<double>& grid, std::size_t values) {
	if (grid.size() < 2) {
		throw Error(ErrorCode::BadDomain, "posterior grid needs at least 2 points");
	}
	if (values != grid.size()) {
		throw Error(ErrorCode::DimensionMismatch, "likelihood and grid sizes differ");
	}
	for (std::size_t i = 1; i < grid.size(); ++i) {
		if (!(grid[i] > grid[i - 1])) {
			throw Error(ErrorCode::BadDomain, "posterior grid must be strictly ascending");
		}
	}
}

} // namespace

Posterior posterior_from_likelihood(std::vector<double> grid, const std::vector<double>& likelihood) {
	check_grid(grid, likelihood.size());
	for (double l : likelihood) {
		if (!(l >= 0.0)) {
			throw Error(ErrorCode::BadDomain, "likelihood values must be nonnegative");
		}
	}
	return normalise(std::move(grid), likelihood);
}

Posterior posterior_from_log_likelihood(std::vector<double> grid, const std::vector<double>& log_likelihood) {
	check_grid(grid, log_likelihood.size());
	const double top = *std::max_element(log_likelihood.begin(), log_likelihood.end());
	if (!std::isfinite(top)) {
		throw Error(ErrorCode::DegeneratePosterior, "no grid point has positive likelihood");
	}
	std::vector<double> weights(log_likelihood.size());
	for (std::size_t i = 0; i < weights.size(); ++i) {
		weights[i] = std::exp(log_likelihood[i] - top);
	}
	return normalise(std::move(grid), std::move(weights));
}

QcrbComparison mse_vs_qcrb(const std::vector<double>& estimates, double phi_true, std::uint64_t m, double q) {
	if (estimates.size() < 2) {
		throw Error(ErrorCode::BadDomain, "need at least two trials");
	}
	if (!(q > 0.0) || m == 0) {
		throw Error(ErrorCode::BadDomain, "bound needs Q > 0 and M >= 1");
	}
	double sq = 0.0;
	for (double e : estimates) {
		sq += (e - phi_true) * (e - phi_true);
	}
	QcrbComparison out;
	out.squared_error = sq / static_cast<double>(estimates.size());
	out.bound = 1.0 / (static_cast<double>(m) * q);
	out.satisfied = out.squared_error >= QcrbComparison::kSlack * out.bound;
	return out;
}

} // namespace graphmag
