#pragma once

#include "graphmag/error.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace graphmag {

// f may return +inf where the objective is undefined (singular information).
template <typename F>
OptimalTime minimise_on_interval(F&& f, double lo, double hi, std::size_t resolution) {
	if (!(lo > 0.0) || !(hi > lo)) {
		throw Error(ErrorCode::BadDomain, "time interval must be positive and nonempty");
	}
	if (resolution < 3) {
		throw Error(ErrorCode::BadDomain, "resolution must be at least 3");
	}
	std::vector<double> ts(resolution);
	std::vector<double> vs(resolution);
	const double step = (hi - lo) / static_cast<double>(resolution - 1);
	std::size_t best = 0;
	for (std::size_t i = 0; i < resolution; ++i) {
		ts[i] = i + 1 == resolution ? hi : lo + step * static_cast<double>(i);
		vs[i] = f(ts[i]);
		if (vs[i] < vs[best]) best = i;
	}
	if (best == 0 || best + 1 == resolution) {
		return OptimalTime{ts[best], vs[best], true};
	}

	constexpr double inv_phi = 0.6180339887498949; // (sqrt(5) - 1) / 2
	double a = ts[best - 1];
	double b = ts[best + 1];
	double c = b - inv_phi * (b - a);
	double d = a + inv_phi * (b - a);
	double fc = f(c);
	double fd = f(d);
	while (b - a > kGoldenTolerance) {
		if (fc <= fd) {
			b = d;
			d = c;
			fd = fc;
			c = b - inv_phi * (b - a);
			fc = f(c);
		} else {
			a = c;
			c = d;
			fc = fd;
			d = a + inv_phi * (b - a);
			fd = f(d);
		}
	}
	OptimalTime out{ts[best], vs[best], false};
	const double mid = 0.5 * (a + b);
	const double fm = f(mid);
	if (fm <= out.qcrb) out = {mid, fm, false};
	return out;
}

} // namespace graphmag
