#pragma once

#include "graphmag/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphmag {

struct SweepConfig {
	SweepAxis axis = SweepAxis::N;
	std::vector<double> values;
	bool reference = false;
};

struct OptimalTimeConfig {
	double t_lo = 0.1;
	double t_hi = 10.0;
	std::size_t resolution = 60;
};

struct OutputConfig {
	std::optional<std::string> path; // stdout when absent
	OutputFormat format = OutputFormat::Csv;
};

// Everything a CLI run can take from a YAML file; see config/example.yaml.
struct RunConfig {
	Scenario scenario;
	SweepConfig sweep;
	OptimalTimeConfig optimal_time;
	BayesConfig bayes;
	OutputConfig output;
	unsigned workers = 1;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& yaml_text);

// Evenly spaced from..to inclusive.
std::vector<double> linspace(double from, double to, std::size_t steps);

// Accepts a comma list ("0,0.1,0.2") or a range "from:to:steps".
std::vector<double> parse_value_list(const std::string& text);

} // namespace graphmag
