#include "graphmag/config.hpp"

#include "graphmag/error.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace graphmag {

std::vector<double> linspace(double from, double to, std::size_t steps) {
	if (steps == 0) {
		throw Error(ErrorCode::EmptyGrid, "range with zero steps");
	}
	if (steps == 1) {
		return {from};
	}
	std::vector<double> out(steps);
	for (std::size_t i = 0; i < steps; ++i) {
		out[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
	}
	out.back() = to;
	return out;
}

namespace {

double parse_double(const std::string& s) {
	std::size_t used = 0;
	double v = 0.0;
	try {
		v = std::stod(s, &used);
	} catch (const std::exception&) {
		throw Error(ErrorCode::ConfigError, "not a number: '" + s + "'");
	}
	if (used != s.size()) {
		throw Error(ErrorCode::ConfigError, "not a number: '" + s + "'");
	}
	return v;
}

std::string trim(const std::string& s) {
	const auto b = s.find_first_not_of(" \t");
	const auto e = s.find_last_not_of(" \t");
	return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

template <typename T>
T get(const YAML::Node& node, const char* key, T fallback) {
	if (!node || !node[key]) {
		return fallback;
	}
	try {
		return node[key].as<T>();
	} catch (const YAML::Exception& e) {
		throw Error(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
	}
}

} // namespace

std::vector<double> parse_value_list(const std::string& text) {
	const auto t = trim(text);
	if (t.empty()) {
		throw Error(ErrorCode::EmptyGrid, "empty value list");
	}
	if (t.find(':') != std::string::npos) {
		std::stringstream ss(t);
		std::string a;
		std::string b;
		std::string c;
		std::getline(ss, a, ':');
		std::getline(ss, b, ':');
		std::getline(ss, c, ':');
		const double steps = parse_double(trim(c));
		if (!(steps >= 1.0) || steps != std::floor(steps)) {
			throw Error(ErrorCode::ConfigError, "range step count must be a positive integer");
		}
		return linspace(parse_double(trim(a)), parse_double(trim(b)), static_cast<std::size_t>(steps));
	}
	std::vector<double> out;
	std::stringstream ss(t);
	std::string item;
	while (std::getline(ss, item, ',')) {
		out.push_back(parse_double(trim(item)));
	}
	return out;
}

RunConfig parse_config(const std::string& yaml_text) {
	YAML::Node root;
	try {
		root = YAML::Load(yaml_text);
	} catch (const YAML::Exception& e) {
		throw Error(ErrorCode::ConfigError, std::string("YAML: ") + e.what());
	}
	RunConfig cfg;
	auto& s = cfg.scenario;

	const auto sc = root["scenario"];
	s.id = get<std::string>(sc, "id", s.id);
	s.n = get<int>(sc, "n", s.n);
	s.state = parse_state_kind(get<std::string>(sc, "state", "star"));
	s.mode = parse_mode(get<std::string>(sc, "mode", "single"));
	s.t = get<double>(sc, "t", s.t);
	s.seed = get<std::uint64_t>(sc, "seed", s.seed);
	if (sc && sc["graph_file"]) {
		s.graph = Graph::load(sc["graph_file"].as<std::string>());
	}
	if (s.mode == EstimationMode::Single) {
		s.phi = PhaseVector::single(get<double>(sc, "phi", 0.0));
	} else if (sc && sc["phi"]) {
		s.phi = PhaseVector::uniform(sc["phi"].as<double>());
	} else {
		s.phi = {get<double>(sc, "phi_x", 0.0), get<double>(sc, "phi_y", 0.0), get<double>(sc, "phi_z", 0.0)};
	}

	const auto nz = root["noise"];
	s.noise.kind = parse_noise_kind(get<std::string>(nz, "kind", "none"));
	s.noise.gamma = get<double>(nz, "gamma", 0.0);
	if (nz && nz["tau_c"]) {
		s.noise.tau_c = nz["tau_c"].as<double>();
	}
	s.noise.t = s.t;

	const auto sw = root["sweep"];
	if (sw) {
		cfg.sweep.axis = parse_sweep_axis(get<std::string>(sw, "axis", "N"));
		if (sw["values"]) {
			cfg.sweep.values = sw["values"].as<std::vector<double>>();
		} else if (sw["from"] && sw["to"] && sw["steps"]) {
			cfg.sweep.values = linspace(sw["from"].as<double>(), sw["to"].as<double>(), sw["steps"].as<std::size_t>());
		}
		cfg.sweep.reference = get<bool>(sw, "reference", false);
	}

	const auto ot = root["optimal_time"];
	cfg.optimal_time.t_lo = get<double>(ot, "t_lo", cfg.optimal_time.t_lo);
	cfg.optimal_time.t_hi = get<double>(ot, "t_hi", cfg.optimal_time.t_hi);
	cfg.optimal_time.resolution = get<std::size_t>(ot, "resolution", cfg.optimal_time.resolution);

	const auto by = root["bayes"];
	cfg.bayes.shots = get<std::uint64_t>(by, "shots", cfg.bayes.shots);
	cfg.bayes.trials = get<std::size_t>(by, "trials", cfg.bayes.trials);
	cfg.bayes.prior_lo = get<double>(by, "prior_lo", cfg.bayes.prior_lo);
	cfg.bayes.prior_hi = get<double>(by, "prior_hi", cfg.bayes.prior_hi);
	cfg.bayes.grid_points = get<std::size_t>(by, "grid_points", cfg.bayes.grid_points);
	cfg.bayes.likelihood = parse_likelihood(get<std::string>(by, "likelihood", "multinomial"));

	const auto out = root["output"];
	if (out && out["path"]) {
		cfg.output.path = out["path"].as<std::string>();
	}
	cfg.output.format = parse_format(get<std::string>(out, "format", "csv"));
	cfg.workers = get<unsigned>(root, "workers", 1u);
	return cfg;
}

RunConfig load_config(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open config " + path);
	}
	std::stringstream buf;
	buf << in.rdbuf();
	return parse_config(buf.str());
}

} // namespace graphmag
