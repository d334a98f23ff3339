#include "graphmag/harness.hpp"

#include "graphmag/error.hpp"
#include "graphmag/parallel.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace graphmag {

StateKind parse_state_kind(std::string_view name) {
	if (name == "star") return StateKind::Star;
	if (name == "ghz") return StateKind::Ghz;
	if (name == "graph" || name == "custom-graph") return StateKind::CustomGraph;
	throw Error(ErrorCode::ConfigError, "unknown state kind '" + std::string(name) + "'");
}

std::string_view to_string(StateKind kind) {
	switch (kind) {
	case StateKind::Star: return "star";
	case StateKind::Ghz: return "ghz";
	case StateKind::CustomGraph: return "graph";
	}
	return "?";
}

EstimationMode parse_mode(std::string_view name) {
	if (name == "single") return EstimationMode::Single;
	if (name == "multi") return EstimationMode::Multi;
	throw Error(ErrorCode::ConfigError, "unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(EstimationMode mode) { return mode == EstimationMode::Single ? "single" : "multi"; }

NoiseSpec Scenario::effective_noise() const {
	NoiseSpec spec = noise;
	spec.t = t;
	if ((spec.kind == NoiseKind::OuInhomogeneous || spec.kind == NoiseKind::OuExact) && !spec.tau_c) {
		spec.tau_c = kDefaultTauC;
	}
	return spec;
}

void Scenario::validate() const {
	check_qubit_count(n);
	if (n < 2) {
		throw Error(ErrorCode::TooFewQubits, "probe needs at least 2 qubits");
	}
	if (!(t >= 0.0) || !std::isfinite(t)) {
		throw Error(ErrorCode::ConfigError, "sensing time must be finite and nonnegative");
	}
	if (!phi.is_finite()) {
		throw Error(ErrorCode::ConfigError, "Larmor frequencies must be finite");
	}
	if (mode == EstimationMode::Single && (phi.y != 0.0 || phi.z != 0.0)) {
		throw Error(ErrorCode::ConfigError, "single-phase mode requires phi = (phi, 0, 0)");
	}
	if (state == StateKind::CustomGraph) {
		if (!graph) {
			throw Error(ErrorCode::ConfigError, "custom-graph state needs a graph");
		}
		if (graph->vertex_count() != n) {
			throw Error(ErrorCode::ConfigError, "graph has " + std::to_string(graph->vertex_count()) +
			                                        " vertices but N = " + std::to_string(n));
		}
	}
}

PureState initial_state(const Scenario& s) {
	switch (s.state) {
	case StateKind::Star: return graph_state(star_graph(s.n));
	case StateKind::Ghz: return ghz_state(s.n);
	case StateKind::CustomGraph: return graph_state(*s.graph);
	}
	throw Error(ErrorCode::ConfigError, "unknown state kind");
}

namespace {

ComplexMatrix outer_sum(const ComplexVector& dpsi, const ComplexVector& psi) {
	// |dpsi><psi| + |psi><dpsi|
	Eigen::MatrixXcd m = dpsi * psi.adjoint();
	m += psi * dpsi.adjoint();
	return ComplexMatrix(std::move(m));
}

} // namespace

EvolvedState evolve(const Scenario& s) {
	s.validate();
	const auto g = initial_state(s);
	const auto ks = kraus_set(s.effective_noise());
	const auto u = phase_unitary(s.phi, s.t, s.n);
	const ComplexVector psi = u.eigen() * g.amplitudes();

	const DensityMatrix rho0 = DensityMatrix::from_pure(PureState(s.n, psi / psi.norm()));
	EvolvedState out{apply_channel_all(rho0, ks), {}};

	const EvolutionFrame frame(s.phi, s.t, s.n);
	const std::vector<Axis> axes = s.mode == EstimationMode::Single ? std::vector<Axis>{Axis::X}
	                                                                 : std::vector<Axis>{Axis::X, Axis::Y, Axis::Z};
	for (auto axis : axes) {
		const ComplexVector dpsi = cx_double(0.0, -1.0) * (u.eigen() * (frame.generator(axis).eigen() * g.amplitudes()));
		out.derivatives.push_back(apply_channel_all(outer_sum(dpsi, psi), ks, s.n));
	}
	return out;
}

DensityMatrix final_state(const Scenario& s) {
	s.validate();
	const auto g = initial_state(s);
	const auto u = phase_unitary(s.phi, s.t, s.n);
	return apply_channel_all(DensityMatrix::from_pure(g.apply(u)), kraus_set(s.effective_noise()));
}

FisherResult evaluate(const Scenario& s) {
	const auto ev = evolve(s);
	FisherResult r;
	r.mode = s.mode;
	if (s.mode == EstimationMode::Single) {
		r.qfi = qfi_mixed(ev.rho, ev.derivatives[0]);
	} else {
		r.qfim = qfim_mixed(ev.rho, {ev.derivatives[0], ev.derivatives[1], ev.derivatives[2]});
		r.qfi = r.qfim.trace();
	}
	try {
		r.qcrb = qcrb(r);
	} catch (const SingularInformationError&) {
		r.qcrb = std::numeric_limits<double>::infinity();
	}
	return r;
}

FisherResult run_point(const Scenario& s) {
	auto r = evaluate(s);
	r.qcrb = qcrb(r);
	return r;
}

SweepAxis parse_sweep_axis(std::string_view name) {
	if (name == "N" || name == "n") return SweepAxis::N;
	if (name == "t") return SweepAxis::T;
	if (name == "lambda") return SweepAxis::Lambda;
	if (name == "gamma") return SweepAxis::Gamma;
	if (name == "phi") return SweepAxis::Phi;
	throw Error(ErrorCode::ConfigError, "unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
	switch (axis) {
	case SweepAxis::N: return "N";
	case SweepAxis::T: return "t";
	case SweepAxis::Lambda: return "lambda";
	case SweepAxis::Gamma: return "gamma";
	case SweepAxis::Phi: return "phi";
	}
	return "?";
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
	Scenario s = base;
	switch (axis) {
	case SweepAxis::N:
		if (value != std::round(value)) {
			throw Error(ErrorCode::ConfigError, "N must be an integer");
		}
		s.n = static_cast<int>(value);
		break;
	case SweepAxis::T:
		s.t = value;
		break;
	case SweepAxis::Gamma:
		s.noise.gamma = value;
		break;
	case SweepAxis::Phi:
		s.phi = s.mode == EstimationMode::Single ? PhaseVector::single(value) : PhaseVector::uniform(value);
		break;
	case SweepAxis::Lambda: {
		if (!(value >= 0.0 && value <= 1.0)) {
			throw Error(ErrorCode::BadProbability, "lambda " + std::to_string(value) + " outside [0, 1]");
		}
		if (s.noise.kind == NoiseKind::None) {
			s.noise.kind = NoiseKind::Dephasing;
		}
		if (s.noise.is_probability_kind()) {
			s.noise.gamma = value;
			break;
		}
		// Invert the kind's probability law for gamma at the scenario's sensing time.
		const auto spec = s.effective_noise();
		double exposure = s.t;
		if (spec.kind == NoiseKind::OuInhomogeneous) {
			exposure = s.t * s.t / (2.0 * *spec.tau_c);
		} else if (spec.kind == NoiseKind::OuExact) {
			exposure = s.t + *spec.tau_c * std::expm1(-s.t / *spec.tau_c);
		}
		if (!(exposure > 0.0)) {
			throw Error(ErrorCode::BadDomain, "lambda sweep needs a positive sensing time");
		}
		s.noise.gamma = value == 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-value) / exposure;
		break;
	}
	}
	return s;
}

namespace {

SweepRow make_row(const Scenario& s) {
	SweepRow row;
	row.id = s.id;
	row.scenario = s;
	row.state_label = std::string(to_string(s.state));
	const auto start = std::chrono::steady_clock::now();
	try {
		row.lambda_or_q = q_of_t(s.effective_noise());
		const auto r = evaluate(s);
		row.qfi = r.qfi;
		row.qcrb = r.qcrb;
		if (std::isinf(r.qcrb)) {
			row.error = std::string(to_string(ErrorCode::SingularInformation));
		}
	} catch (const Error& e) {
		row.qfi = std::numeric_limits<double>::quiet_NaN();
		row.qcrb = std::numeric_limits<double>::quiet_NaN();
		row.error = e.what();
	}
	row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return row;
}

} // namespace

SweepResult sweep(SweepAxis axis, const std::vector<double>& grid, const Scenario& base, unsigned workers) {
	if (grid.empty()) {
		throw Error(ErrorCode::EmptyGrid, "sweep grid is empty");
	}
	SweepResult result;
	result.rows.resize(grid.size());
	parallel_for(grid.size(), workers, [&](std::size_t i) {
		Scenario s;
		try {
			s = apply_axis(base, axis, grid[i]);
		} catch (const Error& e) {
			s = base;
			SweepRow row;
			row.scenario = s;
			row.state_label = std::string(to_string(s.state));
			row.qfi = row.qcrb = row.lambda_or_q = std::numeric_limits<double>::quiet_NaN();
			row.error = e.what();
			row.id = base.id + "-" + std::to_string(i);
			result.rows[i] = std::move(row);
			return;
		}
		s.id = base.id + "-" + std::to_string(i);
		result.rows[i] = make_row(s);
	});
	return result;
}

std::vector<SweepRow> reference_rows(const std::vector<int>& ns, const Scenario& base) {
	std::vector<SweepRow> rows;
	for (const char* label : {"SQL", "HL"}) {
		const bool sql = std::string_view(label) == "SQL";
		for (int n : ns) {
			SweepRow row;
			row.id = label;
			row.scenario = base;
			row.scenario.n = n;
			row.state_label = "reference";
			const double nn = static_cast<double>(n);
			row.qcrb = sql ? 1.0 / nn : 1.0 / (nn * nn);
			row.qfi = 1.0 / row.qcrb;
			row.lambda_or_q = std::numeric_limits<double>::quiet_NaN();
			rows.push_back(std::move(row));
		}
	}
	return rows;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
	if (points.size() < 3) {
		throw Error(ErrorCode::BadDomain, "power-law fit needs at least 3 points");
	}
	std::vector<double> xs;
	std::vector<double> ys;
	PowerLawFit fit;
	fit.n_min = std::numeric_limits<double>::infinity();
	fit.n_max = -std::numeric_limits<double>::infinity();
	for (auto [n, v] : points) {
		if (!(n >= 2.0) || !std::isfinite(n)) {
			throw Error(ErrorCode::BadDomain, "N must be at least 2");
		}
		if (!(v > 0.0) || !std::isfinite(v)) {
			throw Error(ErrorCode::BadDomain, "fit values must be positive and finite");
		}
		xs.push_back(std::log(n - 1.0));
		ys.push_back(std::log(v));
		fit.n_min = std::min(fit.n_min, n);
		fit.n_max = std::max(fit.n_max, n);
	}
	const auto m = static_cast<double>(xs.size());
	double mx = 0.0;
	double my = 0.0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		mx += xs[i];
		my += ys[i];
	}
	mx /= m;
	my /= m;
	double sxx = 0.0;
	double sxy = 0.0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sxx += (xs[i] - mx) * (xs[i] - mx);
		sxy += (xs[i] - mx) * (ys[i] - my);
	}
	if (!(sxx > 0.0)) {
		throw Error(ErrorCode::BadDomain, "power-law fit needs at least two distinct N");
	}
	fit.b = sxy / sxx;
	const double log_a = my - fit.b * mx;
	fit.a = std::exp(log_a);
	double rss = 0.0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		const double r = ys[i] - (log_a + fit.b * xs[i]);
		rss += r * r;
	}
	fit.residual = std::sqrt(rss / m);
	fit.points = xs.size();
	return fit;
}

OptimalTime optimal_time(const Scenario& base, double t_lo, double t_hi, std::size_t resolution) {
	base.validate();
	return minimise_on_interval(
	    [&](double t) {
		    Scenario s = base;
		    s.t = t;
		    return evaluate(s).qcrb;
	    },
	    t_lo, t_hi, resolution);
}

std::string format_number(double v) {
	if (std::isnan(v)) return "nan";
	if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
	return fmt::format("{}", v);
}

OutputFormat parse_format(std::string_view name) {
	if (name == "csv") return OutputFormat::Csv;
	if (name == "json") return OutputFormat::Json;
	throw Error(ErrorCode::ConfigError, "unknown output format '" + std::string(name) + "'");
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
	out << kCsvHeader << '\n';
	for (const auto& r : rows) {
		const auto& s = r.scenario;
		const auto spec = s.effective_noise();
		out << r.id << ',' << to_string(s.mode) << ',' << r.state_label << ',' << s.n << ',' << format_number(s.t)
		    << ',' << to_string(spec.kind) << ',' << format_number(spec.gamma) << ','
		    << (spec.tau_c ? format_number(*spec.tau_c) : std::string()) << ',' << format_number(r.lambda_or_q)
		    << ',' << format_number(s.phi.x) << ',' << format_number(s.phi.y) << ',' << format_number(s.phi.z)
		    << ',' << format_number(r.qfi) << ',' << format_number(r.qcrb) << ',' << s.seed << ','
		    << fmt::format("{:.3f}", r.wall_ms) << '\n';
	}
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
	auto number = [](double v) -> nlohmann::json {
		if (std::isfinite(v)) return v;
		return format_number(v);
	};
	nlohmann::json arr = nlohmann::json::array();
	for (const auto& r : rows) {
		const auto& s = r.scenario;
		const auto spec = s.effective_noise();
		nlohmann::json j;
		j["id"] = r.id;
		j["mode"] = to_string(s.mode);
		j["state"] = r.state_label;
		j["N"] = s.n;
		j["t"] = number(s.t);
		j["noise"] = to_string(spec.kind);
		j["gamma"] = number(spec.gamma);
		j["tau_c"] = spec.tau_c ? number(*spec.tau_c) : nlohmann::json(nullptr);
		j["lambda_or_q"] = number(r.lambda_or_q);
		j["phi_x"] = number(s.phi.x);
		j["phi_y"] = number(s.phi.y);
		j["phi_z"] = number(s.phi.z);
		j["qfi_or_trace_qfim"] = number(r.qfi);
		j["qcrb"] = number(r.qcrb);
		j["seed"] = s.seed;
		j["wall_ms"] = r.wall_ms;
		if (!r.error.empty()) j["error"] = r.error;
		arr.push_back(std::move(j));
	}
	out << arr.dump(2) << '\n';
}

void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path) {
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
	}
	if (format == OutputFormat::Csv) {
		write_csv(rows, out);
	} else {
		write_json(rows, out);
	}
	out.flush();
	if (!out) {
		throw Error(ErrorCode::IoError, "failed writing " + path);
	}
}

std::vector<std::pair<double, double>> read_fit_points(std::istream& in, std::string_view column) {
	auto split = [](const std::string& line) {
		std::vector<std::string> cells;
		std::string cell;
		std::istringstream ss(line);
		while (std::getline(ss, cell, ',')) cells.push_back(cell);
		if (!line.empty() && line.back() == ',') cells.emplace_back();
		return cells;
	};
	std::string line;
	if (!std::getline(in, line)) {
		throw Error(ErrorCode::ConfigError, "empty CSV input");
	}
	const auto header = split(line);
	auto index_of = [&](std::string_view name) {
		for (std::size_t i = 0; i < header.size(); ++i) {
			if (header[i] == name) return i;
		}
		throw Error(ErrorCode::ConfigError, "CSV has no column '" + std::string(name) + "'");
	};
	const auto n_col = index_of("N");
	const auto v_col = index_of(column);
	const auto state_col = index_of("state");
	std::vector<std::pair<double, double>> points;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		const auto cells = split(line);
		if (cells.size() != header.size()) {
			throw Error(ErrorCode::ConfigError, "CSV row has " + std::to_string(cells.size()) + " fields, expected " +
			                                        std::to_string(header.size()));
		}
		if (cells[state_col] == "reference") continue;
		double n = 0.0;
		double v = 0.0;
		try {
			n = std::stod(cells[n_col]);
			v = std::stod(cells[v_col]);
		} catch (const std::exception&) {
			continue;
		}
		if (std::isfinite(v)) points.emplace_back(n, v);
	}
	return points;
}

LikelihoodMode parse_likelihood(std::string_view name) {
	if (name == "paper") return LikelihoodMode::Paper;
	if (name == "multinomial") return LikelihoodMode::Multinomial;
	throw Error(ErrorCode::ConfigError, "unknown likelihood '" + std::string(name) + "'");
}

std::string_view to_string(LikelihoodMode mode) { return mode == LikelihoodMode::Paper ? "paper" : "multinomial"; }

BayesSummary run_bayes(const BayesConfig& cfg) {
	Scenario base = cfg.scenario;
	base.mode = EstimationMode::Single;
	base.validate();
	if (cfg.trials < 1) {
		throw Error(ErrorCode::ConfigError, "at least one trial is required");
	}
	const auto grid = uniform_grid(cfg.prior_lo, cfg.prior_hi, cfg.grid_points);

	// Outcome probabilities at every grid point, shared by all trials.
	std::vector<Eigen::VectorXd> pops(grid.size());
	parallel_for(grid.size(), cfg.workers, [&](std::size_t i) {
		Scenario s = base;
		s.phi = PhaseVector::single(grid[i]);
		pops[i] = final_state(s).populations();
	});

	BayesSummary summary;
	summary.phi_true = base.phi.x;
	summary.qfi = evaluate(base).qfi;
	summary.trials.resize(cfg.trials);

	std::optional<Posterior> shared;
	if (cfg.likelihood == LikelihoodMode::Paper) {
		std::vector<double> ll(grid.size());
		for (std::size_t i = 0; i < grid.size(); ++i) {
			ll[i] = log_likelihood_paper(pops[i]);
		}
		shared = posterior_from_log_likelihood(grid, ll);
	}

	const Eigen::VectorXd truth = final_state(base).populations();
	parallel_for(cfg.trials, cfg.workers, [&](std::size_t trial) {
		BayesTrial row;
		row.trial = trial;
		row.seed = derive_seed(base.seed, trial);
		Posterior post;
		if (shared) {
			post = *shared;
		} else {
			const auto record = sample_counts(truth, cfg.shots, row.seed);
			std::vector<double> ll(grid.size());
			for (std::size_t i = 0; i < grid.size(); ++i) {
				ll[i] = log_likelihood_multinomial(record, pops[i]);
			}
			post = posterior_from_log_likelihood(grid, ll);
		}
		row.estimate = post.estimate;
		row.spread = post.spread;
		row.squared_error = (post.estimate - summary.phi_true) * (post.estimate - summary.phi_true);
		summary.trials[trial] = row;
	});

	std::vector<double> estimates;
	for (const auto& t : summary.trials) {
		estimates.push_back(t.estimate);
		summary.mean_estimate += t.estimate;
		summary.mean_spread += t.spread;
	}
	summary.mean_estimate /= static_cast<double>(cfg.trials);
	summary.mean_spread /= static_cast<double>(cfg.trials);
	if (summary.qfi > kSupportCutoff && cfg.trials >= 2) {
		summary.comparison = mse_vs_qcrb(estimates, summary.phi_true, cfg.shots, summary.qfi);
	}
	return summary;
}

void write_bayes_csv(const BayesConfig& cfg, const BayesSummary& summary, std::ostream& out) {
	const auto& s = cfg.scenario;
	const auto spec = s.effective_noise();
	out << kBayesCsvHeader << '\n';
	for (const auto& t : summary.trials) {
		out << t.trial << ',' << t.seed << ',' << s.n << ',' << format_number(summary.phi_true) << ','
		    << to_string(spec.kind) << ',' << format_number(spec.gamma) << ','
		    << (spec.tau_c ? format_number(*spec.tau_c) : std::string()) << ',' << format_number(s.t) << ','
		    << cfg.shots << ',' << to_string(cfg.likelihood) << ',' << format_number(t.estimate) << ','
		    << format_number(t.spread) << ',' << format_number(t.squared_error) << '\n';
	}
}

} // namespace graphmag
