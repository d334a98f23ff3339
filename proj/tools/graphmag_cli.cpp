// graphmag command-line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure
// (singular information, degenerate posterior), 4 I/O.

#include "graphmag/config.hpp"
#include "graphmag/error.hpp"
#include "graphmag/harness.hpp"
#include "graphmag/parallel.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace graphmag;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code) {
	switch (code) {
	case ErrorCode::SingularInformation:
	case ErrorCode::DegeneratePosterior:
	case ErrorCode::NotHermitian:
		return kExitNumeric;
	case ErrorCode::IoError:
		return kExitIo;
	default:
		return kExitConfig;
	}
}

// Flags shared by every subcommand; each overrides the matching config entry.
struct ScenarioFlags {
	std::optional<std::string> config;
	std::optional<std::string> id;
	std::optional<int> n;
	std::optional<std::string> state;
	std::optional<std::string> graph_file;
	std::optional<std::string> mode;
	std::optional<double> phi;
	std::optional<double> phi_x;
	std::optional<double> phi_y;
	std::optional<double> phi_z;
	std::optional<double> t;
	std::optional<std::string> noise;
	std::optional<double> gamma;
	std::optional<double> tau_c;
	std::optional<std::uint64_t> seed;
	std::optional<std::string> out;
	std::optional<std::string> format;
	std::optional<unsigned> workers;

	void attach(CLI::App* app) {
		app->add_option("--config", config, "YAML run configuration");
		app->add_option("--id", id, "Scenario id used as the row id prefix");
		app->add_option("--n", n, "Number of qubits");
		app->add_option("--state", state, "Probe state: star | ghz | graph");
		app->add_option("--graph-file", graph_file, "Edge-list file for --state graph");
		app->add_option("--mode", mode, "single | multi");
		app->add_option("--phi", phi, "Larmor frequency (single) or common value of all three (multi)");
		app->add_option("--phi-x", phi_x, "phi_x (multi)");
		app->add_option("--phi-y", phi_y, "phi_y (multi)");
		app->add_option("--phi-z", phi_z, "phi_z (multi)");
		app->add_option("--t", t, "Sensing time");
		app->add_option("--noise", noise,
		                "none | dephasing | ou_homogeneous | ou_inhomogeneous | ou_exact | bit_flip | phase_flip | depolarizing");
		app->add_option("--gamma", gamma, "Noise rate, or probability for flip/depolarizing kinds");
		app->add_option("--tau-c", tau_c, "Environment memory time (default 20 for OU kinds)");
		app->add_option("--seed", seed, "Seed recorded in every row");
		app->add_option("--out", out, "Output path (stdout when omitted)");
		app->add_option("--format", format, "csv | json");
		app->add_option("--workers", workers, "Worker threads");
	}

	RunConfig resolve() const {
		RunConfig cfg = config ? load_config(*config) : RunConfig{};
		auto& s = cfg.scenario;
		if (id) s.id = *id;
		if (n) s.n = *n;
		if (state) s.state = parse_state_kind(*state);
		if (graph_file) s.graph = Graph::load(*graph_file);
		if (mode) s.mode = parse_mode(*mode);
		if (phi) s.phi = s.mode == EstimationMode::Single ? PhaseVector::single(*phi) : PhaseVector::uniform(*phi);
		if (phi_x) s.phi.x = *phi_x;
		if (phi_y) s.phi.y = *phi_y;
		if (phi_z) s.phi.z = *phi_z;
		if (t) s.t = *t;
		if (noise) s.noise.kind = parse_noise_kind(*noise);
		if (gamma) s.noise.gamma = *gamma;
		if (tau_c) s.noise.tau_c = *tau_c;
		if (seed) s.seed = *seed;
		s.noise.t = s.t;
		if (out) cfg.output.path = *out;
		if (format) cfg.output.format = parse_format(*format);
		if (workers) cfg.workers = *workers;
		cfg.bayes.workers = cfg.workers;
		return cfg;
	}
};

// Writes to --out when given, stdout otherwise.
template <typename Fn>
void with_output(const RunConfig& cfg, Fn&& write) {
	if (!cfg.output.path) {
		write(std::cout);
		return;
	}
	std::ofstream out(*cfg.output.path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw Error(ErrorCode::IoError, "cannot open " + *cfg.output.path + " for writing");
	}
	write(out);
	out.flush();
	if (!out) {
		throw Error(ErrorCode::IoError, "failed writing " + *cfg.output.path);
	}
}

void write_rows(const RunConfig& cfg, const std::vector<SweepRow>& rows) {
	if (cfg.output.path) {
		emit(rows, cfg.output.format, *cfg.output.path);
		return;
	}
	if (cfg.output.format == OutputFormat::Csv) {
		write_csv(rows, std::cout);
	} else {
		write_json(rows, std::cout);
	}
}

int cmd_qfi(const ScenarioFlags& flags) {
	const auto cfg = flags.resolve();
	SweepRow row;
	row.scenario = cfg.scenario;
	row.id = cfg.scenario.id;
	row.state_label = std::string(to_string(cfg.scenario.state));
	row.lambda_or_q = q_of_t(cfg.scenario.effective_noise());
	const auto start = std::chrono::steady_clock::now();
	const auto r = run_point(cfg.scenario);
	row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	row.qfi = r.qfi;
	row.qcrb = r.qcrb;
	write_rows(cfg, {row});
	return 0;
}

int cmd_sweep(const ScenarioFlags& flags, const std::optional<std::string>& axis,
              const std::optional<std::string>& values, bool reference) {
	auto cfg = flags.resolve();
	if (axis) cfg.sweep.axis = parse_sweep_axis(*axis);
	if (values) cfg.sweep.values = parse_value_list(*values);
	if (reference) cfg.sweep.reference = true;
	auto result = sweep(cfg.sweep.axis, cfg.sweep.values, cfg.scenario, cfg.workers);
	if (cfg.sweep.reference) {
		std::vector<int> ns;
		for (const auto& r : result.rows) ns.push_back(r.scenario.n);
		std::sort(ns.begin(), ns.end());
		ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
		auto refs = reference_rows(ns, cfg.scenario);
		result.rows.insert(result.rows.end(), refs.begin(), refs.end());
	}
	write_rows(cfg, result.rows);
	for (const auto& r : result.rows) {
		if (!r.error.empty()) std::cerr << r.id << ": " << r.error << '\n';
	}
	return 0;
}

int cmd_optimal_time(const ScenarioFlags& flags, const std::optional<double>& lo, const std::optional<double>& hi,
                     const std::optional<std::size_t>& resolution) {
	auto cfg = flags.resolve();
	if (lo) cfg.optimal_time.t_lo = *lo;
	if (hi) cfg.optimal_time.t_hi = *hi;
	if (resolution) cfg.optimal_time.resolution = *resolution;
	const auto best = optimal_time(cfg.scenario, cfg.optimal_time.t_lo, cfg.optimal_time.t_hi,
	                               cfg.optimal_time.resolution);
	with_output(cfg, [&](std::ostream& out) {
		out << "id,N,noise,t_opt,min_qcrb,boundary_minimum\n"
		    << cfg.scenario.id << ',' << cfg.scenario.n << ',' << to_string(cfg.scenario.noise.kind) << ','
		    << format_number(best.t) << ',' << format_number(best.qcrb) << ','
		    << (best.boundary_minimum ? "BoundaryMinimum" : "interior") << '\n';
	});
	if (best.boundary_minimum) {
		std::cerr << "BoundaryMinimum: QCRB(t) is minimal at the interval endpoint t = " << format_number(best.t)
		          << '\n';
	}
	return 0;
}

int cmd_fit(const std::string& in_path, const std::string& column, const std::optional<std::string>& out_path) {
	std::ifstream in(in_path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open " + in_path);
	}
	const auto fit = fit_power_law(read_fit_points(in, column));
	RunConfig cfg;
	cfg.output.path = out_path;
	with_output(cfg, [&](std::ostream& out) {
		out << "a,b,residual,n_min,n_max,points\n"
		    << format_number(fit.a) << ',' << format_number(fit.b) << ',' << format_number(fit.residual) << ','
		    << format_number(fit.n_min) << ',' << format_number(fit.n_max) << ',' << fit.points << '\n';
	});
	return 0;
}

struct BayesFlags {
	std::optional<double> phi_true;
	std::optional<std::uint64_t> shots;
	std::optional<std::size_t> trials;
	std::optional<double> prior_lo;
	std::optional<double> prior_hi;
	std::optional<std::size_t> grid_points;
	std::optional<std::string> likelihood;
};

int cmd_bayes(const ScenarioFlags& flags, const BayesFlags& bf) {
	auto cfg = flags.resolve();
	auto& b = cfg.bayes;
	b.scenario = cfg.scenario;
	b.scenario.mode = EstimationMode::Single;
	if (bf.phi_true) b.scenario.phi = PhaseVector::single(*bf.phi_true);
	if (bf.shots) b.shots = *bf.shots;
	if (bf.trials) b.trials = *bf.trials;
	if (bf.prior_lo) b.prior_lo = *bf.prior_lo;
	if (bf.prior_hi) b.prior_hi = *bf.prior_hi;
	if (bf.grid_points) b.grid_points = *bf.grid_points;
	if (bf.likelihood) b.likelihood = parse_likelihood(*bf.likelihood);
	const auto summary = run_bayes(b);
	with_output(cfg, [&](std::ostream& out) { write_bayes_csv(b, summary, out); });
	std::cerr << fmt::format("phi_true={} mean_estimate={} mean_spread={} Q={}", format_number(summary.phi_true),
	                         format_number(summary.mean_estimate), format_number(summary.mean_spread),
	                         format_number(summary.qfi));
	if (summary.comparison) {
		std::cerr << fmt::format(" sq_error={} bound={} satisfied={}", format_number(summary.comparison->squared_error),
		                         format_number(summary.comparison->bound), summary.comparison->satisfied);
	}
	std::cerr << '\n';
	return 0;
}

int cmd_state_dump(const ScenarioFlags& flags) {
	const auto cfg = flags.resolve();
	const auto rho = final_state(cfg.scenario);
	with_output(cfg, [&](std::ostream& out) {
		out << "row,col,re,im\n";
		const auto& m = rho.matrix().eigen();
		for (Eigen::Index r = 0; r < m.rows(); ++r) {
			for (Eigen::Index c = 0; c < m.cols(); ++c) {
				if (std::abs(m(r, c)) < 1e-15) continue;
				out << r << ',' << c << ',' << format_number(m(r, c).real()) << ',' << format_number(m(r, c).imag())
				    << '\n';
			}
		}
	});
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Graph-state magnetometry: quantum Fisher information, Cramer-Rao bounds and Bayesian estimation"};
	app.require_subcommand(1);

	ScenarioFlags qfi_flags;
	auto* qfi = app.add_subcommand("qfi", "QFI / QFIM and QCRB at a single point");
	qfi_flags.attach(qfi);

	ScenarioFlags sweep_flags;
	std::optional<std::string> axis;
	std::optional<std::string> values;
	bool reference = false;
	auto* sw = app.add_subcommand("sweep", "Sweep one parameter and emit one row per grid point");
	sweep_flags.attach(sw);
	sw->add_option("--axis", axis, "N | t | lambda | gamma | phi");
	sw->add_option("--values", values, "Comma list or from:to:steps");
	sw->add_flag("--reference", reference, "Append SQL (1/N) and HL (1/N^2) rows");

	ScenarioFlags opt_flags;
	std::optional<double> t_lo;
	std::optional<double> t_hi;
	std::optional<std::size_t> resolution;
	auto* opt = app.add_subcommand("optimal-time", "Sensing time minimising the QCRB");
	opt_flags.attach(opt);
	opt->add_option("--t-lo", t_lo, "Lower end of the time interval");
	opt->add_option("--t-hi", t_hi, "Upper end of the time interval");
	opt->add_option("--resolution", resolution, "Grid points before golden-section refinement (>= 3)");

	std::string fit_in;
	std::string fit_column = "qcrb";
	std::optional<std::string> fit_out;
	auto* fit = app.add_subcommand("fit", "Fit a(N-1)^b to a sweep CSV");
	fit->add_option("--in", fit_in, "Sweep CSV")->required();
	fit->add_option("--column", fit_column, "Column to fit (default qcrb)");
	fit->add_option("--out", fit_out, "Output path (stdout when omitted)");

	ScenarioFlags bayes_flags;
	BayesFlags bf;
	auto* bayes = app.add_subcommand("bayes", "Repeated Bayesian phase estimation; one CSV row per trial");
	bayes_flags.attach(bayes);
	bayes->add_option("--phi-true", bf.phi_true, "True Larmor frequency");
	bayes->add_option("--shots", bf.shots, "Shots M per experiment");
	bayes->add_option("--trials", bf.trials, "Repeated experiments");
	bayes->add_option("--prior-lo", bf.prior_lo, "Uniform prior lower bound (default 0)");
	bayes->add_option("--prior-hi", bf.prior_hi, "Uniform prior upper bound (default pi)");
	bayes->add_option("--grid-points", bf.grid_points, "Posterior grid size (default 2001)");
	bayes->add_option("--likelihood", bf.likelihood, "paper | multinomial");

	ScenarioFlags dump_flags;
	auto* dump = app.add_subcommand("state-dump", "Print the nonzero entries of the final density matrix");
	dump_flags.attach(dump);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : kExitConfig;
	}

	try {
		if (qfi->parsed()) return cmd_qfi(qfi_flags);
		if (sw->parsed()) return cmd_sweep(sweep_flags, axis, values, reference);
		if (opt->parsed()) return cmd_optimal_time(opt_flags, t_lo, t_hi, resolution);
		if (fit->parsed()) return cmd_fit(fit_in, fit_column, fit_out);
		if (bayes->parsed()) return cmd_bayes(bayes_flags, bf);
		if (dump->parsed()) return cmd_state_dump(dump_flags);
	} catch (const Error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_code_for(e.code());
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitConfig;
	}
	return kExitConfig;
}
