#pragma once

#include "graphmag/bayes.hpp"
#include "graphmag/encoding.hpp"
#include "graphmag/metrology.hpp"
#include "graphmag/noise.hpp"
#include "graphmag/states.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace graphmag {

enum class StateKind { Star, Ghz, CustomGraph };

StateKind parse_state_kind(std::string_view name);
std::string_view to_string(StateKind kind);
EstimationMode parse_mode(std::string_view name);
std::string_view to_string(EstimationMode mode);

struct Scenario {
	std::string id = "run";
	int n = 5;
	StateKind state = StateKind::Star;
	std::optional<Graph> graph; // required for CustomGraph
	PhaseVector phi = PhaseVector::single(0.0);
	double t = 1.0;
	NoiseSpec noise;
	EstimationMode mode = EstimationMode::Single;
	std::uint64_t seed = 0;

	// The noise spec with its sensing time synchronised to `t`.
	NoiseSpec effective_noise() const;
	// Throws ConfigError / TooLarge / TooFewQubits on an invalid combination.
	void validate() const;
};

PureState initial_state(const Scenario& s);

// rho(phi, gamma) and its analytic derivatives d rho / d phi_axis.
struct EvolvedState {
	DensityMatrix rho;
	std::vector<ComplexMatrix> derivatives; // x only (single) or x, y, z (multi)
};

EvolvedState evolve(const Scenario& s);
DensityMatrix final_state(const Scenario& s);

// Fisher information with qcrb = +inf when Q is singular.
FisherResult evaluate(const Scenario& s);
// As evaluate, but a singular Q raises SingularInformationError.
FisherResult run_point(const Scenario& s);

enum class SweepAxis { N, T, Lambda, Gamma, Phi };
SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

// Applies one swept value to a copy of the base scenario.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

struct SweepRow {
	std::string id;
	Scenario scenario;
	std::string state_label;
	double lambda_or_q = 0.0;
	double qfi = 0.0;
	double qcrb = 0.0;
	double wall_ms = 0.0;
	std::string error; // empty on success
};

struct SweepResult {
	std::vector<SweepRow> rows;
};

SweepResult sweep(SweepAxis axis, const std::vector<double>& grid, const Scenario& base, unsigned workers = 1);

// SQL = 1/N and HL = 1/N^2 rows for the given probe sizes.
std::vector<SweepRow> reference_rows(const std::vector<int>& ns, const Scenario& base);

struct PowerLawFit {
	double a = 0.0;
	double b = 0.0;
	double residual = 0.0; // rms of the log-log fit
	double n_min = 0.0;
	double n_max = 0.0;
	std::size_t points = 0;
};

// Least squares of log(value) against log(N - 1).
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct OptimalTime {
	double t = 0.0;
	double qcrb = 0.0;
	bool boundary_minimum = false;
};

inline constexpr double kGoldenTolerance = 1e-4;

// Grid scan of QCRB(t) followed by golden-section refinement around the grid minimum.
OptimalTime optimal_time(const Scenario& base, double t_lo, double t_hi, std::size_t resolution);
template <typename F>
OptimalTime minimise_on_interval(F&& f, double lo, double hi, std::size_t resolution);

// CSV header read by the plotting scripts.
inline constexpr std::string_view kCsvHeader =
    "id,mode,state,N,t,noise,gamma,tau_c,lambda_or_q,phi_x,phi_y,phi_z,qfi_or_trace_qfim,qcrb,seed,wall_ms";

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(std::string_view name);

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, std::ostream& out);
void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path);

// (N, column) pairs from a harness CSV. Reference rows (SQL/HL) and
// non-finite values are skipped; an unknown column is a ConfigError.
std::vector<std::pair<double, double>> read_fit_points(std::istream& in, std::string_view column);

// Bayesian phase estimation over repeated simulated experiments.
enum class LikelihoodMode { Paper, Multinomial };
LikelihoodMode parse_likelihood(std::string_view name);
std::string_view to_string(LikelihoodMode mode);

struct BayesConfig {
	Scenario scenario; // phi.x is the true phase
	std::uint64_t shots = 100;
	std::size_t trials = 100;
	double prior_lo = 0.0;
	double prior_hi = 3.14159265358979323846;
	std::size_t grid_points = 2001;
	LikelihoodMode likelihood = LikelihoodMode::Multinomial;
	unsigned workers = 1;
};

struct BayesTrial {
	std::size_t trial = 0;
	std::uint64_t seed = 0;
	double estimate = 0.0;
	double spread = 0.0;
	double squared_error = 0.0;
};

struct BayesSummary {
	std::vector<BayesTrial> trials;
	double phi_true = 0.0;
	double qfi = 0.0;
	std::optional<QcrbComparison> comparison; // absent when Q == 0
	double mean_estimate = 0.0;
	double mean_spread = 0.0;
};

BayesSummary run_bayes(const BayesConfig& cfg);

inline constexpr std::string_view kBayesCsvHeader =
    "trial,seed,N,phi_true,noise,gamma,tau_c,t,shots,likelihood,estimate,spread,sq_error";

void write_bayes_csv(const BayesConfig& cfg, const BayesSummary& summary, std::ostream& out);

// Shortest round-trip decimal form used in every emitted file.
std::string format_number(double v);

} // namespace graphmag

#include "graphmag/detail/minimise.hpp"
