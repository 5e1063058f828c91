#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secprec/baselines.hpp"

namespace secprec {

enum class SweepVariable { tx_power, n_antennas, n_eves, n_an_cols };

const char* to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

// One experiment: a sweep over a single variable, n_drops Monte-Carlo drops
// per sweep value, a list of solvers run on identical drops. Everything
// needed to reproduce the outputs bit-for-bit lives here.
struct ExperimentSpec {
  std::string name = "experiment";
  SweepVariable sweep_variable = SweepVariable::tx_power;
  std::vector<double> sweep_values;
  SystemConfig system;
  GeometryConfig geometry;
  SolverSettings settings;
  int n_drops = 200;
  std::uint64_t seed = 1;
  std::vector<std::string> solvers;
  std::string output_dir = "results";
  bool emit_traces = false;
  // fig4-style sweeps keep J = N as the antenna count moves.
  bool an_cols_track_antennas = false;

  void validate() const;
  // The system config at one sweep value.
  SystemConfig at(double sweep_value) const;
};

struct ResultRow {
  std::string experiment;
  std::string solver;
  double sweep_value = 0.0;
  std::uint64_t drop_seed = 0;
  double sum_secrecy = 0.0;
  std::vector<double> per_user_secrecy;
  double power_split = 0.0;
  int iterations = 0;
  double wall_time_ms = 0.0;
};

struct SolveFailure {
  std::string solver;
  double sweep_value = 0.0;
  int drop_index = 0;
  std::string message;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ResultRow> rows;  // ordered by (sweep index, drop index, solver index)
  std::vector<SolveFailure> failures;
  // Iteration traces of drop 0, keyed by (solver, sweep value); filled when
  // spec.emit_traces is set.
  std::map<std::pair<std::string, double>, std::vector<GpiTracePoint>> traces;
};

struct RunOptions {
  int workers = 0;           // 0: SECPREC_WORKERS env or hardware concurrency
  bool deterministic = false;  // force a single worker
  bool quiet = false;          // suppress the stdout summary
  // Keep measured wall times in the emitted files. Off by default so that
  // reruns of the same spec produce byte-identical outputs; the measured
  // times stay available in ExperimentResult either way.
  bool emit_timings = false;
};

// Solver registry: the names accepted in ExperimentSpec::solvers.
const std::vector<std::string>& known_solvers();
SolverResult run_named_solver(const std::string& name, const ChannelRealization& channels,
                              const SystemConfig& config, const SolverSettings& settings);

// Runs the full (sweep x drop x solver) grid. Drop i uses
// derive_seed(spec.seed, kDrop, i) for every solver and sweep value, so rows
// are paired across solvers and sweep values. Solver failures become
// SolveFailure records, not errors. Prints a mean +/- std summary per
// (solver, sweep value) unless options.quiet.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

// results.csv + results.json under dir (plus traces/<solver>_<value>.csv when
// traces were collected). Wall-time column is zeroed unless emit_timings.
void emit_results(const ExperimentResult& result, const std::filesystem::path& dir,
                  const RunOptions& options = {});

std::string results_csv(const ExperimentResult& result, bool emit_timings = false);
std::string results_json(const ExperimentResult& result, bool emit_timings = false);
std::vector<ResultRow> parse_results_json(const std::filesystem::path& file);

// Plain-text key=value spec files; see README for the schema.
ExperimentSpec parse_spec_text(const std::string& text, const std::string& name_hint);
ExperimentSpec parse_spec_file(const std::filesystem::path& file);
std::string format_spec(const ExperimentSpec& spec);

// The figure presets. Accepts fig2..fig7.
ExperimentSpec preset(const std::string& name);

// Mean and sample standard deviation of sum_secrecy for one (solver, sweep
// value) cell of a result table; used by the summary printer and tests.
struct CellStats {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};
CellStats cell_stats(const ExperimentResult& result, const std::string& solver,
                     double sweep_value);

int cli_main(int argc, const char* const* argv);

}  // namespace secprec
