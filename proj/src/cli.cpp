#include <CLI11.hpp>

#include <cstdio>
#include <fstream>

#include "secprec/harness.hpp"
#include "secprec/oracle.hpp"
#include "secprec/rng.hpp"

namespace secprec {

namespace {

struct CliState {
  std::string spec_path;
  std::string preset_name;
  RunOptions options;
  int drops_override = 0;
  std::uint64_t seed_override = 0;
  bool seed_set = false;
  std::string out_override;
  int oracle_resolution = 20000;
  std::string oracle_objective = "clipped";
};

void add_execution_flags(CLI::App* cmd, CliState& st) {
  cmd->add_option("--workers", st.options.workers, "Worker thread count (0 = auto)");
  cmd->add_flag("--deterministic", st.options.deterministic,
                "Single-threaded execution (output is byte-identical either way)");
  cmd->add_flag("--timings", st.options.emit_timings,
                "Keep measured per-solve wall times in the output files");
  cmd->add_flag("--quiet", st.options.quiet, "Suppress the stdout summary");
}

int run_and_emit(ExperimentSpec spec, const CliState& st) {
  if (st.drops_override > 0) spec.n_drops = st.drops_override;
  if (st.seed_set) spec.seed = st.seed_override;
  if (!st.out_override.empty()) spec.output_dir = st.out_override;
  const ExperimentResult result = run_experiment(spec, st.options);
  emit_results(result, spec.output_dir, st.options);
  std::printf("wrote %s/results.csv (%zu rows, %zu failures)\n", spec.output_dir.c_str(),
              result.rows.size(), result.failures.size());
  return result.failures.empty() ? 0 : 1;
}

int run_oracle(const CliState& st) {
  ExperimentSpec spec = parse_spec_file(st.spec_path);
  if (st.drops_override > 0) spec.n_drops = st.drops_override;
  if (st.seed_set) spec.seed = st.seed_override;
  const OracleObjective objective = st.oracle_objective == "smoothed"
                                        ? OracleObjective::smoothed_surrogate
                                        : OracleObjective::clipped_secrecy;
  std::filesystem::create_directories(spec.output_dir);
  std::ofstream csv(std::filesystem::path(spec.output_dir) / "oracle.csv", std::ios::binary);
  csv << "sweep_value,drop_seed,oracle_value,evaluations\n";
  for (double value : spec.sweep_values) {
    const SystemConfig config = spec.at(value);
    for (int di = 0; di < spec.n_drops; ++di) {
      const std::uint64_t drop_seed = derive_seed(spec.seed, streams::kDrop, di);
      const ChannelRealization channels = drop_network(config, spec.geometry, drop_seed);
      const OracleResult res =
          brute_force_secrecy(channels, config, st.oracle_resolution, objective, drop_seed);
      std::printf("sweep=%g drop=%d oracle=%.9f (%d evals)\n", value, di, res.value,
                  res.evaluations);
      char buf[128];
      std::snprintf(buf, sizeof buf, "%.12g,%llu,%.12g,%d\n", value,
                    static_cast<unsigned long long>(drop_seed), res.value, res.evaluations);
      csv << buf;
    }
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Secure MU-MIMO precoding experiments (GPI solvers + baselines)"};
  app.require_subcommand(1);
  CliState st;

  CLI::App* run = app.add_subcommand("run", "Run an experiment spec file");
  run->add_option("spec", st.spec_path, "Path to a key=value spec file")->required();
  add_execution_flags(run, st);

  CLI::App* pre = app.add_subcommand("preset", "Run a built-in figure preset (fig2..fig7)");
  pre->add_option("name", st.preset_name, "Preset name")->required();
  pre->add_option("--drops", st.drops_override, "Override Monte-Carlo drop count");
  pre->add_option("--seed", st.seed_override, "Override master seed")
      ->each([&](const std::string&) { st.seed_set = true; });
  pre->add_option("--out", st.out_override, "Override output directory");
  add_execution_flags(pre, st);

  CLI::App* orc = app.add_subcommand("oracle", "Brute-force oracle over a (tiny) spec");
  orc->add_option("spec", st.spec_path, "Path to a key=value spec file")->required();
  orc->add_option("--resolution", st.oracle_resolution, "Random sphere samples per drop");
  orc->add_option("--objective", st.oracle_objective, "clipped | smoothed")
      ->check(CLI::IsMember({"clipped", "smoothed"}));
  orc->add_option("--drops", st.drops_override, "Override drop count");
  orc->add_option("--seed", st.seed_override, "Override master seed")
      ->each([&](const std::string&) { st.seed_set = true; });

  CLI::App* val = app.add_subcommand("validate", "Parse and validate a spec file");
  val->add_option("spec", st.spec_path, "Path to a key=value spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return run_and_emit(parse_spec_file(st.spec_path), st);
    if (pre->parsed()) return run_and_emit(preset(st.preset_name), st);
    if (orc->parsed()) return run_oracle(st);
    if (val->parsed()) {
      ExperimentSpec spec = parse_spec_file(st.spec_path);
      spec.validate();
      std::fputs(format_spec(spec).c_str(), stdout);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace secprec
