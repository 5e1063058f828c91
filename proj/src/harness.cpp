#include "secprec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "secprec/rng.hpp"

namespace secprec {

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::tx_power: return "tx_power";
    case SweepVariable::n_antennas: return "n_antennas";
    case SweepVariable::n_eves: return "n_eves";
    case SweepVariable::n_an_cols: return "n_an_cols";
  }
  return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "tx_power") return SweepVariable::tx_power;
  if (name == "n_antennas") return SweepVariable::n_antennas;
  if (name == "n_eves") return SweepVariable::n_eves;
  if (name == "n_an_cols") return SweepVariable::n_an_cols;
  throw ConfigError("unknown sweep_variable '" + name + "'");
}

namespace {

int sweep_int(double value, const char* what) {
  const double rounded = std::round(value);
  if (std::abs(value - rounded) > 1e-9 || rounded < 0)
    throw ConfigError(std::string("sweep value for ") + what +
                      " must be a non-negative integer");
  return static_cast<int>(rounded);
}

}  // namespace

SystemConfig ExperimentSpec::at(double sweep_value) const {
  SystemConfig c = system;
  switch (sweep_variable) {
    case SweepVariable::tx_power:
      c.tx_power_dbm = sweep_value;
      break;
    case SweepVariable::n_antennas:
      c.n_antennas = sweep_int(sweep_value, "n_antennas");
      if (an_cols_track_antennas) c.n_an_cols = c.n_antennas;
      break;
    case SweepVariable::n_eves:
      c.n_eves = sweep_int(sweep_value, "n_eves");
      break;
    case SweepVariable::n_an_cols:
      c.n_an_cols = sweep_int(sweep_value, "n_an_cols");
      break;
  }
  return c;
}

void ExperimentSpec::validate() const {
  if (name.empty()) throw ConfigError("spec: name must be non-empty");
  if (sweep_values.empty()) throw ConfigError("spec: sweep_values must be non-empty");
  if (n_drops < 1) throw ConfigError("spec: n_drops must be >= 1");
  if (solvers.empty()) throw ConfigError("spec: solvers must be non-empty");
  const auto& known = known_solvers();
  for (const std::string& s : solvers)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ConfigError("spec: unknown solver '" + s + "'");
  geometry.validate();
  for (double value : sweep_values) {
    try {
      at(value).validate();
    } catch (const ParameterError& e) {
      throw ConfigError("spec: invalid system config at sweep value " + std::to_string(value) +
                        ": " + e.what());
    }
  }
  if (!(settings.line.xi_step > 0.0) || settings.line.xi_step > 1.0)
    throw ConfigError("spec: xi_step must lie in (0, 1]");
  if (!(settings.gpi.epsilon > 0.0) || settings.gpi.max_iters < 1)
    throw ConfigError("spec: invalid GPI settings");
}

const std::vector<std::string>& known_solvers() {
  static const std::vector<std::string> names = {
      "js_gpip", "js_gpip_cov", "s_gpip", "j_gpip_ns", "j_gpip_ns_low",
      "gpip",    "gpip_ns",     "mrt",    "mrt_ns",    "zf",
      "zf_ns",   "rzf",         "rzf_ns", "rzf_eve",   "rzf_eve_ns"};
  return names;
}

SolverResult run_named_solver(const std::string& name, const ChannelRealization& channels,
                              const SystemConfig& config, const SolverSettings& settings) {
  if (name == "js_gpip") return js_gpip(channels, config, settings);
  if (name == "js_gpip_cov") return js_gpip_cov(channels, config, settings);
  if (name == "s_gpip") return s_gpip(channels, config, settings);
  if (name == "j_gpip_ns") return j_gpip_ns(channels, config, settings);
  if (name == "j_gpip_ns_low") return j_gpip_ns_low(channels, config, settings);

  auto base = [&](BaselineAlgo algo, bool ns) {
    return run_baseline({algo, ns}, channels, config, settings);
  };
  if (name == "gpip") return base(BaselineAlgo::gpip, false);
  if (name == "gpip_ns") return base(BaselineAlgo::gpip, true);
  if (name == "mrt") return base(BaselineAlgo::mrt, false);
  if (name == "mrt_ns") return base(BaselineAlgo::mrt, true);
  if (name == "zf") return base(BaselineAlgo::zf, false);
  if (name == "zf_ns") return base(BaselineAlgo::zf, true);
  if (name == "rzf") return base(BaselineAlgo::rzf, false);
  if (name == "rzf_ns") return base(BaselineAlgo::rzf, true);
  if (name == "rzf_eve") return base(BaselineAlgo::rzf_eve, false);
  if (name == "rzf_eve_ns") return base(BaselineAlgo::rzf_eve, true);
  throw ConfigError("unknown solver '" + name + "'");
}

namespace {

int resolve_workers(const RunOptions& options) {
  if (options.deterministic) return 1;
  if (options.workers > 0) return options.workers;
  if (const char* env = std::getenv("SECPREC_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct TaskSlot {
  std::vector<std::optional<ResultRow>> rows;       // per solver
  std::vector<std::optional<SolveFailure>> errors;  // per solver
  std::vector<std::vector<GpiTracePoint>> traces;   // per solver, drop 0 only
};

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  const size_t n_sweep = spec.sweep_values.size();
  const size_t n_solvers = spec.solvers.size();
  const size_t n_tasks = n_sweep * static_cast<size_t>(spec.n_drops);

  std::vector<TaskSlot> slots(n_tasks);
  for (TaskSlot& slot : slots) {
    slot.rows.resize(n_solvers);
    slot.errors.resize(n_solvers);
    slot.traces.resize(n_solvers);
  }

  std::atomic<size_t> next_task{0};
  auto worker = [&]() {
    for (;;) {
      const size_t task = next_task.fetch_add(1);
      if (task >= n_tasks) return;
      const size_t si = task / spec.n_drops;
      const int di = static_cast<int>(task % spec.n_drops);
      const double sweep_value = spec.sweep_values[si];
      const SystemConfig config = spec.at(sweep_value);
      const std::uint64_t drop_seed = derive_seed(spec.seed, streams::kDrop, di);
      const ChannelRealization channels = drop_network(config, spec.geometry, drop_seed);

      for (size_t sj = 0; sj < n_solvers; ++sj) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
          SolverResult res = run_named_solver(spec.solvers[sj], channels, config, spec.settings);
          const auto t1 = std::chrono::steady_clock::now();
          ResultRow row;
          row.experiment = spec.name;
          row.solver = spec.solvers[sj];
          row.sweep_value = sweep_value;
          row.drop_seed = drop_seed;
          row.sum_secrecy = res.report.sum_secrecy;
          row.per_user_secrecy.assign(res.report.secrecy_rates.data(),
                                      res.report.secrecy_rates.data() +
                                          res.report.secrecy_rates.size());
          row.power_split = res.power_split;
          row.iterations = res.iterations;
          row.wall_time_ms =
              std::chrono::duration<double, std::milli>(t1 - t0).count();
          slots[task].rows[sj] = std::move(row);
          if (spec.emit_traces && di == 0) slots[task].traces[sj] = std::move(res.trace);
        } catch (const std::exception& e) {
          slots[task].errors[sj] = SolveFailure{spec.solvers[sj], sweep_value, di, e.what()};
        }
      }
    }
  };

  const int n_workers = std::min<int>(resolve_workers(options), static_cast<int>(n_tasks));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Merge in (sweep, drop, solver) order so output is independent of the
  // worker count.
  ExperimentResult result;
  result.spec = spec;
  result.rows.reserve(n_tasks * n_solvers);
  for (size_t si = 0; si < n_sweep; ++si) {
    for (int di = 0; di < spec.n_drops; ++di) {
      TaskSlot& slot = slots[si * spec.n_drops + di];
      for (size_t sj = 0; sj < n_solvers; ++sj) {
        if (slot.rows[sj]) result.rows.push_back(std::move(*slot.rows[sj]));
        if (slot.errors[sj]) result.failures.push_back(std::move(*slot.errors[sj]));
        if (di == 0 && !slot.traces[sj].empty())
          result.traces[{spec.solvers[sj], spec.sweep_values[si]}] = std::move(slot.traces[sj]);
      }
    }
  }

  if (!options.quiet) {
    for (const std::string& solver : spec.solvers) {
      for (double value : spec.sweep_values) {
        const CellStats st = cell_stats(result, solver, value);
        std::printf("%-14s %s=%-8g mean_secrecy=%-10.6f std=%-9.6f drops=%d\n", solver.c_str(),
                    to_string(spec.sweep_variable), value, st.mean, st.stddev, st.count);
      }
    }
    if (!result.failures.empty())
      std::printf("%zu solve failures recorded (see results.json)\n", result.failures.size());
    std::fflush(stdout);
  }
  return result;
}

CellStats cell_stats(const ExperimentResult& result, const std::string& solver,
                     double sweep_value) {
  CellStats st;
  double sum = 0.0;
  for (const ResultRow& row : result.rows) {
    if (row.solver != solver || row.sweep_value != sweep_value) continue;
    sum += row.sum_secrecy;
    ++st.count;
  }
  if (st.count == 0) return st;
  st.mean = sum / st.count;
  double ss = 0.0;
  for (const ResultRow& row : result.rows) {
    if (row.solver != solver || row.sweep_value != sweep_value) continue;
    ss += (row.sum_secrecy - st.mean) * (row.sum_secrecy - st.mean);
  }
  st.stddev = st.count > 1 ? std::sqrt(ss / (st.count - 1)) : 0.0;
  return st;
}

}  // namespace secprec
