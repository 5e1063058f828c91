// Acceptance gate: one line per criterion, PASS/FAIL with the measured
// quantity, exit 0 iff everything requested passed. Run with no arguments for
// all criteria or with a list of criterion numbers.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "secprec/harness.hpp"
#include "secprec/oracle.hpp"

using namespace secprec;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double mean_of(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v / x.size();
  return m;
}

// Mean and standard error of the per-drop differences a_i - b_i.
struct PairedDiff {
  double mean = 0.0;
  double se = 0.0;
};

PairedDiff paired_diff(const std::vector<double>& a, const std::vector<double>& b) {
  const size_t n = a.size();
  PairedDiff d;
  for (size_t i = 0; i < n; ++i) d.mean += (a[i] - b[i]) / n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = (a[i] - b[i]) - d.mean;
    ss += r * r;
  }
  d.se = n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  return d;
}

double median_of(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const size_t n = x.size();
  return n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

// Per-drop column of one (solver, sweep value) cell, in drop order.
std::vector<double> column(const ExperimentResult& res, const std::string& solver,
                           double sweep_value, double (*get)(const ResultRow&)) {
  std::vector<double> out;
  for (const ResultRow& row : res.rows)
    if (row.solver == solver && row.sweep_value == sweep_value) out.push_back(get(row));
  return out;
}

double get_secrecy(const ResultRow& r) { return r.sum_secrecy; }
double get_split(const ResultRow& r) { return r.power_split; }
double get_iterations(const ResultRow& r) { return static_cast<double>(r.iterations); }

RunOptions quiet() {
  RunOptions o;
  o.quiet = true;
  return o;
}

RateMatrices build_variant(int which, const ChannelRealization& ch, const SystemConfig& c) {
  switch (which) {
    case 0: return build_perfect_matrices(ch, c);
    case 1: return build_covariance_matrices(ch, c);
    case 2: {
      CMat basis = nullspace_basis(ch.h_users, c.n_an_cols);
      basis /= basis.norm();
      return build_nullspace_matrices(ch, c, basis, 0.3);
    }
    default: return build_sum_rate_matrices(ch, c);
  }
}

// --- criterion 1: eigen-identity --------------------------------------------

Outcome criterion1() {
  const auto t0 = Clock::now();
  const std::array<SystemConfig, 3> configs{testutil::make_config(2, 1, 1, 1),
                                            testutil::make_config(4, 2, 3, 2),
                                            testutil::make_config(3, 2, 2, 1)};
  const std::array<double, 3> alphas{0.3, 1.0, 2.0};
  double worst = 0.0;
  for (int p = 0; p < 500; ++p) {
    SystemConfig c = configs[p % 3];
    c.alpha = alphas[(p / 12) % 3];
    const ChannelRealization ch = testutil::drop(c, 10000 + p);
    const RateMatrices m = build_variant((p / 3) % 4, ch, c);
    const CVec v = testutil::random_unit(m.dim(), 20000 + p);
    const KktPair pair = assemble_kkt(v, m, c.alpha);
    worst = std::max(worst,
                     std::abs(pair.log2_lambda() - surrogate_objective(v, m, c.alpha)));
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-9 && elapsed < 30.0;
  return {pass, fmt("max |log2(lambda) - L| = %.3e over 500 pairs (tol 1e-9), %.1f s (limit 30)",
                    worst, elapsed)};
}

// --- criterion 2: gradient vs finite differences ------------------------------

Outcome criterion2() {
  double worst_err = 0.0;
  double worst_cos = 1.0;
  for (int p = 0; p < 100; ++p) {
    const SystemConfig c =
        p % 2 ? testutil::make_config(3, 2, 2, 1) : testutil::make_config(2, 1, 1, 1);
    const ChannelRealization ch = testutil::drop(c, 30000 + p);
    const RateMatrices m = build_perfect_matrices(ch, c);
    const CVec v = testutil::random_unit(m.dim(), 40000 + p);
    const CVec g = grad_surrogate(v, m, c.alpha);

    const double h = 1e-5;
    CVec fd(v.size());
    for (int i = 0; i < v.size(); ++i) {
      CVec vp = v, vm = v;
      vp(i) += h;
      vm(i) -= h;
      const double d_re =
          (surrogate_objective(vp, m, c.alpha) - surrogate_objective(vm, m, c.alpha)) / (2 * h);
      vp = v;
      vm = v;
      vp(i) += cd(0.0, h);
      vm(i) -= cd(0.0, h);
      const double d_im =
          (surrogate_objective(vp, m, c.alpha) - surrogate_objective(vm, m, c.alpha)) / (2 * h);
      fd(i) = cd(d_re, d_im) / 2.0;
    }
    worst_err = std::max(worst_err, (fd - g).norm() / g.norm());

    // The KKT residual direction: (A_KKT - lambda B_KKT) v is a positive
    // multiple of a_tilde v - b_tilde v, so the cosine is scale-safe.
    const UnscaledKkt kkt = assemble_unscaled_kkt(v, m, c.alpha);
    const CVec r = kkt.a_tilde.apply(v) - kkt.b_tilde.apply(v);
    worst_cos = std::min(worst_cos, fd.dot(r).real() / (fd.norm() * r.norm()));
  }
  const bool pass = worst_err < 1e-5 && worst_cos > 1.0 - 1e-8;
  return {pass, fmt("max rel err %.3e (tol 1e-5), min cosine deficit %.3e (tol 1e-8)", worst_err,
                    1.0 - worst_cos)};
}

// --- criterion 3: structured solves ------------------------------------------

Outcome criterion3() {
  Philox gen(777, 0);
  double worst = 0.0;
  for (int p = 0; p < 100; ++p) {
    const int n_blocks = 1 + static_cast<int>(gen.uniform() * 20);
    const int block_dim = 1 + static_cast<int>(gen.uniform() * 16);
    BlockDiagHermitian m(n_blocks, block_dim);
    for (int b = 0; b < n_blocks; ++b) {
      CMat z(block_dim, block_dim);
      for (int j = 0; j < block_dim; ++j)
        for (int i = 0; i < block_dim; ++i) z(i, j) = gen.cgaussian();
      m.block(b) = z * z.adjoint();
    }
    m.identity_shift() = 0.1 + 0.9 * gen.uniform();
    CVec rhs(m.dim());
    for (int i = 0; i < m.dim(); ++i) rhs(i) = gen.cgaussian();
    const CVec x = blockdiag_solve(m, rhs);
    worst = std::max(worst, (m.apply(x) - rhs).norm() / rhs.norm());
  }

  // Wall-time ratio at the pinned size: same matrix, same right-hand side,
  // both routes factor per call.
  BlockDiagHermitian big(20, 16);
  for (int b = 0; b < 20; ++b) {
    CMat z(16, 16);
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i) z(i, j) = gen.cgaussian();
    big.block(b) = z * z.adjoint();
  }
  big.identity_shift() = 0.5;
  CVec rhs(big.dim());
  for (int i = 0; i < big.dim(); ++i) rhs(i) = gen.cgaussian();
  const CMat dense = big.to_dense();

  cd sink(0.0, 0.0);
  const int structured_reps = 200, dense_reps = 20;
  const auto t1 = Clock::now();
  for (int r = 0; r < structured_reps; ++r) sink += blockdiag_solve(big, rhs)(0);
  const double structured_s = seconds_since(t1) / structured_reps;
  const auto t2 = Clock::now();
  for (int r = 0; r < dense_reps; ++r) sink += dense.ldlt().solve(rhs)(0);
  const double dense_s = seconds_since(t2) / dense_reps;
  if (!std::isfinite(sink.real())) return {false, "solver produced non-finite values"};

  const double ratio = dense_s / structured_s;
  const bool pass = worst < 1e-10 && ratio >= 3.0;
  return {pass, fmt("max rel residual %.3e (tol 1e-10); dense/structured time ratio %.1f "
                    "(need >= 3) at N=16, K+J=20",
                    worst, ratio)};
}

// --- criterion 4: brute-force near-optimality ---------------------------------

Outcome criterion4() {
  const auto t0 = Clock::now();
  const SystemConfig c = testutil::make_config(2, 1, 1, 1);  // P = 20 dBm
  SolverSettings settings;
  settings.gpi.max_iters = 1000;
  double worst_frac = 1e300;
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const ChannelRealization ch = testutil::drop(c, 40000 + i);
    const SolverResult sol = js_gpip(ch, c, settings);
    const OracleResult oracle =
        brute_force_secrecy(ch, c, 20000, OracleObjective::smoothed_surrogate);
    const double frac = sol.report.surrogate_value / oracle.value;
    worst_frac = std::min(worst_frac, frac);
    if (!(sol.report.surrogate_value >= 0.995 * oracle.value)) ++failures;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = failures == 0 && elapsed < 600.0;
  return {pass, fmt("min objective/oracle fraction %.4f over 50 drops (need >= 0.995 on "
                    "every drop; %d below), %.0f s (limit 600)",
                    worst_frac, failures, elapsed)};
}

// --- criterion 5: convergence counts ------------------------------------------

Outcome criterion5() {
  const ExperimentResult res = run_experiment(preset("fig7"), quiet());
  std::ostringstream detail;
  detail << "median GPI iterations to eps=1e-6:";
  bool pass = true;
  for (double p : {-20.0, 0.0, 20.0, 40.0}) {
    const double med = median_of(column(res, "js_gpip", p, get_iterations));
    const double limit = p == -20.0 ? 15.0 : 8.0;
    if (med > limit) pass = false;
    detail << fmt(" P=%g: %g (limit %g)", p, med, limit);
  }
  return {pass, detail.str()};
}

// --- criterion 6: solver ordering ---------------------------------------------

Outcome criterion6() {
  const auto t0 = Clock::now();
  ExperimentSpec spec;
  spec.name = "ordering";
  spec.sweep_variable = SweepVariable::tx_power;
  spec.sweep_values = {20.0};
  spec.system = testutil::make_config(16, 2, 4, 16, 20.0, 2.0);
  spec.n_drops = 200;
  spec.seed = 1;
  spec.solvers = known_solvers();
  const ExperimentResult res = run_experiment(spec, quiet());
  if (!res.failures.empty()) return {false, fmt("%zu solve failures", res.failures.size())};

  std::map<std::string, std::vector<double>> cols;
  for (const std::string& s : spec.solvers) cols[s] = column(res, s, 20.0, get_secrecy);

  const std::vector<std::string> chain = {"js_gpip", "j_gpip_ns", "js_gpip_cov",
                                          "j_gpip_ns_low", "s_gpip"};
  std::string best_base;
  for (const std::string& s : spec.solvers) {
    if (std::find(chain.begin(), chain.end(), s) != chain.end()) continue;
    if (best_base.empty() || mean_of(cols[s]) > mean_of(cols[best_base])) best_base = s;
  }

  std::vector<std::string> order = chain;
  order.push_back(best_base);
  std::ostringstream detail;
  bool pass = true;
  for (size_t i = 0; i < order.size(); ++i) {
    detail << (i ? " >= " : "") << order[i] << "=" << fmt("%.3f", mean_of(cols[order[i]]));
    if (i == 0) continue;
    const PairedDiff d = paired_diff(cols[order[i - 1]], cols[order[i]]);
    if (d.mean < -d.se) {
      pass = false;
      detail << fmt(" [VIOLATED: diff %.4f < -SE %.4f]", d.mean, d.se);
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 1800.0) pass = false;
  detail << fmt(" (one-SE slack; %.0f s, limit 1800)", elapsed);
  return {pass, detail.str()};
}

// --- criterion 7: AN dimension ------------------------------------------------

Outcome criterion7() {
  ExperimentSpec spec;
  spec.name = "an_dim";
  spec.sweep_variable = SweepVariable::n_an_cols;
  spec.sweep_values = {1.0, 16.0};
  spec.system = testutil::make_config(16, 2, 4, 16, 20.0, 2.0);
  spec.n_drops = 200;
  spec.seed = 1;
  spec.solvers = {"js_gpip"};
  const ExperimentResult res = run_experiment(spec, quiet());
  const double m1 = mean_of(column(res, "js_gpip", 1.0, get_secrecy));
  const double m16 = mean_of(column(res, "js_gpip", 16.0, get_secrecy));
  const bool pass = m1 >= 0.95 * m16;
  return {pass, fmt("mean secrecy J=1: %.3f vs J=16: %.3f, ratio %.4f (need >= 0.95)", m1, m16,
                    m1 / m16)};
}

// --- criterion 8: power-split trend --------------------------------------------

Outcome criterion8() {
  ExperimentSpec spec;
  spec.name = "power_split";
  spec.sweep_variable = SweepVariable::tx_power;
  spec.sweep_values = {0.0, 10.0, 20.0, 30.0, 40.0};
  spec.system = preset("fig3").system;
  spec.n_drops = 200;
  spec.seed = 1;
  spec.solvers = {"js_gpip"};
  const ExperimentResult res = run_experiment(spec, quiet());

  std::ostringstream detail;
  detail << "mean AN power split:";
  bool pass = true;
  std::vector<double> prev;
  for (double p : spec.sweep_values) {
    const std::vector<double> cur = column(res, "js_gpip", p, get_split);
    detail << fmt(" P=%g: %.3f", p, mean_of(cur));
    if (!prev.empty()) {
      const PairedDiff d = paired_diff(cur, prev);
      if (d.mean < -d.se) {
        pass = false;
        detail << fmt(" [DECREASE beyond one SE: %.4f < -%.4f]", d.mean, d.se);
      }
    }
    prev = cur;
  }
  detail << " (nondecreasing within one SE)";
  return {pass, detail.str()};
}

// --- criterion 9: eavesdropper-count trend -------------------------------------

Outcome criterion9() {
  ExperimentSpec spec;
  spec.name = "eve_trend";
  spec.sweep_variable = SweepVariable::n_eves;
  spec.sweep_values = {1.0, 2.0, 4.0};
  spec.system = testutil::make_config(16, 4, 4, 16, 20.0, 2.0);
  spec.n_drops = 200;
  spec.seed = 1;
  spec.solvers = {"js_gpip", "s_gpip"};
  const ExperimentResult res = run_experiment(spec, quiet());

  std::ostringstream detail;
  detail << "mean secrecy gap js_gpip - s_gpip:";
  bool pass = true;
  std::vector<double> prev_gap;
  for (double m : spec.sweep_values) {
    const std::vector<double> js = column(res, "js_gpip", m, get_secrecy);
    const std::vector<double> s = column(res, "s_gpip", m, get_secrecy);
    std::vector<double> gap(js.size());
    for (size_t i = 0; i < js.size(); ++i) gap[i] = js[i] - s[i];
    detail << fmt(" M=%g: %.3f", m, mean_of(gap));
    if (!prev_gap.empty()) {
      const PairedDiff d = paired_diff(gap, prev_gap);
      if (d.mean < -d.se) {
        pass = false;
        detail << fmt(" [DECREASE beyond one SE: %.4f < -%.4f]", d.mean, d.se);
      }
    }
    prev_gap = gap;
  }
  detail << " (nondecreasing within one SE)";
  return {pass, detail.str()};
}

// --- criterion 10: null-space exactness ----------------------------------------

Outcome criterion10() {
  const SystemConfig c = testutil::make_config(8, 2, 2, 4);
  SolverSettings settings;
  const std::vector<std::string> ns_solvers = {"j_gpip_ns", "j_gpip_ns_low", "mrt_ns", "zf_ns",
                                               "rzf_ns",    "rzf_eve_ns",    "gpip_ns"};
  const std::vector<std::string> pairs = {"mrt", "zf", "rzf", "rzf_eve", "gpip"};

  double worst_leak = 0.0;
  int dominance_failures = 0, dominance_checks = 0;
  for (int i = 0; i < 100; ++i) {
    const ChannelRealization ch = testutil::drop(c, 70000 + i);
    for (const std::string& name : ns_solvers) {
      const SolverResult r = run_named_solver(name, ch, c, settings);
      for (int j = 0; j < r.an_factor.cols(); ++j) {
        const double nrm = r.an_factor.col(j).norm();
        if (nrm == 0.0) continue;
        worst_leak = std::max(
            worst_leak, (ch.h_users.adjoint() * r.an_factor.col(j)).cwiseAbs().maxCoeff() / nrm);
      }
    }
    for (const std::string& base : pairs) {
      const double plain = run_named_solver(base, ch, c, settings).report.sum_secrecy;
      const double ns = run_named_solver(base + "_ns", ch, c, settings).report.sum_secrecy;
      ++dominance_checks;
      if (ns < plain) ++dominance_failures;
    }
  }
  const bool pass = worst_leak < 1e-9 && dominance_failures == 0;
  return {pass, fmt("max leakage %.3e (tol 1e-9); NS dominance held on %d/%d solver-drop pairs",
                    worst_leak, dominance_checks - dominance_failures, dominance_checks)};
}

// --- criterion 11: determinism --------------------------------------------------

Outcome criterion11() {
  const fs::path root = fs::temp_directory_path() / "secprec_accept_fig4";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> runs = {
      {"secprec", "preset", "fig4", "--out", (root / "a").string(), "--quiet"},
      {"secprec", "preset", "fig4", "--out", (root / "b").string(), "--quiet"},
      {"secprec", "preset", "fig4", "--out", (root / "c").string(), "--quiet",
       "--deterministic"},
  };
  for (const auto& args : runs) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (cli_main(static_cast<int>(argv.size()), argv.data()) != 0) {
      fs::remove_all(root);
      return {false, "preset run exited nonzero"};
    }
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };
  const std::string csv_a = slurp(root / "a" / "results.csv");
  const std::string csv_b = slurp(root / "b" / "results.csv");
  const std::string csv_c = slurp(root / "c" / "results.csv");
  fs::remove_all(root);
  const bool pass = !csv_a.empty() && csv_a == csv_b && csv_a == csv_c;
  return {pass, fmt("rerun and --deterministic outputs %s (results.csv, %zu bytes)",
                    pass ? "byte-identical" : "DIFFER", csv_a.size())};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty())
    for (int n = 1; n <= 11; ++n) wanted.push_back(n);

  using Fn = Outcome (*)();
  const Fn criteria[11] = {criterion1, criterion2, criterion3, criterion4,
                           criterion5, criterion6, criterion7, criterion8,
                           criterion9, criterion10, criterion11};
  bool all_pass = true;
  for (int n : wanted) {
    if (n < 1 || n > 11) {
      std::fprintf(stderr, "unknown criterion %d (expected 1..11)\n", n);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s - %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
