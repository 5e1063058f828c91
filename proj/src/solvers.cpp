#include "secprec/solvers.hpp"

#include <cmath>

namespace secprec {

std::vector<double> SolverResult::objective_trace() const {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const GpiTracePoint& p : trace) out.push_back(p.objective);
  return out;
}

namespace {

// ZF when defined (K <= N and H^H H invertible), MRT otherwise; unit total
// power either way.
CMat zf_or_mrt_precoder(const CMat& h_users) {
  const auto n = h_users.rows();
  const auto k = h_users.cols();
  if (k <= n) {
    const CMat gram = h_users.adjoint() * h_users;
    Eigen::LLT<CMat> llt(gram);
    if (llt.info() == Eigen::Success) {
      CMat w = h_users * llt.solve(CMat::Identity(k, k));
      const double norm = w.norm();
      if (norm > 0.0 && std::isfinite(norm)) return w / norm;
    }
  }
  CMat f(n, k);
  for (Eigen::Index i = 0; i < k; ++i) f.col(i) = h_users.col(i).normalized();
  return f / std::sqrt(static_cast<double>(k));
}

// Unit-Frobenius AN seed: null-space columns while they last, identity
// columns as padding.
CMat an_seed(const CMat& h_users, int n_an_cols) {
  const int n = static_cast<int>(h_users.rows());
  const int k = static_cast<int>(h_users.cols());
  CMat phi = CMat::Zero(n, n_an_cols);
  const int from_nullspace = std::min(n_an_cols, std::max(n - k, 0));
  if (from_nullspace > 0)
    phi.leftCols(from_nullspace) = nullspace_basis(h_users, from_nullspace);
  for (int j = from_nullspace; j < n_an_cols; ++j) phi(j % n, j) = 1.0;
  return phi / phi.norm();
}

// Shared post-processing: unstack, score, fill the result.
SolverResult finish(const StackedDesign& design, const ChannelRealization& channels,
                    const SystemConfig& config, GpiResult&& gpi, double alpha) {
  SolverResult res;
  res.precoder = design.precoder();
  res.an_factor = design.an_factor();
  res.power_split = design.power_split();
  res.alpha_used = alpha;
  res.iterations = gpi.iterations;
  res.converged = gpi.converged;
  res.trace = std::move(gpi.trace);
  res.report = sum_secrecy_rate(res.precoder, res.an_factor, channels, config);
  return res;
}

using MatrixBuilder = RateMatrices (*)(const ChannelRealization&, const SystemConfig&);

SolverResult stacked_gpi_solver(const ChannelRealization& channels, const SystemConfig& config,
                                const SolverSettings& settings, double alpha,
                                MatrixBuilder build) {
  RateMatrices matrices = build(channels, config);
  if (matrices.n_eves() == 0) matrices.variant = KktVariant::sum_rate;  // M = 0 fallback
  const CVec v0 = initial_stacked_design(channels, config);
  GpiResult gpi = gpi_iterate(v0, matrices, settings.gpi, alpha);
  return finish(StackedDesign::from_vector(gpi.v, config.n_antennas, config.n_users,
                                           config.n_an_cols),
                channels, config, std::move(gpi), alpha);
}

// Runs `solve(alpha)` over the candidate temperatures and keeps the best
// exact secrecy (first winner on ties, so the result is deterministic).
template <typename Solve>
SolverResult best_over_alpha(const SystemConfig& config, const SolverSettings& settings,
                             Solve&& solve) {
  std::vector<double> grid = settings.alpha_grid;
  if (grid.empty()) grid.push_back(config.alpha);
  SolverResult best;
  bool have = false;
  for (double alpha : grid) {
    if (!(alpha > 0.0)) throw ParameterError("alpha grid values must be positive");
    SolverResult cand = solve(alpha);
    if (!have || cand.report.sum_secrecy > best.report.sum_secrecy) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

}  // namespace

CVec initial_stacked_design(const ChannelRealization& channels, const SystemConfig& config) {
  config.validate();
  const CMat f0 = zf_or_mrt_precoder(channels.h_users);
  if (config.n_an_cols == 0) {
    CVec v = StackedDesign::stack(f0, CMat(config.n_antennas, 0)).v;
    return v / v.norm();
  }
  const CMat phi0 = an_seed(channels.h_users, config.n_an_cols);
  CVec v = StackedDesign::stack(f0 * M_SQRT1_2, phi0 * M_SQRT1_2).v;
  return v / v.norm();
}

CMat nullspace_basis(const CMat& h_users, int j_cols) {
  const int n = static_cast<int>(h_users.rows());
  const int k = static_cast<int>(h_users.cols());
  if (k >= n) throw SolverError("nullspace_basis: no null space when K >= N");
  if (j_cols < 1) throw ParameterError("nullspace_basis: need at least one column");
  const int null_dim = n - k;
  if (j_cols > null_dim)
    warn_once("nullspace_basis: requested more columns than null(H^H) has; zero-padding");
  Eigen::JacobiSVD<CMat> svd(h_users, Eigen::ComputeFullU);
  CMat phi = CMat::Zero(n, j_cols);
  const int take = std::min(j_cols, null_dim);
  phi.leftCols(take) = svd.matrixU().rightCols(null_dim).leftCols(take);
  return phi;
}

SolverResult js_gpip(const ChannelRealization& channels, const SystemConfig& config,
                     const SolverSettings& settings) {
  return best_over_alpha(config, settings, [&](double alpha) {
    return stacked_gpi_solver(channels, config, settings, alpha, &build_perfect_matrices);
  });
}

SolverResult js_gpip_cov(const ChannelRealization& channels, const SystemConfig& config,
                         const SolverSettings& settings) {
  return best_over_alpha(config, settings, [&](double alpha) {
    return stacked_gpi_solver(channels, config, settings, alpha, &build_covariance_matrices);
  });
}

SolverResult s_gpip(const ChannelRealization& channels, const SystemConfig& config,
                    const SolverSettings& settings) {
  SystemConfig no_an = config;
  no_an.n_an_cols = 0;
  SolverResult res = best_over_alpha(no_an, settings, [&](double alpha) {
    return stacked_gpi_solver(channels, no_an, settings, alpha, &build_perfect_matrices);
  });
  res.power_split = 0.0;
  return res;
}

namespace {

struct NsContext {
  CMat phi_hat;   // unit-Frobenius AN basis (zero-padded past the null space)
  CMat f0;        // cold-start precoder
  CVec w0;        // unit stacked cold start
};

NsContext ns_setup(const ChannelRealization& channels, const SystemConfig& config) {
  config.validate();
  if (config.n_users >= config.n_antennas)
    throw SolverError("null-space solver requires K < N");
  if (config.n_an_cols < 1)
    throw SolverError("null-space solver requires at least one AN column");
  NsContext ctx;
  ctx.phi_hat = nullspace_basis(channels.h_users, config.n_an_cols);
  ctx.phi_hat /= ctx.phi_hat.norm();  // xi becomes the exact AN power fraction
  ctx.f0 = zf_or_mrt_precoder(channels.h_users);
  ctx.w0 = StackedDesign::stack(ctx.f0, CMat(config.n_antennas, 0)).v.normalized();
  return ctx;
}

std::vector<double> xi_grid(const LineSearchSettings& line) {
  if (!(line.xi_step > 0.0) || line.xi_step > 1.0)
    throw ParameterError("xi_step must lie in (0, 1]");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double xi = i * line.xi_step;
    if (xi >= 1.0 - 1e-12) break;
    grid.push_back(xi);
  }
  grid.push_back(1.0);
  return grid;
}

}  // namespace

SolverResult j_gpip_ns(const ChannelRealization& channels, const SystemConfig& config,
                       const SolverSettings& settings) {
  const NsContext ctx = ns_setup(channels, config);
  const std::vector<double> grid = xi_grid(settings.line);

  return best_over_alpha(config, settings, [&](double alpha) {
    SolverResult best;
    bool have = false;
    int total_iters = 0;
    CVec w_prev = ctx.w0;
    for (double xi : grid) {
      if (1.0 - xi * ctx.phi_hat.squaredNorm() <= 0.0) {
        // xi = 1 puts all power into AN; the w-problem degenerates there.
        warn_once("j_gpip_ns: skipping power-infeasible grid point");
        continue;
      }
      RateMatrices matrices = build_nullspace_matrices(channels, config, ctx.phi_hat, xi);
      if (matrices.n_eves() == 0) matrices.variant = KktVariant::sum_rate;
      GpiResult gpi = gpi_iterate(settings.warm_start ? w_prev : ctx.w0, matrices, settings.gpi,
                                  alpha);
      w_prev = gpi.v;
      total_iters += gpi.iterations;

      const double scale = 1.0 - xi * ctx.phi_hat.squaredNorm();
      StackedDesign w = StackedDesign::from_vector(gpi.v, config.n_antennas, config.n_users, 0);
      SolverResult cand;
      cand.precoder = std::sqrt(scale) * w.precoder();
      cand.an_factor = std::sqrt(xi) * ctx.phi_hat;
      cand.power_split = xi * ctx.phi_hat.squaredNorm();
      cand.xi_selected = xi;
      cand.alpha_used = alpha;
      cand.converged = gpi.converged;
      cand.trace = std::move(gpi.trace);
      cand.report = sum_secrecy_rate(cand.precoder, cand.an_factor, channels, config);
      if (!have || cand.report.sum_secrecy > best.report.sum_secrecy) {
        best = std::move(cand);
        have = true;
      }
    }
    if (!have) throw SolverError("j_gpip_ns: no feasible grid point");
    best.iterations = total_iters;
    return best;
  });
}

SolverResult j_gpip_ns_low(const ChannelRealization& channels, const SystemConfig& config,
                           const SolverSettings& settings) {
  const NsContext ctx = ns_setup(channels, config);
  const std::vector<double> grid = xi_grid(settings.line);

  return best_over_alpha(config, settings, [&](double alpha) {
    // One GPI run, AN ignored (xi = 0), then a pure power split search.
    RateMatrices matrices = build_nullspace_matrices(channels, config, ctx.phi_hat, 0.0);
    if (matrices.n_eves() == 0) matrices.variant = KktVariant::sum_rate;
    GpiResult gpi = gpi_iterate(ctx.w0, matrices, settings.gpi, alpha);
    const CMat direction =
        StackedDesign::from_vector(gpi.v, config.n_antennas, config.n_users, 0).precoder();

    SolverResult best;
    bool have = false;
    for (double xi : grid) {
      SolverResult cand;
      cand.precoder = std::sqrt(1.0 - xi) * direction;
      cand.an_factor = std::sqrt(xi) * ctx.phi_hat;
      cand.power_split = xi * ctx.phi_hat.squaredNorm();
      cand.xi_selected = xi;
      cand.alpha_used = alpha;
      cand.converged = gpi.converged;
      cand.report = sum_secrecy_rate(cand.precoder, cand.an_factor, channels, config);
      if (!have || cand.report.sum_secrecy > best.report.sum_secrecy) {
        best = std::move(cand);
        have = true;
      }
    }
    best.iterations = gpi.iterations;
    best.trace = gpi.trace;
    return best;
  });
}

}  // namespace secprec
