#include "secprec/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace secprec {

namespace {

CMat normalized_or_throw(CMat w, const char* name) {
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw SolverError(std::string(name) + ": degenerate precoder");
  return w / norm;
}

CMat regularized_inverse_precoder(const CMat& h_aug, double loading, const char* name) {
  const auto cols = h_aug.cols();
  CMat gram = h_aug.adjoint() * h_aug;
  gram.diagonal().array() += loading;
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success)
    throw SolverError(std::string(name) + ": channel Gram matrix not invertible");
  return h_aug * llt.solve(CMat::Identity(cols, cols));
}

}  // namespace

CMat linear_precoder(BaselineAlgo algo, const ChannelRealization& channels,
                     const SystemConfig& config) {
  config.validate();
  const CMat& h = channels.h_users;
  const int n = config.n_antennas;
  const int k = config.n_users;
  const double sp = sigma_over_p(config).first;

  switch (algo) {
    case BaselineAlgo::mrt: {
      CMat f(n, k);
      for (int i = 0; i < k; ++i) f.col(i) = h.col(i).normalized();
      return f / std::sqrt(static_cast<double>(k));
    }
    case BaselineAlgo::zf: {
      if (k > n) throw SolverError("zf: requires K <= N");
      return normalized_or_throw(regularized_inverse_precoder(h, 0.0, "zf"), "zf");
    }
    case BaselineAlgo::rzf:
      return normalized_or_throw(regularized_inverse_precoder(h, k * sp, "rzf"), "rzf");
    case BaselineAlgo::rzf_eve: {
      if (k >= n) throw SolverError("rzf_eve: requires K < N");
      const int m_max = std::min(n - k, config.n_eves);
      std::vector<int> order(config.n_eves);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return channels.g_eves.col(a).squaredNorm() > channels.g_eves.col(b).squaredNorm();
      });
      CMat aug(n, k + m_max);
      aug.leftCols(k) = h;
      for (int i = 0; i < m_max; ++i) aug.col(k + i) = channels.g_eves.col(order[i]);
      const CMat w = regularized_inverse_precoder(aug, (k + m_max) * sp, "rzf_eve");
      return normalized_or_throw(w.leftCols(k), "rzf_eve");
    }
    case BaselineAlgo::gpip:
      throw ParameterError("linear_precoder: gpip is not a linear precoder");
  }
  throw ParameterError("linear_precoder: unknown kind");
}

SolverResult ns_extension(const CMat& precoder, const ChannelRealization& channels,
                          const SystemConfig& config, const LineSearchSettings& line) {
  config.validate();
  if (config.n_users >= config.n_antennas) throw SolverError("ns_extension: requires K < N");
  if (config.n_an_cols < 1) throw SolverError("ns_extension: requires at least one AN column");
  if (!(line.xi_step > 0.0) || line.xi_step > 1.0)
    throw ParameterError("ns_extension: xi_step must lie in (0, 1]");

  CMat phi_hat = nullspace_basis(channels.h_users, config.n_an_cols);
  phi_hat /= phi_hat.norm();
  CMat direction = precoder;
  const double norm = direction.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw SolverError("ns_extension: degenerate precoder");
  // Unit-power inputs pass through bit-exactly: renormalizing by a norm of
  // 1 +/- 1ulp would make the xi = 0 candidate score differently from the
  // precoder it wraps, breaking exact dominance over the plain baseline.
  if (std::abs(norm - 1.0) > 1e-9) direction /= norm;

  SolverResult best;
  bool have = false;
  for (int i = 0;; ++i) {
    double xi = i * line.xi_step;
    if (xi >= 1.0 - 1e-12) xi = 1.0;
    SolverResult cand;
    cand.precoder = std::sqrt(1.0 - xi) * direction;
    cand.an_factor = std::sqrt(xi) * phi_hat;
    cand.power_split = xi;
    cand.xi_selected = xi;
    cand.alpha_used = config.alpha;
    cand.report = sum_secrecy_rate(cand.precoder, cand.an_factor, channels, config);
    if (!have || cand.report.sum_secrecy > best.report.sum_secrecy) {
      best = std::move(cand);
      have = true;
    }
    if (xi == 1.0) break;
  }
  return best;
}

SolverResult gpip_baseline(const ChannelRealization& channels, const SystemConfig& config,
                           const SolverSettings& settings) {
  config.validate();
  SystemConfig no_an = config;
  no_an.n_an_cols = 0;
  RateMatrices matrices = build_sum_rate_matrices(channels, no_an);
  const CVec v0 = initial_stacked_design(channels, no_an);
  GpiResult gpi = gpi_iterate(v0, matrices, settings.gpi, config.alpha);

  SolverResult res;
  res.precoder = StackedDesign::from_vector(gpi.v, no_an.n_antennas, no_an.n_users, 0).precoder();
  res.an_factor = CMat(config.n_antennas, 0);
  res.power_split = 0.0;
  res.alpha_used = config.alpha;
  res.iterations = gpi.iterations;
  res.converged = gpi.converged;
  res.trace = std::move(gpi.trace);
  res.report = sum_secrecy_rate(res.precoder, res.an_factor, channels, config);
  return res;
}

SolverResult run_baseline(BaselineKind kind, const ChannelRealization& channels,
                          const SystemConfig& config, const SolverSettings& settings) {
  SolverResult base;
  if (kind.algo == BaselineAlgo::gpip) {
    base = gpip_baseline(channels, config, settings);
  } else {
    base.precoder = linear_precoder(kind.algo, channels, config);
    base.an_factor = CMat(config.n_antennas, 0);
    base.alpha_used = config.alpha;
    base.report = sum_secrecy_rate(base.precoder, base.an_factor, channels, config);
  }
  if (!kind.null_space_an) return base;

  SolverResult ns = ns_extension(base.precoder, channels, config, settings.line);
  ns.iterations = base.iterations;
  ns.converged = base.converged;
  ns.trace = base.trace;
  return ns;
}

}  // namespace secprec
