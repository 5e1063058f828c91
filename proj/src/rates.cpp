#include "secprec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace secprec {

const char* to_string(KktVariant v) {
  switch (v) {
    case KktVariant::perfect: return "perfect";
    case KktVariant::covariance: return "covariance";
    case KktVariant::nullspace: return "nullspace";
    case KktVariant::nullspace_xi0: return "nullspace_xi0";
    case KktVariant::sum_rate: return "sum_rate";
  }
  return "?";
}

namespace {

double log2_one_plus(double signal, double denom) {
  if (!(denom > 0.0)) throw NumericalError("rate: non-positive denominator");
  return std::log2(1.0 + signal / denom);
}

void check_design(const CMat& precoder, const CMat& an_factor, Eigen::Index n) {
  if (precoder.rows() != n) throw ParameterError("rate: precoder row count mismatch");
  if (an_factor.cols() > 0 && an_factor.rows() != n)
    throw ParameterError("rate: an_factor row count mismatch");
}

// blkdiag(outer, ..., outer) + shift I with the skip-th block zeroed
// (skip < 0 keeps all blocks).
BlockDiagHermitian repeated_outer(int n_blocks, const CMat& outer, int skip, double shift) {
  BlockDiagHermitian m(n_blocks, static_cast<int>(outer.rows()));
  for (int i = 0; i < n_blocks; ++i)
    if (i != skip) m.block(i) = outer;
  m.identity_shift() = shift;
  return m;
}

void check_channels(const ChannelRealization& channels, const SystemConfig& config) {
  if (channels.h_users.rows() != config.n_antennas ||
      channels.h_users.cols() != config.n_users)
    throw ParameterError("rates: h_users does not match config");
  if (channels.g_eves.cols() != config.n_eves ||
      (config.n_eves > 0 && channels.g_eves.rows() != config.n_antennas))
    throw ParameterError("rates: g_eves does not match config");
}

}  // namespace

double rate_user(int k, const CMat& precoder, const CMat& an_factor, const CVec& h_k,
                 double sigma_over_p) {
  check_design(precoder, an_factor, h_k.size());
  if (k < 0 || k >= precoder.cols()) throw ParameterError("rate_user: user index out of range");
  const CVec through_f = precoder.adjoint() * h_k;
  const double signal = std::norm(through_f(k));
  double interference = through_f.squaredNorm() - signal;
  if (an_factor.cols() > 0) interference += (an_factor.adjoint() * h_k).squaredNorm();
  return log2_one_plus(signal, interference + sigma_over_p);
}

double rate_eve(int k, const CMat& precoder, const CMat& an_factor, const CVec& g_m,
                double sigma_e_over_p) {
  // Same SINR structure seen from the wiretapper's side.
  return rate_user(k, precoder, an_factor, g_m, sigma_e_over_p);
}

double ergodic_eve_rate(int k, const CMat& precoder, const CMat& an_factor, const CMat& r_eve,
                        double sigma_e_over_p) {
  check_design(precoder, an_factor, r_eve.rows());
  if (k < 0 || k >= precoder.cols())
    throw ParameterError("ergodic_eve_rate: user index out of range");
  auto quad = [&](const CVec& x) { return std::real(x.dot(r_eve * x)); };
  double signal = 0.0, rest = 0.0;
  for (int i = 0; i < precoder.cols(); ++i) {
    const double q = quad(precoder.col(i));
    (i == k ? signal : rest) += q;
  }
  for (int j = 0; j < an_factor.cols(); ++j) rest += quad(an_factor.col(j));
  return log2_one_plus(signal, rest + sigma_e_over_p);
}

double logsumexp_max(std::span<const double> values, double alpha) {
  if (values.empty()) throw ParameterError("logsumexp_max: empty input");
  if (!(alpha > 0.0)) throw ParameterError("logsumexp_max: alpha must be positive");
  const double top = *std::max_element(values.begin(), values.end());
  double acc = 0.0;
  for (double x : values) acc += std::exp((x - top) / alpha);
  return top + alpha * std::log(acc);
}

RateReport sum_secrecy_rate(const CMat& precoder, const CMat& an_factor,
                            const ChannelRealization& channels, const SystemConfig& config) {
  check_channels(channels, config);
  if (precoder.cols() != config.n_users)
    throw ParameterError("sum_secrecy_rate: precoder column count != n_users");
  const auto [sp, sep] = sigma_over_p(config);
  const int k_users = config.n_users;
  const int m_eves = config.n_eves;

  RateReport rep;
  rep.user_rates.resize(k_users);
  rep.eve_rates.resize(m_eves, k_users);
  rep.secrecy_rates.resize(k_users);
  for (int k = 0; k < k_users; ++k)
    rep.user_rates(k) = rate_user(k, precoder, an_factor, channels.h_users.col(k), sp);
  for (int m = 0; m < m_eves; ++m)
    for (int k = 0; k < k_users; ++k)
      rep.eve_rates(m, k) = rate_eve(k, precoder, an_factor, channels.g_eves.col(m), sep);

  rep.sum_secrecy = 0.0;
  rep.surrogate_value = 0.0;
  for (int k = 0; k < k_users; ++k) {
    double leak = 0.0;
    if (m_eves > 0) {
      const RVec col = rep.eve_rates.col(k);
      leak = col.maxCoeff();
      rep.surrogate_value +=
          rep.user_rates(k) - logsumexp_max(std::span(col.data(), col.size()), config.alpha);
    } else {
      rep.surrogate_value += rep.user_rates(k);
    }
    rep.secrecy_rates(k) = std::max(rep.user_rates(k) - leak, 0.0);
    rep.sum_secrecy += rep.secrecy_rates(k);
  }
  return rep;
}

RateMatrices build_perfect_matrices(const ChannelRealization& channels,
                                    const SystemConfig& config) {
  check_channels(channels, config);
  const auto [sp, sep] = sigma_over_p(config);
  RateMatrices m;
  m.variant = KktVariant::perfect;
  m.n_blocks = config.n_users + config.n_an_cols;
  m.block_dim = config.n_antennas;
  for (int k = 0; k < config.n_users; ++k) {
    const CMat outer = channels.h_users.col(k) * channels.h_users.col(k).adjoint();
    m.a.push_back(repeated_outer(m.n_blocks, outer, -1, sp));
    m.b.push_back(repeated_outer(m.n_blocks, outer, k, sp));
  }
  m.d.resize(config.n_eves);
  for (int me = 0; me < config.n_eves; ++me) {
    const CMat outer = channels.g_eves.col(me) * channels.g_eves.col(me).adjoint();
    m.c.push_back(repeated_outer(m.n_blocks, outer, -1, sep));
    for (int k = 0; k < config.n_users; ++k)
      m.d[me].push_back(repeated_outer(m.n_blocks, outer, k, sep));
  }
  return m;
}

RateMatrices build_covariance_matrices(const ChannelRealization& channels,
                                       const SystemConfig& config) {
  check_channels(channels, config);
  if (static_cast<int>(channels.r_eves.size()) != config.n_eves)
    throw ParameterError("build_covariance_matrices: r_eves does not match config");
  RateMatrices m = build_sum_rate_matrices(channels, config);
  m.variant = KktVariant::covariance;
  const double sep = sigma_over_p(config).second;
  m.d.resize(config.n_eves);
  for (int me = 0; me < config.n_eves; ++me) {
    m.c.push_back(repeated_outer(m.n_blocks, channels.r_eves[me], -1, sep));
    for (int k = 0; k < config.n_users; ++k)
      m.d[me].push_back(repeated_outer(m.n_blocks, channels.r_eves[me], k, sep));
  }
  return m;
}

RateMatrices build_sum_rate_matrices(const ChannelRealization& channels,
                                     const SystemConfig& config) {
  check_channels(channels, config);
  const double sp = sigma_over_p(config).first;
  RateMatrices m;
  m.variant = KktVariant::sum_rate;
  m.n_blocks = config.n_users + config.n_an_cols;
  m.block_dim = config.n_antennas;
  for (int k = 0; k < config.n_users; ++k) {
    const CMat outer = channels.h_users.col(k) * channels.h_users.col(k).adjoint();
    m.a.push_back(repeated_outer(m.n_blocks, outer, -1, sp));
    m.b.push_back(repeated_outer(m.n_blocks, outer, k, sp));
  }
  return m;
}

RateMatrices build_nullspace_matrices(const ChannelRealization& channels,
                                      const SystemConfig& config, const CMat& phi_tilde,
                                      double xi) {
  check_channels(channels, config);
  if (phi_tilde.rows() != config.n_antennas)
    throw ParameterError("build_nullspace_matrices: phi_tilde row count mismatch");
  if (!(xi >= 0.0) || !(xi <= 1.0))
    throw ParameterError("build_nullspace_matrices: xi must lie in [0, 1]");
  const double an_trace = phi_tilde.squaredNorm();  // tr(phi phi^H)
  const double scale = 1.0 - xi * an_trace;
  if (!(scale > 0.0))
    throw ParameterError("build_nullspace_matrices: power-infeasible xi (scale <= 0)");
  const auto [sp, sep] = sigma_over_p(config);

  RateMatrices m;
  m.variant = xi == 0.0 ? KktVariant::nullspace_xi0 : KktVariant::nullspace;
  m.n_blocks = config.n_users;
  m.block_dim = config.n_antennas;

  auto leakage = [&](const CVec& chan) {
    return xi * (phi_tilde.adjoint() * chan).squaredNorm();
  };
  for (int k = 0; k < config.n_users; ++k) {
    const CVec h = channels.h_users.col(k);
    const CMat outer = scale * (h * h.adjoint());
    const double shift = leakage(h) + sp;
    m.a.push_back(repeated_outer(m.n_blocks, outer, -1, shift));
    m.b.push_back(repeated_outer(m.n_blocks, outer, k, shift));
  }
  m.d.resize(config.n_eves);
  for (int me = 0; me < config.n_eves; ++me) {
    const CVec g = channels.g_eves.col(me);
    const CMat outer = scale * (g * g.adjoint());
    const double shift = leakage(g) + sep;
    m.c.push_back(repeated_outer(m.n_blocks, outer, -1, shift));
    for (int k = 0; k < config.n_users; ++k)
      m.d[me].push_back(repeated_outer(m.n_blocks, outer, k, shift));
  }
  return m;
}

namespace {

double positive_quad(const BlockDiagHermitian& m, const CVec& v, const char* what) {
  const double q = m.quad_form(v);
  if (!(q > 0.0) || !std::isfinite(q))
    throw NumericalError(std::string("non-positive quadratic form in ") + what);
  return q;
}

}  // namespace

double surrogate_objective(const CVec& v, const RateMatrices& matrices, double alpha) {
  if (v.size() != matrices.dim()) throw ParameterError("surrogate_objective: size mismatch");
  if (!(alpha > 0.0)) throw ParameterError("surrogate_objective: alpha must be positive");
  const double beta = 1.0 / (alpha * kLn2);
  double value = 0.0;
  for (int k = 0; k < matrices.n_users(); ++k) {
    const double qa = positive_quad(matrices.a[k], v, "A");
    const double qb = positive_quad(matrices.b[k], v, "B");
    value += (std::log(qa) - std::log(qb)) / kLn2;
    if (matrices.n_eves() == 0) continue;  // sum-rate family
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> t(matrices.n_eves());
    for (int me = 0; me < matrices.n_eves(); ++me) {
      const double qc = positive_quad(matrices.c[me], v, "C");
      const double qd = positive_quad(matrices.d[me][k], v, "D");
      t[me] = beta * (std::log(qc) - std::log(qd));
      top = std::max(top, t[me]);
    }
    double acc = 0.0;
    for (double ti : t) acc += std::exp(ti - top);
    value -= alpha * (top + std::log(acc));
  }
  return value;
}

namespace {

UnscaledKkt assemble_unscaled_impl(const CVec& v, const RateMatrices& matrices, double alpha) {
  const int k_users = matrices.n_users();
  const int m_eves = matrices.n_eves();
  const double beta = 1.0 / (alpha * kLn2);

  UnscaledKkt out;
  out.a_tilde = BlockDiagHermitian(matrices.n_blocks, matrices.block_dim);
  out.b_tilde = BlockDiagHermitian(matrices.n_blocks, matrices.block_dim);
  out.softmax_weights.resize(m_eves, k_users);

  std::vector<double> qc(m_eves);
  for (int me = 0; me < m_eves; ++me) qc[me] = positive_quad(matrices.c[me], v, "C");

  std::vector<double> t(m_eves), qd(m_eves);
  for (int k = 0; k < k_users; ++k) {
    const double qa = positive_quad(matrices.a[k], v, "A");
    const double qb = positive_quad(matrices.b[k], v, "B");
    out.log_lambda_num += std::log(qa);
    out.log_lambda_den += std::log(qb);
    out.a_tilde.add_scaled(matrices.a[k], 1.0 / (kLn2 * qa));
    out.b_tilde.add_scaled(matrices.b[k], 1.0 / (kLn2 * qb));
    if (m_eves == 0) continue;

    double top = -std::numeric_limits<double>::infinity();
    for (int me = 0; me < m_eves; ++me) {
      qd[me] = positive_quad(matrices.d[me][k], v, "D");
      t[me] = beta * (std::log(qc[me]) - std::log(qd[me]));
      top = std::max(top, t[me]);
    }
    double denom = 0.0;
    for (double ti : t) denom += std::exp(ti - top);
    // The denominator factor is (sum_m ratio^beta)^(alpha ln2), not (...)^alpha:
    // the objective's LogSumExp term is alpha * ln(sum), and only this exponent
    // makes log2(lambda) coincide with it. The choice is invisible to the GPI
    // update, which normalizes all common positive scalars away.
    out.log_lambda_den += alpha * kLn2 * (top + std::log(denom));
    for (int me = 0; me < m_eves; ++me) {
      const double w = std::exp(t[me] - top) / denom / kLn2;  // alpha*beta = 1/ln2
      out.softmax_weights(me, k) = w;
      out.a_tilde.add_scaled(matrices.d[me][k], w / qd[me]);
      out.b_tilde.add_scaled(matrices.c[me], w / qc[me]);
    }
  }
  return out;
}

}  // namespace

UnscaledKkt assemble_unscaled_kkt(const CVec& v, const RateMatrices& matrices, double alpha) {
  if (v.size() != matrices.dim()) throw ParameterError("assemble_unscaled_kkt: size mismatch");
  if (!(alpha > 0.0)) throw ParameterError("assemble_unscaled_kkt: alpha must be positive");
  if (matrices.n_eves() == 0 && matrices.variant != KktVariant::sum_rate)
    throw ParameterError("assemble_unscaled_kkt: eavesdropper families required for variant " +
                         std::string(to_string(matrices.variant)));
  return assemble_unscaled_impl(v, matrices, alpha);
}

CVec grad_surrogate(const CVec& v, const RateMatrices& matrices, double alpha) {
  const UnscaledKkt kkt = assemble_unscaled_kkt(v, matrices, alpha);
  return kkt.a_tilde.apply(v) - kkt.b_tilde.apply(v);
}

}  // namespace secprec
