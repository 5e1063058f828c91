#pragma once

#include <span>
#include <vector>

#include "secprec/blockdiag.hpp"
#include "secprec/channel.hpp"
#include "secprec/design.hpp"

namespace secprec {

// Exact per-drop rate bookkeeping. secrecy_rates carries the [.]+ clipping;
// surrogate_value is the smoothed objective, which omits the clipping and may
// therefore be negative.
struct RateReport {
  RVec user_rates;    // K
  RMat eve_rates;     // M x K
  RVec secrecy_rates; // K, clipped at zero
  double sum_secrecy = 0.0;
  double surrogate_value = 0.0;
};

// Which matrix family a RateMatrices bundle encodes. sum_rate is the
// degenerate no-eavesdropper family (A/B only) used by the GPIP baseline and
// as the documented M = 0 fallback of every GPI solver.
enum class KktVariant { perfect, covariance, nullspace, nullspace_xi0, sum_rate };

const char* to_string(KktVariant v);

// The Rayleigh-quotient matrix families. All members share one block layout:
// n_blocks blocks of size block_dim (K+J blocks of size N for the stacked
// design; K blocks of size N for the null-space reformulation, which
// optimizes the NK-dimensional w-vector instead).
//
//   a[k], b[k]        user-rate numerator/denominator of user k
//   c[m]              eavesdropper numerator for eavesdropper m (k-independent)
//   d[m][k]           eavesdropper denominator, = c[m] with the k-th block removed
struct RateMatrices {
  KktVariant variant = KktVariant::perfect;
  int n_blocks = 0;
  int block_dim = 0;
  std::vector<BlockDiagHermitian> a;
  std::vector<BlockDiagHermitian> b;
  std::vector<BlockDiagHermitian> c;
  std::vector<std::vector<BlockDiagHermitian>> d;

  int n_users() const { return static_cast<int>(a.size()); }
  int n_eves() const { return static_cast<int>(c.size()); }
  int dim() const { return n_blocks * block_dim; }
};

// --- exact rate formulas (SINR route) ---------------------------------------

// R_k at full power for a unit-power stacked design: signal |h_k^H f_k|^2
// against inter-user interference, AN leakage and sigma^2/P.
double rate_user(int k, const CMat& precoder, const CMat& an_factor, const CVec& h_k,
                 double sigma_over_p);

// Wiretap rate of eavesdropper m decoding user k's stream.
double rate_eve(int k, const CMat& precoder, const CMat& an_factor, const CVec& g_m,
                double sigma_e_over_p);

// Ergodic-style eavesdropper rate surrogate driven by the covariance alone:
// log2(1 + f_k^H R f_k / (sum_{i != k} f_i^H R f_i + sum_j phi_j^H R phi_j + sigma_e^2/P)).
double ergodic_eve_rate(int k, const CMat& precoder, const CMat& an_factor, const CMat& r_eve,
                        double sigma_e_over_p);

// Full scoring of one design on one realization: exact rates, clipped
// secrecy, and the smoothed surrogate at config.alpha.
RateReport sum_secrecy_rate(const CMat& precoder, const CMat& an_factor,
                            const ChannelRealization& channels, const SystemConfig& config);

// Smooth maximum alpha * ln(sum exp(x_i / alpha)), computed with a max shift.
// Bounded below by max(x) and above by max(x) + alpha * ln(n).
double logsumexp_max(std::span<const double> values, double alpha);

// --- Rayleigh-quotient matrix builders ---------------------------------------

// Perfect-CSIT families on the stacked N(K+J) design:
//   A_k = blkdiag(h_k h_k^H, ..., h_k h_k^H) + (sigma^2/P) I, B_k = A_k minus
//   the k-th block; C_m/D_{m,k} the same with g_m and sigma_e^2/P.
RateMatrices build_perfect_matrices(const ChannelRealization& channels,
                                    const SystemConfig& config);

// Covariance-CSIT variant: the eavesdropper families use R_m^e blocks in
// place of g_m g_m^H (user families unchanged).
RateMatrices build_covariance_matrices(const ChannelRealization& channels,
                                       const SystemConfig& config);

// Sum-rate-only families (A/B as above, no eavesdropper terms).
RateMatrices build_sum_rate_matrices(const ChannelRealization& channels,
                                     const SystemConfig& config);

// Null-space reformulation on the NK-dimensional w-vector for a fixed AN
// basis phi_tilde and power fraction xi: channel outer products are scaled by
// (1 - xi * tr(phi_tilde phi_tilde^H)) and each family's identity shift picks
// up the per-receiver AN leakage xi * sum_j |h^H phi_tilde_j|^2 (zero when
// phi_tilde is an exact null-space basis) plus the noise ratio.
RateMatrices build_nullspace_matrices(const ChannelRealization& channels,
                                      const SystemConfig& config, const CMat& phi_tilde,
                                      double xi);

// --- smoothed objective and its calculus -------------------------------------

// L(v) = sum_k [ log2(qA_k/qB_k) - alpha * ln sum_m (qC_m/qD_mk)^beta ],
// beta = 1/(alpha ln 2), with q* the quadratic forms of v on the families.
// Scale-invariant in v. For sum_rate families the eavesdropper term is absent.
double surrogate_objective(const CVec& v, const RateMatrices& matrices, double alpha);

// The KKT pencil stripped of the lambda_num/lambda_den prefactors (which are
// common positive scalars and cancel in the normalized GPI update):
//   a_tilde = sum_k [A_k/(ln2 qA_k) + sum_m w_mk D_mk/qD_mk]
//   b_tilde = sum_k [B_k/(ln2 qB_k) + sum_m w_mk C_m /qC_m]
// with softmax weights w_mk = alpha beta (qC/qD)^beta / sum_m' (...)^beta,
// computed in log space. The gradient identity below makes this pair the
// natural carrier of both the GPI update and the objective's gradient:
//
//   dL/dv^H = a_tilde v - b_tilde v
//           = (A_KKT v - lambda B_KKT v) / lambda_num,
//
// i.e. the proportionality constant between the gradient and the KKT residual
// is exactly lambda_num (tested numerically).
struct UnscaledKkt {
  BlockDiagHermitian a_tilde;
  BlockDiagHermitian b_tilde;
  double log_lambda_num = 0.0;
  double log_lambda_den = 0.0;
  RMat softmax_weights;  // M x K; each column sums to 1/ln2

  double log2_lambda() const { return (log_lambda_num - log_lambda_den) / kLn2; }
};

UnscaledKkt assemble_unscaled_kkt(const CVec& v, const RateMatrices& matrices, double alpha);

// dL/dv^H of surrogate_objective; degree -1 homogeneous in v.
CVec grad_surrogate(const CVec& v, const RateMatrices& matrices, double alpha);

}  // namespace secprec
