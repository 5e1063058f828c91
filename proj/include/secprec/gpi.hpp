#pragma once

#include "secprec/rates.hpp"

namespace secprec {

struct GpiSettings {
  double epsilon = 1e-6;  // threshold on ||v_t - v_{t-1}||
  int max_iters = 100;
  // Keep the lambda_num/lambda_den products in log domain (they are products
  // of K quadratic forms and underflow fast at realistic channel gains).
  // Off switches to direct products; the pencil itself never contains them.
  bool lambda_products_in_log = true;
};

// One assembled KKT pencil at a point v. a_kkt/b_kkt are the unscaled
// a_tilde/b_tilde of assemble_unscaled_kkt: the full pencil is
// (lambda_num * a_kkt, lambda_den * b_kkt), and since those prefactors are
// positive scalars they cancel in the normalized GPI update, so they are
// carried separately (in logs) rather than multiplied in.
struct KktPair {
  BlockDiagHermitian a_kkt;
  BlockDiagHermitian b_kkt;
  double log_lambda_num = 0.0;
  double log_lambda_den = 0.0;
  RMat softmax_weights;

  // lambda(v) = lambda_num / lambda_den; log2 of it equals the smoothed
  // objective (the whole point of the construction).
  double log2_lambda() const { return (log_lambda_num - log_lambda_den) / kLn2; }
  double lambda() const { return std::exp(log_lambda_num - log_lambda_den); }
};

KktPair assemble_kkt(const CVec& v, const RateMatrices& matrices, const SystemConfig& config);
KktPair assemble_kkt(const CVec& v, const RateMatrices& matrices, double alpha,
                     bool lambda_products_in_log = true);

struct GpiTracePoint {
  int iter = 0;
  double delta_norm = 0.0;  // ||v_t - v_{t-1}||, 0 at iter 0
  double objective = 0.0;   // log2(lambda) at v_t
};

struct GpiResult {
  CVec v;               // unit norm
  int iterations = 0;   // GPI updates performed
  bool converged = false;
  std::vector<GpiTracePoint> trace;
};

// The fixed-point loop v <- normalize(b_kkt(v)^{-1} a_kkt(v) v). Terminates on
// ||delta|| <= epsilon or max_iters; non-convergence is reported through the
// flag and the best-objective iterate is returned, never an error.
GpiResult gpi_iterate(const CVec& v0, const RateMatrices& matrices, const GpiSettings& settings,
                      double alpha);

// ||B^{-1}A v - lambda v|| / ||lambda v||, which the unscaled pencil reduces
// to ||b_kkt^{-1} a_kkt v - v|| (unit v): zero exactly at stationary points.
double fixed_point_residual(const CVec& v, const RateMatrices& matrices, double alpha);

}  // namespace secprec
