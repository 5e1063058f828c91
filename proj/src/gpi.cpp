#include "secprec/gpi.hpp"

namespace secprec {

namespace {

KktPair wrap(UnscaledKkt&& u) {
  KktPair pair;
  pair.a_kkt = std::move(u.a_tilde);
  pair.b_kkt = std::move(u.b_tilde);
  pair.log_lambda_num = u.log_lambda_num;
  pair.log_lambda_den = u.log_lambda_den;
  pair.softmax_weights = std::move(u.softmax_weights);
  return pair;
}

}  // namespace

KktPair assemble_kkt(const CVec& v, const RateMatrices& matrices, const SystemConfig& config) {
  return assemble_kkt(v, matrices, config.alpha);
}

KktPair assemble_kkt(const CVec& v, const RateMatrices& matrices, double alpha,
                     bool lambda_products_in_log) {
  KktPair pair = wrap(assemble_unscaled_kkt(v, matrices, alpha));
  if (!lambda_products_in_log) {
    // Materialize the products, then push back into logs so downstream code
    // sees one representation. Documented to underflow at realistic channel
    // scales; exists for small well-scaled problems and tests.
    const double num = std::exp(pair.log_lambda_num);
    const double den = std::exp(pair.log_lambda_den);
    if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den))
      throw NumericalError(
          "assemble_kkt: lambda products over/underflowed; use lambda_products_in_log");
    pair.log_lambda_num = std::log(num);
    pair.log_lambda_den = std::log(den);
  }
  return pair;
}

GpiResult gpi_iterate(const CVec& v0, const RateMatrices& matrices, const GpiSettings& settings,
                      double alpha) {
  if (!(settings.epsilon > 0.0)) throw ParameterError("gpi_iterate: epsilon must be positive");
  if (settings.max_iters < 1) throw ParameterError("gpi_iterate: max_iters must be >= 1");
  if (std::abs(v0.norm() - 1.0) > 1e-8) throw ParameterError("gpi_iterate: v0 must be unit norm");

  GpiResult res;
  res.v = v0;
  CVec best = v0;

  KktPair pair = assemble_kkt(res.v, matrices, alpha, settings.lambda_products_in_log);
  double objective = pair.log2_lambda();
  double best_objective = objective;
  res.trace.push_back({0, 0.0, objective});

  for (int t = 1; t <= settings.max_iters; ++t) {
    CVec next = blockdiag_solve(pair.b_kkt, pair.a_kkt.apply(res.v));
    const double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw NumericalError("gpi_iterate: update vanished or overflowed");
    next /= norm;

    const double delta = (next - res.v).norm();
    res.v = std::move(next);
    res.iterations = t;

    pair = assemble_kkt(res.v, matrices, alpha, settings.lambda_products_in_log);
    objective = pair.log2_lambda();
    res.trace.push_back({t, delta, objective});
    if (objective > best_objective) {
      best_objective = objective;
      best = res.v;
    }
    if (delta <= settings.epsilon) {
      res.converged = true;
      return res;
    }
  }
  // Ran out of iterations: hand back the best iterate seen, flagged.
  res.v = best;
  return res;
}

double fixed_point_residual(const CVec& v, const RateMatrices& matrices, double alpha) {
  if (!(v.norm() > 0.0)) throw ParameterError("fixed_point_residual: zero vector");
  const KktPair pair = assemble_kkt(v, matrices, alpha);
  const CVec mapped = blockdiag_solve(pair.b_kkt, pair.a_kkt.apply(v));
  return (mapped - v).norm() / v.norm();
}

}  // namespace secprec
