#include "secprec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "secprec/design.hpp"
#include "secprec/rng.hpp"

namespace secprec {

namespace {

// Objective as a function over R^{2D} restricted to the unit sphere.
class SphereObjective {
 public:
  SphereObjective(const ChannelRealization& channels, const SystemConfig& config,
                  OracleObjective objective)
      : channels_(channels), config_(config), objective_(objective) {}

  double operator()(const CVec& v) {
    ++evaluations_;
    const StackedDesign d =
        StackedDesign::from_vector(v, config_.n_antennas, config_.n_users, config_.n_an_cols);
    const RateReport rep = sum_secrecy_rate(d.precoder(), d.an_factor(), channels_, config_);
    return objective_ == OracleObjective::clipped_secrecy ? rep.sum_secrecy
                                                          : rep.surrogate_value;
  }

  int evaluations() const { return evaluations_; }

 private:
  const ChannelRealization& channels_;
  const SystemConfig& config_;
  OracleObjective objective_;
  int evaluations_ = 0;
};

RVec to_real(const CVec& v) {
  RVec x(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    x(2 * i) = v(i).real();
    x(2 * i + 1) = v(i).imag();
  }
  return x;
}

CVec to_complex(const RVec& x) {
  CVec v(x.size() / 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(x(2 * i), x(2 * i + 1));
  return v;
}

// Projected-gradient polish on the unit sphere with central finite
// differences; derivative-free beyond that, so it works on the clipped
// objective too (up to its kinks).
double polish(SphereObjective& f, CVec& v, double value) {
  constexpr double kStep = 1e-6;
  constexpr int kMaxIters = 300;
  RVec x = to_real(v);
  for (int iter = 0; iter < kMaxIters; ++iter) {
    RVec grad(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      RVec xp = x, xm = x;
      xp(i) += kStep;
      xm(i) -= kStep;
      grad(i) = (f(to_complex(xp).normalized()) - f(to_complex(xm).normalized())) / (2 * kStep);
    }
    grad -= grad.dot(x) * x;  // tangent component
    if (grad.norm() < 1e-12 * (1.0 + std::abs(value))) break;

    bool improved = false;
    for (double t = 0.5; t > 1e-13; t *= 0.5) {
      const RVec cand = (x + t * grad).normalized();
      const double cand_value = f(to_complex(cand));
      if (cand_value > value) {
        x = cand;
        value = cand_value;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  v = to_complex(x).normalized();
  return value;
}

}  // namespace

OracleResult brute_force_secrecy(const ChannelRealization& channels, const SystemConfig& config,
                                 int resolution, OracleObjective objective, std::uint64_t seed) {
  config.validate();
  const int dim = config.stacked_dim();
  if (dim > 4)
    throw ParameterError("brute_force_secrecy: guarded to N(K+J) <= 4 complex dimensions");
  if (resolution < 1) throw ParameterError("brute_force_secrecy: resolution must be >= 1");

  SphereObjective f(channels, config, objective);
  Philox gen(seed, streams::id(streams::kOracle, 0));

  // Stage 1: random sphere sample, keeping the best few for polishing.
  constexpr int kKeep = 12;
  std::vector<std::pair<double, CVec>> top;
  CVec v(dim);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < dim; ++j) v(j) = gen.cgaussian();
    v.normalize();
    const double value = f(v);
    if (static_cast<int>(top.size()) < kKeep) {
      top.emplace_back(value, v);
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
    } else if (value > top.back().first) {
      top.back() = {value, v};
      std::sort(top.begin(), top.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
    }
  }

  // Stage 2: polish each survivor.
  OracleResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (auto& [value, candidate] : top) {
    const double polished = polish(f, candidate, value);
    if (polished > best.value) {
      best.value = polished;
      best.v = candidate;
    }
  }
  best.evaluations = f.evaluations();
  return best;
}

}  // namespace secprec
