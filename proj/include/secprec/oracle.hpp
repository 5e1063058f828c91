#pragma once

#include <cstdint>

#include "secprec/rates.hpp"

namespace secprec {

enum class OracleObjective {
  clipped_secrecy,     // exact sum secrecy, Eq.-(7)-style clipping
  smoothed_surrogate,  // the LogSumExp objective at config.alpha
};

struct OracleResult {
  CVec v;              // best unit design found
  double value = 0.0;  // objective at v; a lower bound on the true optimum
  int evaluations = 0;
};

// Brute-force search over the unit sphere of stacked designs: a large random
// sample followed by projected-gradient polish (finite differences) of the
// best candidates. Independent of the solver stack by construction — it only
// uses the exact rate formulas. Guarded to N(K+J) <= 4 complex dimensions;
// the returned value is a certified lower bound on the optimum, not a proof
// of optimality.
OracleResult brute_force_secrecy(const ChannelRealization& channels, const SystemConfig& config,
                                 int resolution,
                                 OracleObjective objective = OracleObjective::clipped_secrecy,
                                 std::uint64_t seed = 12345);

}  // namespace secprec
