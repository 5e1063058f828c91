#pragma once

#include "secprec/solvers.hpp"

namespace secprec {

enum class BaselineAlgo { mrt, zf, rzf, rzf_eve, gpip };

struct BaselineKind {
  BaselineAlgo algo = BaselineAlgo::zf;
  bool null_space_an = false;  // append the xi line search over null-space AN
};

// Unit-total-power linear precoders. MRT: matched columns; ZF: H(H^H H)^{-1};
// RZF: MMSE-style loading K sigma^2/P; RZF-EVE: RZF on [H, G_sel] with the
// min(N-K, M) strongest eavesdroppers appended and their columns discarded.
CMat linear_precoder(BaselineAlgo algo, const ChannelRealization& channels,
                     const SystemConfig& config);

// Wraps a fixed precoder direction with the Algorithm-3-style power line
// search over null-space AN: candidates (sqrt(1-xi) F, sqrt(xi) phi_hat),
// argmax of exact clipped secrecy.
SolverResult ns_extension(const CMat& precoder, const ChannelRealization& channels,
                          const SystemConfig& config, const LineSearchSettings& line);

// Sum-rate GPI ignoring eavesdroppers entirely (no AN); secrecy is whatever
// falls out when the design is scored on the full channel.
SolverResult gpip_baseline(const ChannelRealization& channels, const SystemConfig& config,
                           const SolverSettings& settings);

SolverResult run_baseline(BaselineKind kind, const ChannelRealization& channels,
                          const SystemConfig& config, const SolverSettings& settings);

}  // namespace secprec
