#pragma once

#include "secprec/gpi.hpp"

namespace secprec {

struct LineSearchSettings {
  double xi_step = 0.05;  // grid 0, step, 2*step, ..., covering [0, 1]
};

struct SolverSettings {
  GpiSettings gpi;
  LineSearchSettings line;
  // Algorithm 2 carries the previous grid point's direction into the next GPI
  // call; disable to re-initialize every grid point instead.
  bool warm_start = true;
  // Optional online search over the smoothing temperature: each candidate
  // alpha runs the full solver and the best exact secrecy wins. Empty means
  // "use config.alpha".
  std::vector<double> alpha_grid;
};

struct SolverResult {
  CMat precoder;   // N x K
  CMat an_factor;  // N x J (empty when the solver carries no AN)
  double power_split = 0.0;  // ||an_factor||_F^2 of the unit-power design
  double xi_selected = 0.0;  // line-search solvers only
  double alpha_used = 0.0;
  int iterations = 0;        // total GPI iterations spent
  bool converged = true;
  std::vector<GpiTracePoint> trace;  // of the winning GPI run
  RateReport report;

  std::vector<double> objective_trace() const;
  double total_power() const { return precoder.squaredNorm() + an_factor.squaredNorm(); }
};

// ZF precoder columns (MRT when K > N makes ZF undefined) stacked with a
// unit-power AN seed: null-space columns first, identity columns as padding
// when J exceeds the null-space dimension — AN slices must start nonzero
// because the block-diagonal GPI map leaves an all-zero slice at zero
// forever. Result is unit norm with half the power in AN (when J > 0).
CVec initial_stacked_design(const ChannelRealization& channels, const SystemConfig& config);

// First j_cols columns of an orthonormal basis of null(H^H), via the full
// SVD of H. Columns beyond the null-space dimension N-K are zero-padded with
// a warning. Throws SolverError when K >= N.
CMat nullspace_basis(const CMat& h_users, int j_cols);

// Algorithm 1 on the perfect-CSIT families: one GPI run over the stacked
// design, precoder and AN found jointly, no line search.
SolverResult js_gpip(const ChannelRealization& channels, const SystemConfig& config,
                     const SolverSettings& settings);

// Same loop on the covariance-CSIT eavesdropper families; the report is
// scored against the true realization.
SolverResult js_gpip_cov(const ChannelRealization& channels, const SystemConfig& config,
                         const SolverSettings& settings);

// JS-GPIP with the AN stripped (J forced to 0).
SolverResult s_gpip(const ChannelRealization& channels, const SystemConfig& config,
                    const SolverSettings& settings);

// Algorithm 2: per grid point xi, GPI on the NK-dimensional null-space
// reformulation (warm-started), candidate rescaled to (sqrt(1-xi) direction,
// sqrt(xi) AN), argmax of exact clipped secrecy over the grid.
SolverResult j_gpip_ns(const ChannelRealization& channels, const SystemConfig& config,
                       const SolverSettings& settings);

// Algorithm 3: a single GPI run at xi = 0, then a pure power line search over
// xi with the precoder direction frozen.
SolverResult j_gpip_ns_low(const ChannelRealization& channels, const SystemConfig& config,
                           const SolverSettings& settings);

}  // namespace secprec
