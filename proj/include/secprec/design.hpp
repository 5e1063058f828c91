#pragma once

#include "secprec/common.hpp"

namespace secprec {

// The stacked design vector v = [f_1; ...; f_K; phi_1; ...; phi_J] of
// precoder and artificial-noise columns. The unit-power constraint of the
// original problem is ||v|| = 1; slices index into v without copying.
struct StackedDesign {
  CVec v;
  int n_antennas = 0;
  int n_users = 0;
  int n_an_cols = 0;

  static StackedDesign stack(const CMat& precoder, const CMat& an_factor);
  static StackedDesign from_vector(CVec v, int n_antennas, int n_users, int n_an_cols);

  int dim() const { return n_antennas * (n_users + n_an_cols); }

  // Slice s in [0, K+J): f_s for s < K, otherwise phi_{s-K}.
  auto slice(int s) const { return v.segment(s * n_antennas, n_antennas); }

  CMat precoder() const;   // N x K
  CMat an_factor() const;  // N x J

  // Fraction of total design power in the AN columns (a fraction only when
  // ||v|| = 1, which solvers maintain).
  double power_split() const;
};

}  // namespace secprec
