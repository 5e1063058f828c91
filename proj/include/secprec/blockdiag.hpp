#pragma once

#include <vector>

#include "secprec/common.hpp"

namespace secprec {

// Hermitian matrix of the form blkdiag(M_1, ..., M_B) + shift * I with equal
// block sizes. Every Rayleigh-quotient matrix in the KKT machinery has this
// shape, so quadratic forms, mat-vecs and solves all run block-wise instead
// of touching the (B*n)^2 dense representation.
class BlockDiagHermitian {
 public:
  BlockDiagHermitian() = default;
  BlockDiagHermitian(int n_blocks, int block_dim);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_dim() const { return block_dim_; }
  int dim() const { return block_count() * block_dim_; }

  CMat& block(int i) { return blocks_[static_cast<size_t>(i)]; }
  const CMat& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
  double& identity_shift() { return identity_shift_; }
  double identity_shift() const { return identity_shift_; }

  // blocks += w * other.blocks, shift += w * other.shift. The main assembly
  // primitive; requires matching layout.
  void add_scaled(const BlockDiagHermitian& other, double w);

  // Re(v^H M v); exact real for Hermitian blocks.
  double quad_form(const CVec& v) const;

  CVec apply(const CVec& v) const;

  CMat to_dense() const;

  bool is_hermitian(double tol) const;

 private:
  std::vector<CMat> blocks_;
  int block_dim_ = 0;
  double identity_shift_ = 0.0;
};

// Solves (blkdiag + shift I) x = rhs by per-block LLT. Throws
// DecompositionError (with the offending block index) if a block is not
// positive definite.
CVec blockdiag_solve(const BlockDiagHermitian& m, const CVec& rhs);

}  // namespace secprec
