#include "secprec/blockdiag.hpp"

namespace secprec {

BlockDiagHermitian::BlockDiagHermitian(int n_blocks, int block_dim) : block_dim_(block_dim) {
  if (n_blocks < 1 || block_dim < 1)
    throw ParameterError("BlockDiagHermitian: need at least one block of positive dimension");
  blocks_.assign(static_cast<size_t>(n_blocks), CMat::Zero(block_dim, block_dim));
}

void BlockDiagHermitian::add_scaled(const BlockDiagHermitian& other, double w) {
  if (other.block_count() != block_count() || other.block_dim_ != block_dim_)
    throw ParameterError("BlockDiagHermitian::add_scaled: layout mismatch");
  for (int i = 0; i < block_count(); ++i) blocks_[i] += w * other.blocks_[i];
  identity_shift_ += w * other.identity_shift_;
}

double BlockDiagHermitian::quad_form(const CVec& v) const {
  if (v.size() != dim()) throw ParameterError("BlockDiagHermitian::quad_form: size mismatch");
  double acc = 0.0;
  for (int i = 0; i < block_count(); ++i) {
    const auto seg = v.segment(i * block_dim_, block_dim_);
    acc += std::real(seg.dot(blocks_[i] * seg));  // .dot conjugates its caller
  }
  return acc + identity_shift_ * v.squaredNorm();
}

CVec BlockDiagHermitian::apply(const CVec& v) const {
  if (v.size() != dim()) throw ParameterError("BlockDiagHermitian::apply: size mismatch");
  CVec out(v.size());
  for (int i = 0; i < block_count(); ++i) {
    const auto seg = v.segment(i * block_dim_, block_dim_);
    out.segment(i * block_dim_, block_dim_) = blocks_[i] * seg + identity_shift_ * seg;
  }
  return out;
}

CMat BlockDiagHermitian::to_dense() const {
  CMat out = CMat::Zero(dim(), dim());
  for (int i = 0; i < block_count(); ++i)
    out.block(i * block_dim_, i * block_dim_, block_dim_, block_dim_) = blocks_[i];
  out += identity_shift_ * CMat::Identity(dim(), dim());
  return out;
}

bool BlockDiagHermitian::is_hermitian(double tol) const {
  for (const CMat& b : blocks_)
    if ((b - b.adjoint()).norm() > tol) return false;
  return true;
}

CVec blockdiag_solve(const BlockDiagHermitian& m, const CVec& rhs) {
  if (rhs.size() != m.dim()) throw ParameterError("blockdiag_solve: size mismatch");
  const int bd = m.block_dim();
  CVec x(rhs.size());
  CMat shifted(bd, bd);
  for (int i = 0; i < m.block_count(); ++i) {
    shifted = m.block(i);
    shifted.diagonal().array() += m.identity_shift();
    Eigen::LLT<CMat> llt(shifted);
    if (llt.info() != Eigen::Success)
      throw DecompositionError("blockdiag_solve: block is not positive definite", i);
    x.segment(i * bd, bd) = llt.solve(rhs.segment(i * bd, bd));
  }
  return x;
}

}  // namespace secprec
