#include "secprec/design.hpp"

namespace secprec {

StackedDesign StackedDesign::stack(const CMat& precoder, const CMat& an_factor) {
  if (precoder.cols() < 1) throw ParameterError("StackedDesign: need at least one precoder column");
  if (an_factor.size() > 0 && an_factor.rows() != precoder.rows())
    throw ParameterError("StackedDesign: precoder/AN row mismatch");
  StackedDesign d;
  d.n_antennas = static_cast<int>(precoder.rows());
  d.n_users = static_cast<int>(precoder.cols());
  d.n_an_cols = static_cast<int>(an_factor.cols());
  d.v.resize(d.dim());
  for (int k = 0; k < d.n_users; ++k) d.v.segment(k * d.n_antennas, d.n_antennas) = precoder.col(k);
  for (int j = 0; j < d.n_an_cols; ++j)
    d.v.segment((d.n_users + j) * d.n_antennas, d.n_antennas) = an_factor.col(j);
  return d;
}

StackedDesign StackedDesign::from_vector(CVec v, int n_antennas, int n_users, int n_an_cols) {
  if (v.size() != static_cast<Eigen::Index>(n_antennas) * (n_users + n_an_cols))
    throw ParameterError("StackedDesign: vector length does not match layout");
  StackedDesign d;
  d.v = std::move(v);
  d.n_antennas = n_antennas;
  d.n_users = n_users;
  d.n_an_cols = n_an_cols;
  return d;
}

CMat StackedDesign::precoder() const {
  CMat f(n_antennas, n_users);
  for (int k = 0; k < n_users; ++k) f.col(k) = slice(k);
  return f;
}

CMat StackedDesign::an_factor() const {
  CMat phi(n_antennas, n_an_cols);
  for (int j = 0; j < n_an_cols; ++j) phi.col(j) = slice(n_users + j);
  return phi;
}

double StackedDesign::power_split() const {
  double an = 0.0;
  for (int j = 0; j < n_an_cols; ++j) an += slice(n_users + j).squaredNorm();
  return an;
}

}  // namespace secprec
