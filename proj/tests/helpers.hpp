#pragma once

#include <cstdint>

#include "secprec/channel.hpp"
#include "secprec/design.hpp"
#include "secprec/rng.hpp"

namespace testutil {

using namespace secprec;

// Unit vector with i.i.d. CN(0,1) entries; deterministic in the seed.
inline CVec random_unit(int dim, std::uint64_t seed) {
  Philox gen(seed, 0);
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = gen.cgaussian();
  return v.normalized();
}

inline CMat random_cmat(int rows, int cols, std::uint64_t seed) {
  Philox gen(seed, 1);
  CMat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = gen.cgaussian();
  return m;
}

inline SystemConfig make_config(int n, int k, int m, int j, double p_dbm = 20.0,
                                double alpha = 0.3) {
  SystemConfig c;
  c.n_antennas = n;
  c.n_users = k;
  c.n_eves = m;
  c.n_an_cols = j;
  c.tx_power_dbm = p_dbm;
  c.alpha = alpha;
  return c;
}

// Noise chain tuned so sigma^2 = P = 1 W: scalar examples stay readable.
inline SystemConfig unit_noise_config(int n, int k, int m, int j) {
  SystemConfig c = make_config(n, k, m, j, 30.0);
  c.noise_psd_dbm_hz = -45.0;  // -45 + 10 log10(1e7) + 5 = 30 dBm = 1 W
  return c;
}

inline ChannelRealization drop(const SystemConfig& config, std::uint64_t seed) {
  return drop_network(config, GeometryConfig{}, seed);
}

// Hand-rolled realization (bypasses the drop model); covariances only filled
// for the eavesdroppers, which is all the matrix builders ever read.
inline ChannelRealization manual_channels(const CMat& h_users, const CMat& g_eves) {
  ChannelRealization ch;
  ch.h_users = h_users;
  ch.g_eves = g_eves;
  for (Eigen::Index m = 0; m < g_eves.cols(); ++m)
    ch.r_eves.push_back(g_eves.col(m) * g_eves.col(m).adjoint());
  return ch;
}

inline double real_cosine(const CVec& a, const CVec& b) {
  return (a.dot(b)).real() / (a.norm() * b.norm());
}

}  // namespace testutil
