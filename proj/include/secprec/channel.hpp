#pragma once

#include <cstdint>
#include <vector>

#include "secprec/config.hpp"

namespace secprec {

// Placement of one terminal relative to the AP at the origin.
struct NodePlacement {
  double x_m = 0.0;
  double y_m = 0.0;
  double distance_m = 0.0;
  double bearing_rad = 0.0;
  double shadowing_db = 0.0;
  double path_gain = 0.0;  // linear power gain, 10^(-loss/10)
};

// Frozen drop geometry: positions plus the per-node covariances (path gain
// folded in) and their Hermitian square roots, so repeated fading draws are
// cheap and share no mutable state.
struct NetworkGeometry {
  SystemConfig config;
  GeometryConfig geometry;
  std::vector<NodePlacement> users;
  std::vector<NodePlacement> eves;
  std::vector<CMat> r_users;
  std::vector<CMat> r_eves;
  std::vector<CMat> r_users_sqrt;
  std::vector<CMat> r_eves_sqrt;
};

// One channel realization. Columns of h_users/g_eves are h_k and g_m; the
// covariances are carried along so rate code can consume a realization
// without the geometry that produced it.
struct ChannelRealization {
  CMat h_users;  // N x K
  CMat g_eves;   // N x M
  std::vector<CMat> r_users;
  std::vector<CMat> r_eves;
};

// One-ring spatial covariance of a ULA: R[p,q] = mean over theta in
// [aoa - spread, aoa + spread] of exp(-j 2 pi spacing (p - q) sin theta),
// by fixed 64-point Gauss-Legendre quadrature. Hermitian Toeplitz with unit
// diagonal, PSD by construction (positively weighted sum of steering outer
// products).
CMat one_ring_covariance(int n_antennas, double aoa_rad, double spread_rad, double spacing_wl);

// ITU-R style indoor propagation loss in dB:
//   20 log10(f_MHz) + coefficient * log10(d_m) - 28 + shadowing.
double path_loss_db(double distance_m, const GeometryConfig& geometry, double shadowing_db);

// Hermitian PSD square root via eigendecomposition (negative eigenvalues from
// roundoff are clamped to zero).
CMat hermitian_sqrt(const CMat& r);

// Draws placements, shadowing and covariances for one drop. Deterministic in
// (config, geometry, seed); every node consumes its own RNG stream, so e.g.
// eavesdropper placements are unchanged by K or M edits that do not touch
// their index.
NetworkGeometry place_network(const SystemConfig& config, const GeometryConfig& geometry,
                              std::uint64_t seed);

// Fading draw on a frozen geometry: column = R^{1/2} w with w ~ CN(0, I).
ChannelRealization draw_channels(const NetworkGeometry& net, std::uint64_t seed);

// place_network + draw_channels under one seed; the usual entry point for a
// Monte-Carlo drop.
ChannelRealization drop_network(const SystemConfig& config, const GeometryConfig& geometry,
                                std::uint64_t seed);

}  // namespace secprec
