#include "secprec/channel.hpp"

#include <algorithm>
#include <cmath>

#include "secprec/rng.hpp"

namespace secprec {

void SystemConfig::validate() const {
  if (n_antennas < 1) throw ParameterError("SystemConfig: n_antennas must be >= 1");
  if (n_users < 1) throw ParameterError("SystemConfig: n_users must be >= 1");
  if (n_eves < 0) throw ParameterError("SystemConfig: n_eves must be >= 0");
  if (n_an_cols < 0) throw ParameterError("SystemConfig: n_an_cols must be >= 0");
  if (n_an_cols > n_antennas)
    throw ParameterError("SystemConfig: n_an_cols must not exceed n_antennas");
  if (!(alpha > 0.0)) throw ParameterError("SystemConfig: alpha must be positive");
  if (!(bandwidth_hz > 0.0)) throw ParameterError("SystemConfig: bandwidth_hz must be positive");
  if (!std::isfinite(tx_power_dbm)) throw ParameterError("SystemConfig: tx_power_dbm not finite");
}

void GeometryConfig::validate() const {
  if (!(user_dist_min_m > 0.0) || !(user_dist_min_m < user_dist_max_m))
    throw ParameterError("GeometryConfig: need 0 < user_dist_min_m < user_dist_max_m");
  if (!(eve_dist_max_m > 0.0)) throw ParameterError("GeometryConfig: eve_dist_max_m must be > 0");
  if (!(carrier_ghz > 0.0)) throw ParameterError("GeometryConfig: carrier_ghz must be > 0");
  if (!(angular_spread_deg > 0.0) || angular_spread_deg > 90.0)
    throw ParameterError("GeometryConfig: angular_spread_deg must lie in (0, 90]");
  if (shadowing_var_db < 0.0)
    throw ParameterError("GeometryConfig: shadowing_var_db must be >= 0");
  if (!(min_dist_m > 0.0)) throw ParameterError("GeometryConfig: min_dist_m must be > 0");
}

std::pair<double, double> sigma_over_p(const SystemConfig& config) {
  const double ratio = config.noise_power_watt() / config.tx_power_watt();
  return {ratio, ratio};
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

const Quadrature& gl64() {
  static const Quadrature q = gauss_legendre(64);
  return q;
}

}  // namespace

CMat one_ring_covariance(int n_antennas, double aoa_rad, double spread_rad, double spacing_wl) {
  if (n_antennas < 1) throw ParameterError("one_ring_covariance: n_antennas must be >= 1");
  if (!(spread_rad > 0.0) || spread_rad > kPi / 2.0)
    throw ParameterError("one_ring_covariance: angular spread must lie in (0, pi/2]");
  const Quadrature& q = gl64();

  // Toeplitz: only the N lags are integrated. Normalizing by the weight sum
  // (rather than 2*spread) makes the diagonal exactly one.
  double wsum = 0.0;
  for (double w : q.weights) wsum += w;
  std::vector<cd> lag(n_antennas, cd(0.0, 0.0));
  for (size_t i = 0; i < q.nodes.size(); ++i) {
    const double theta = aoa_rad + spread_rad * q.nodes[i];
    const double phase = -2.0 * kPi * spacing_wl * std::sin(theta);
    const double w = q.weights[i] / wsum;
    for (int l = 0; l < n_antennas; ++l) lag[l] += w * std::polar(1.0, phase * l);
  }
  CMat r(n_antennas, n_antennas);
  for (int p = 0; p < n_antennas; ++p)
    for (int qi = 0; qi < n_antennas; ++qi)
      r(p, qi) = p >= qi ? lag[p - qi] : std::conj(lag[qi - p]);
  return r;
}

double path_loss_db(double distance_m, const GeometryConfig& geometry, double shadowing_db) {
  if (!(distance_m > 0.0)) throw ParameterError("path_loss_db: distance must be positive");
  const double f_mhz = geometry.carrier_ghz * 1000.0;
  return 20.0 * std::log10(f_mhz) + geometry.path_loss_coefficient * std::log10(distance_m) -
         28.0 + shadowing_db;
}

CMat hermitian_sqrt(const CMat& r) {
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_sqrt: eigensolver failed");
  RVec d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) d(i) = d(i) > 0.0 ? std::sqrt(d(i)) : 0.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

NodePlacement finish_placement(double x, double y, double shadowing_db,
                               const GeometryConfig& geometry) {
  NodePlacement p;
  p.x_m = x;
  p.y_m = y;
  // Clamp to the model's validity floor so an eavesdropper sitting on top of
  // the AP cannot produce a negative-loss channel.
  p.distance_m = std::max(geometry.min_dist_m, std::hypot(x, y));
  p.bearing_rad = std::atan2(y, x);
  p.shadowing_db = shadowing_db;
  p.path_gain = db_to_linear(-path_loss_db(p.distance_m, geometry, shadowing_db));
  return p;
}

}  // namespace

NetworkGeometry place_network(const SystemConfig& config, const GeometryConfig& geometry,
                              std::uint64_t seed) {
  config.validate();
  geometry.validate();
  NetworkGeometry net;
  net.config = config;
  net.geometry = geometry;

  const double spread = geometry.angular_spread_deg * kPi / 180.0;
  const double shadow_std = std::sqrt(geometry.shadowing_var_db);
  const double r2min = geometry.user_dist_min_m * geometry.user_dist_min_m;
  const double r2max = geometry.user_dist_max_m * geometry.user_dist_max_m;

  net.users.reserve(config.n_users);
  for (int k = 0; k < config.n_users; ++k) {
    Philox pos(seed, streams::id(streams::kUserPosition, k));
    // Uniform over the annulus: radius from the inverse-CDF of r^2, then angle.
    const double radius = std::sqrt(r2min + pos.uniform() * (r2max - r2min));
    const double angle = 2.0 * kPi * pos.uniform();
    Philox sh(seed, streams::id(streams::kUserShadowing, k));
    net.users.push_back(finish_placement(radius * std::cos(angle), radius * std::sin(angle),
                                         shadow_std * sh.gaussian(), geometry));
  }
  net.eves.reserve(config.n_eves);
  for (int m = 0; m < config.n_eves; ++m) {
    Philox pos(seed, streams::id(streams::kEvePosition, m));
    // Anchor user chosen uniformly, then a uniform disc offset around it.
    const int anchor = std::min(config.n_users - 1,
                                static_cast<int>(pos.uniform() * config.n_users));
    const double rho = geometry.eve_dist_max_m * std::sqrt(pos.uniform());
    const double phi = 2.0 * kPi * pos.uniform();
    Philox sh(seed, streams::id(streams::kEveShadowing, m));
    net.eves.push_back(finish_placement(net.users[anchor].x_m + rho * std::cos(phi),
                                        net.users[anchor].y_m + rho * std::sin(phi),
                                        shadow_std * sh.gaussian(), geometry));
  }

  auto covariances = [&](const std::vector<NodePlacement>& nodes, std::vector<CMat>& r,
                         std::vector<CMat>& r_sqrt) {
    r.reserve(nodes.size());
    r_sqrt.reserve(nodes.size());
    for (const NodePlacement& p : nodes) {
      CMat cov = p.path_gain * one_ring_covariance(config.n_antennas, p.bearing_rad, spread,
                                                   geometry.antenna_spacing_wl);
      r.push_back(cov);
      r_sqrt.push_back(hermitian_sqrt(cov));
    }
  };
  covariances(net.users, net.r_users, net.r_users_sqrt);
  covariances(net.eves, net.r_eves, net.r_eves_sqrt);
  return net;
}

ChannelRealization draw_channels(const NetworkGeometry& net, std::uint64_t seed) {
  const int n = net.config.n_antennas;
  ChannelRealization ch;
  ch.h_users.resize(n, net.config.n_users);
  ch.g_eves.resize(n, net.config.n_eves);
  ch.r_users = net.r_users;
  ch.r_eves = net.r_eves;

  CVec w(n);
  for (int k = 0; k < net.config.n_users; ++k) {
    Philox gen(seed, streams::id(streams::kUserFading, k));
    for (int i = 0; i < n; ++i) w(i) = gen.cgaussian();
    ch.h_users.col(k) = net.r_users_sqrt[k] * w;
  }
  for (int m = 0; m < net.config.n_eves; ++m) {
    Philox gen(seed, streams::id(streams::kEveFading, m));
    for (int i = 0; i < n; ++i) w(i) = gen.cgaussian();
    ch.g_eves.col(m) = net.r_eves_sqrt[m] * w;
  }
  return ch;
}

ChannelRealization drop_network(const SystemConfig& config, const GeometryConfig& geometry,
                                std::uint64_t seed) {
  return draw_channels(place_network(config, geometry, seed), seed);
}

}  // namespace secprec
