#pragma once

#include <utility>

#include "secprec/common.hpp"

namespace secprec {

// System-level parameters of one operating point: array size, population
// sizes, transmit power, the noise chain, and the smoothing temperature used
// by the GPI solvers. Everything downstream works with the ratio sigma^2/P,
// exposed by noise_over_power().
struct SystemConfig {
  int n_antennas = 4;  // N
  int n_users = 1;     // K
  int n_eves = 0;      // M
  int n_an_cols = 0;   // J (columns of the artificial-noise factor)

  double tx_power_dbm = 20.0;
  double noise_psd_dbm_hz = -174.0;  // thermal noise density
  double bandwidth_hz = 1e7;
  double noise_figure_db = 5.0;

  double alpha = 0.3;  // LogSumExp smoothing temperature

  double tx_power_watt() const { return dbm_to_watt(tx_power_dbm); }
  double noise_power_watt() const {
    return dbm_to_watt(noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
  }

  int stacked_dim() const { return n_antennas * (n_users + n_an_cols); }

  void validate() const;
};

// sigma^2/P for the users and the eavesdroppers, in that order. Both receiver
// populations run the same RF chain here, so the two entries coincide; they
// are kept separate so the rate code never has to assume it.
std::pair<double, double> sigma_over_p(const SystemConfig& config);

// Geometry and propagation parameters of the drop model. The access point
// sits at the origin; users are placed uniformly over an annulus, and each
// eavesdropper lurks within eve_dist_max_m of a uniformly chosen user.
struct GeometryConfig {
  double user_dist_min_m = 5.0;
  double user_dist_max_m = 50.0;
  double eve_dist_max_m = 5.0;
  double min_dist_m = 1.0;  // path-loss model validity floor

  double carrier_ghz = 5.0;
  double path_loss_coefficient = 30.0;  // multiplies log10(distance)
  double shadowing_var_db = 10.0;       // lognormal shadowing variance, dB^2

  double angular_spread_deg = 10.0;  // one-ring half-spread
  double antenna_spacing_wl = 0.5;   // ULA spacing in wavelengths

  void validate() const;
};

}  // namespace secprec
