#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bellsim/states.hpp"

namespace bellsim {

/// Pump bandwidth (rad/fs) of a transform-limited Gaussian pulse of the
/// given intensity FWHM duration: sigma_p = 2 sqrt(2 ln 2) / dt_fwhm.
double sigma_p_from_fwhm(double dt_fwhm_fs);

/// Lambda_p = 1/u_p - (1/u_o + 1/u_e)/2 and D_G = 1/u_o - 1/u_e from the
/// three group velocities (mm/fs). Any velocity <= 0 is a domain error.
std::pair<double, double> derive_dispersion(double u_p, double u_o, double u_e);

/// Unit window: 1 if |x| < 1/2 (strict), else 0.
double rect(double x);

/// Crystal and pump parameters of the timing-compensated pair source.
/// Units: femtoseconds and millimeters. The dimensionless kappa
/// = sigma_p * lambda_p * length is what the delay profile actually
/// depends on, so it can be supplied directly in place of the
/// (sigma_p, lambda_p) pair.
class SourceParams {
 public:
  static SourceParams from_pump(double length_mm, double d_g_fs_per_mm,
                                double lambda_p_fs_per_mm,
                                double sigma_p_rad_per_fs);
  static SourceParams from_kappa(double length_mm, double d_g_fs_per_mm,
                                 double kappa);

  double length_mm() const { return length_mm_; }
  double d_g_fs_per_mm() const { return d_g_; }
  double kappa() const { return kappa_; }

  /// Half-width |D_G L| / 2 (fs) of the delay window.
  double window_half_width_fs() const;

 private:
  SourceParams() = default;
  double length_mm_ = 0.0;
  double d_g_ = 0.0;
  double kappa_ = 0.0;
};

/// Bell-state weight at trombone delay tau: with x = tau / (D_G L),
/// rect(x) * (1 - 2|x|) * exp(-2 kappa^2 x^2). Even in tau, 1 at tau = 0,
/// 0 at and beyond the window edge.
double p_of_tau(double tau_fs, const SourceParams& params);

/// Smallest non-negative delay with p_of_tau(tau) = p_target, by bisection
/// on [0, |D_G L|/2] until the bracket collapses, so the delay is exact to
/// an ulp even near the window edge where dp/dtau vanishes. Requires
/// 0 < p_target <= 1.
double tau_for_p(double p_target, const SourceParams& params);

/// colored_state(p_of_tau(tau)).
DensityMatrix state_at_delay(double tau_fs, const SourceParams& params);

struct DelayPoint {
  double tau_fs = 0.0;
  double p = 0.0;
};

/// p_of_tau applied elementwise; preserves order and length.
std::vector<DelayPoint> delay_sweep(std::span<const double> taus_fs,
                                    const SourceParams& params);

}  // namespace bellsim
