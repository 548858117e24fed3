#include "bellsim/source.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bellsim {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string(name) + " must be finite");
  }
}

}  // namespace

double sigma_p_from_fwhm(double dt_fwhm_fs) {
  if (!(dt_fwhm_fs > 0.0)) {
    throw std::domain_error("pulse duration must be positive");
  }
  return 2.0 * std::sqrt(2.0 * std::log(2.0)) / dt_fwhm_fs;
}

std::pair<double, double> derive_dispersion(double u_p, double u_o, double u_e) {
  if (!(u_p > 0.0) || !(u_o > 0.0) || !(u_e > 0.0)) {
    throw std::domain_error("group velocities must be positive");
  }
  const double lambda_p = 1.0 / u_p - 0.5 * (1.0 / u_o + 1.0 / u_e);
  const double d_g = 1.0 / u_o - 1.0 / u_e;
  return {lambda_p, d_g};
}

double rect(double x) {
  require_finite(x, "x");
  return std::abs(x) < 0.5 ? 1.0 : 0.0;
}

SourceParams SourceParams::from_pump(double length_mm, double d_g_fs_per_mm,
                                     double lambda_p_fs_per_mm,
                                     double sigma_p_rad_per_fs) {
  require_finite(lambda_p_fs_per_mm, "lambda_p");
  if (!(sigma_p_rad_per_fs >= 0.0)) {
    throw std::domain_error("sigma_p must be non-negative");
  }
  return from_kappa(length_mm, d_g_fs_per_mm,
                    sigma_p_rad_per_fs * lambda_p_fs_per_mm * length_mm);
}

SourceParams SourceParams::from_kappa(double length_mm, double d_g_fs_per_mm,
                                      double kappa) {
  if (!(length_mm > 0.0)) {
    throw std::domain_error("crystal length must be positive");
  }
  require_finite(d_g_fs_per_mm, "d_g");
  require_finite(kappa, "kappa");
  SourceParams p;
  p.length_mm_ = length_mm;
  p.d_g_ = d_g_fs_per_mm;
  p.kappa_ = kappa;
  return p;
}

double SourceParams::window_half_width_fs() const {
  return 0.5 * std::abs(d_g_ * length_mm_);
}

double p_of_tau(double tau_fs, const SourceParams& params) {
  require_finite(tau_fs, "tau");
  const double dgl = params.d_g_fs_per_mm() * params.length_mm();
  if (dgl == 0.0) {
    throw std::domain_error("degenerate dispersion: delay map undefined");
  }
  const double x = tau_fs / dgl;
  if (!(std::abs(x) < 0.5)) return 0.0;
  const double k = params.kappa();
  return (1.0 - 2.0 * std::abs(x)) * std::exp(-2.0 * k * k * x * x);
}

double tau_for_p(double p_target, const SourceParams& params) {
  if (!(p_target > 0.0 && p_target <= 1.0)) {
    throw std::domain_error("p_target must lie in (0, 1]");
  }
  double lo = 0.0;
  double hi = params.window_half_width_fs();
  if (hi == 0.0) {
    throw std::domain_error("degenerate dispersion: delay map undefined");
  }
  if (p_target == 1.0) return 0.0;
  // p is continuous and strictly decreasing from 1 to 0 on [lo, hi]. A
  // tolerance on p would leave large tau slack near the edge, where the
  // curve flattens out; run the bracket all the way down instead.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;
    (p_of_tau(mid, params) > p_target ? lo : hi) = mid;
  }
}

DensityMatrix state_at_delay(double tau_fs, const SourceParams& params) {
  return colored_state(p_of_tau(tau_fs, params));
}

std::vector<DelayPoint> delay_sweep(std::span<const double> taus_fs,
                                    const SourceParams& params) {
  std::vector<DelayPoint> points;
  points.reserve(taus_fs.size());
  for (double tau : taus_fs) {
    points.push_back({tau, p_of_tau(tau, params)});
  }
  return points;
}

}  // namespace bellsim
