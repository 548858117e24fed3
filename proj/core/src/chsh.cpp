#include "bellsim/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bellsim/optimize.hpp"

namespace bellsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kValueTieTol = 1e-9;
constexpr double kAngleTieTol = 1e-12;

// Preference order used to pick one representative among equal-value grid
// maxima: smaller magnitude first, positive sign first.
bool angle_preferred(double candidate, double incumbent) {
  const double mc = std::abs(candidate);
  const double mi = std::abs(incumbent);
  if (mc < mi - kAngleTieTol) return true;
  if (mc > mi + kAngleTieTol) return false;
  return candidate > incumbent + kAngleTieTol;
}

bool angle_equivalent(double a, double b) {
  return std::abs(a - b) <= kAngleTieTol;
}

Eigen::Vector2d direction(double angle) {
  // (x, z) components of the observable's Bloch vector.
  return {std::sin(2.0 * angle), std::cos(2.0 * angle)};
}

std::vector<double> axis_grid(int points) {
  if (points < 2) throw std::invalid_argument("grid_points must be at least 2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = kPi / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = -kPi / 2.0 + step * i;
  }
  return grid;
}

}  // namespace

double normalize_angle(double angle) {
  double r = std::remainder(angle, kPi);
  if (r >= kPi / 2.0) r -= kPi;
  return r;
}

ChshSettings ChshSettings::restricted(double theta, double phi) {
  ChshSettings s;
  s.mode_ = SettingsMode::Restricted;
  s.theta_ = normalize_angle(theta);
  s.phi_ = normalize_angle(phi);
  s.angles_ = {0.0, s.theta_, s.phi_, normalize_angle(s.phi_ - s.theta_)};
  return s;
}

ChshSettings ChshSettings::symmetric(double theta, double phi) {
  ChshSettings s;
  s.mode_ = SettingsMode::Symmetric;
  s.theta_ = normalize_angle(theta);
  s.phi_ = normalize_angle(phi);
  s.angles_ = {0.0, s.theta_, s.phi_, normalize_angle(-s.phi_)};
  return s;
}

ChshSettings ChshSettings::general(double a0, double a1, double b0, double b1) {
  ChshSettings s;
  s.mode_ = SettingsMode::General;
  s.angles_ = {normalize_angle(a0), normalize_angle(a1), normalize_angle(b0),
               normalize_angle(b1)};
  return s;
}

double ChshSettings::theta() const {
  if (!has_angle_pair()) {
    throw std::logic_error("theta() requires a two-parameter settings family");
  }
  return theta_;
}

double ChshSettings::phi() const {
  if (!has_angle_pair()) {
    throw std::logic_error("phi() requires a two-parameter settings family");
  }
  return phi_;
}

Matrix2c observable(double angle) {
  return std::cos(2.0 * angle) * pauli(PauliAxis::Z) +
         std::sin(2.0 * angle) * pauli(PauliAxis::X);
}

double correlation(const DensityMatrix& rho, double a, double b) {
  const Matrix4c op = tensor(observable(a), observable(b));
  return (rho.matrix() * op).trace().real();
}

BellResult bell_value(const DensityMatrix& rho, const ChshSettings& s) {
  const auto& a = s.angles();
  BellResult result;
  result.settings = s;
  result.value = correlation(rho, a[0], a[2]) + correlation(rho, a[0], a[3]) +
                 correlation(rho, a[1], a[2]) - correlation(rho, a[1], a[3]);
  result.violation = std::abs(result.value) > 2.0;
  return result;
}

double beta_analytic(double p, double theta, double phi) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("beta_analytic: p must lie in [0, 1]");
  }
  const double s2t = std::sin(2.0 * theta);
  const double c2t = std::cos(2.0 * theta);
  return std::cos(2.0 * phi) * ((1.0 + p) * s2t * s2t + 2.0 * c2t) +
         std::sin(2.0 * phi) * (1.0 + p) * s2t * (1.0 - c2t);
}

double beta_symmetric(double p, double theta, double phi) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("beta_symmetric: p must lie in [0, 1]");
  }
  return 2.0 * std::cos(2.0 * phi) +
         2.0 * p * std::sin(2.0 * theta) * std::sin(2.0 * phi);
}

Eigen::Matrix3d pauli_correlation_matrix(const DensityMatrix& rho) {
  static const std::array<PauliAxis, 3> axes = {PauliAxis::X, PauliAxis::Y,
                                                PauliAxis::Z};
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Matrix4c op = tensor(pauli(axes[static_cast<std::size_t>(i)]),
                                 pauli(axes[static_cast<std::size_t>(j)]));
      t(i, j) = (rho.matrix() * op).trace().real();
    }
  }
  return t;
}

double horodecki_bound_from_t(const Eigen::Matrix3d& t) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(t);
  const auto& s = svd.singularValues();
  return 2.0 * std::sqrt(s(0) * s(0) + s(1) * s(1));
}

double horodecki_bound(const DensityMatrix& rho) {
  return horodecki_bound_from_t(pauli_correlation_matrix(rho));
}

BellResult maximize_restricted(double p, const MaximizeOptions& opts) {
  const auto grid = axis_grid(opts.grid_points);

  double best_value = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (double theta : grid) {
    for (double phi : grid) {
      const double value = beta_symmetric(p, theta, phi);
      bool take = false;
      if (value > best_value + kValueTieTol) {
        take = true;
      } else if (value >= best_value - kValueTieTol) {
        if (!angle_equivalent(theta, best_theta)) {
          take = angle_preferred(theta, best_theta);
        } else {
          take = angle_preferred(phi, best_phi);
        }
      }
      if (take) {
        best_value = value;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  const double step = 0.5 * kPi / static_cast<double>(opts.grid_points - 1);
  const std::array<double, 2> start = {best_theta, best_phi};
  const auto refined = nelder_mead_maximize(
      [p](std::span<const double> x) { return beta_symmetric(p, x[0], x[1]); },
      start, step, opts.value_tol, opts.x_tol, opts.max_evaluations);

  const auto settings = ChshSettings::symmetric(refined.x[0], refined.x[1]);
  BellResult result;
  result.settings = settings;
  result.value = beta_symmetric(p, settings.theta(), settings.phi());
  result.violation = std::abs(result.value) > 2.0;
  return result;
}

BellResult maximize_general(const DensityMatrix& rho, const MaximizeOptions& opts) {
  const Eigen::Matrix3d t = pauli_correlation_matrix(rho);
  Eigen::Matrix2d k;  // (x, z) block; the searched observables live there
  k << t(0, 0), t(0, 2), t(2, 0), t(2, 2);

  const auto grid = axis_grid(opts.grid_points);
  double best_score = -std::numeric_limits<double>::infinity();
  double best_a0 = 0.0;
  double best_a1 = 0.0;
  Eigen::Vector2d best_w0 = Eigen::Vector2d::UnitY();
  Eigen::Vector2d best_w1 = Eigen::Vector2d::UnitY();
  for (double a0 : grid) {
    const Eigen::Vector2d m0 = direction(a0);
    for (double a1 : grid) {
      const Eigen::Vector2d m1 = direction(a1);
      const Eigen::Vector2d w0 = k.transpose() * (m0 + m1);
      const Eigen::Vector2d w1 = k.transpose() * (m0 - m1);
      const double score = w0.norm() + w1.norm();
      if (score > best_score) {
        best_score = score;
        best_a0 = a0;
        best_a1 = a1;
        best_w0 = w0;
        best_w1 = w1;
      }
    }
  }

  const auto angle_of = [](const Eigen::Vector2d& w) {
    if (w.norm() == 0.0) return 0.0;
    return 0.5 * std::atan2(w(0), w(1));
  };
  const std::vector<double> seed = {best_a0, best_a1, angle_of(best_w0),
                                    angle_of(best_w1)};

  const double step = 0.5 * kPi / static_cast<double>(opts.grid_points - 1);
  const auto refined = nelder_mead_maximize(
      [&rho](std::span<const double> x) {
        return bell_value(rho, ChshSettings::general(x[0], x[1], x[2], x[3]))
            .value;
      },
      seed, step, opts.value_tol, opts.x_tol, opts.max_evaluations);

  return bell_value(
      rho, ChshSettings::general(refined.x[0], refined.x[1], refined.x[2],
                                 refined.x[3]));
}

double violation_threshold(StateFamily family) {
  const auto violates = [family](double p) {
    const DensityMatrix rho =
        family == StateFamily::Colored ? colored_state(p) : werner_state(p);
    return horodecki_bound(rho) > 2.0;
  };
  if (!violates(1.0)) return 1.0;
  if (violates(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (violates(mid) ? hi : lo) = mid;
  }
  return hi;
}

BetaSurface beta_surface(double p, std::span<const double> theta_grid,
                         std::span<const double> phi_grid) {
  const auto check = [](std::span<const double> g, const char* name) {
    if (g.empty()) {
      throw std::invalid_argument(std::string(name) + " grid is empty");
    }
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (!(g[i] > g[i - 1])) {
        throw std::invalid_argument(std::string(name) +
                                    " grid must be strictly increasing");
      }
    }
  };
  check(theta_grid, "theta");
  check(phi_grid, "phi");

  BetaSurface surface;
  surface.theta.assign(theta_grid.begin(), theta_grid.end());
  surface.phi.assign(phi_grid.begin(), phi_grid.end());
  surface.values.resize(static_cast<Eigen::Index>(theta_grid.size()),
                        static_cast<Eigen::Index>(phi_grid.size()));
  for (Eigen::Index i = 0; i < surface.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < surface.values.cols(); ++j) {
      surface.values(i, j) =
          beta_analytic(p, theta_grid[static_cast<std::size_t>(i)],
                        phi_grid[static_cast<std::size_t>(j)]);
    }
  }
  return surface;
}

}  // namespace bellsim
