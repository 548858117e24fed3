#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

#include "bellsim/states.hpp"

namespace bellsim {

/// Wrap an analyzer angle into the canonical range [-pi/2, pi/2). The
/// observables below are pi-periodic, so this loses nothing.
double normalize_angle(double angle);

enum class SettingsMode { Restricted, Symmetric, General };

/// Measurement settings for one CHSH run, all angles radians in the x-z
/// plane, normalized on construction. Two two-parameter families share
/// A0 = Z, A1 = Z(theta), B0 = Z(phi) and differ in the fourth setting:
///
///   restricted: B1 = Z(phi - theta)  (the difference tie of the
///               colored-noise Bell-value formula beta_analytic)
///   symmetric:  B1 = Z(-phi)         (the tie that attains the in-plane
///               CHSH maximum; see maximize_restricted)
///
/// General mode carries four independent angles (a0, a1, b0, b1).
class ChshSettings {
 public:
  static ChshSettings restricted(double theta, double phi);
  static ChshSettings symmetric(double theta, double phi);
  static ChshSettings general(double a0, double a1, double b0, double b1);

  SettingsMode mode() const { return mode_; }
  bool is_restricted() const { return mode_ == SettingsMode::Restricted; }

  /// True for the two-parameter families, whose theta()/phi() are defined.
  bool has_angle_pair() const { return mode_ != SettingsMode::General; }
  double theta() const;
  double phi() const;

  /// The four analyzer angles (a0, a1, b0, b1).
  const std::array<double, 4>& angles() const { return angles_; }

 private:
  ChshSettings() = default;
  SettingsMode mode_ = SettingsMode::General;
  double theta_ = 0.0;
  double phi_ = 0.0;
  std::array<double, 4> angles_{};
};

struct BellResult {
  double value = 0.0;                       // signed Bell operator value
  ChshSettings settings = ChshSettings::restricted(0.0, 0.0);
  bool violation = false;                   // |value| > 2
};

/// Local +-1-valued observable at analyzer angle a:
/// cos(2a) sigma_z + sin(2a) sigma_x.
Matrix2c observable(double angle);

/// <A(a) (x) B(b)> = tr(rho (A (x) B)); real and in [-1, 1].
double correlation(const DensityMatrix& rho, double a, double b);

/// CHSH combination <A0B0> + <A0B1> + <A1B0> - <A1B1> from four
/// correlation evaluations.
BellResult bell_value(const DensityMatrix& rho, const ChshSettings& s);

/// Closed-form Bell operator for the colored-noise family at restricted
/// settings (theta, phi):
///   cos(2phi) [(1+p) sin^2(2theta) + 2 cos(2theta)]
///   + sin(2phi) (1+p) sin(2theta) [1 - cos(2theta)].
double beta_analytic(double p, double theta, double phi);

/// Closed-form Bell operator for the colored-noise family at symmetric
/// settings (theta, phi): 2 cos(2phi) + 2 p sin(2theta) sin(2phi).
/// Its global maximum over the angles is 2 sqrt(1 + p^2), reached at
/// theta = pi/4, tan(2phi) = p; the difference-tie family above stays
/// strictly below that for 0 < p < 1.
double beta_symmetric(double p, double theta, double phi);

/// Pauli correlation matrix T_ij = tr(rho sigma_i (x) sigma_j), i, j over
/// (x, y, z).
Eigen::Matrix3d pauli_correlation_matrix(const DensityMatrix& rho);

/// Maximum CHSH value over all projective qubit measurements:
/// 2 sqrt(t1^2 + t2^2) with t1 >= t2 the two largest singular values of T.
/// Serves as the independent oracle for both maximizers.
double horodecki_bound(const DensityMatrix& rho);
double horodecki_bound_from_t(const Eigen::Matrix3d& t);

struct MaximizeOptions {
  int grid_points = 181;      // coarse samples per axis over [-pi/2, pi/2]
  double value_tol = 1e-10;   // simplex value-spread termination
  double x_tol = 1e-8;        // simplex diameter termination (radians)
  int max_evaluations = 4000;
};

/// Maximum Bell value of colored_state(p) over the A0 = Z in-plane
/// families: maximizes beta_symmetric over (theta, phi) by coarse grid
/// with deterministic tie-breaking (smallest (|theta|, |phi|), positive
/// sign preferred), then simplex refinement. Agrees with
/// horodecki_bound(colored_state(p)) = 2 sqrt(1 + p^2); the result
/// dominates every grid sample and carries symmetric settings.
BellResult maximize_restricted(double p, const MaximizeOptions& opts = {});

/// Maximize bell_value over four independent x-z-plane angles. Seeded by a
/// coarse (a0, a1) grid with the B-side solved in closed form, then refined
/// by a 4-d simplex on bell_value itself.
BellResult maximize_general(const DensityMatrix& rho, const MaximizeOptions& opts = {});

enum class StateFamily { Colored, White };

/// Smallest Bell-state weight p at which the family's Horodecki bound
/// exceeds the classical bound 2, located by bisection to 1e-9:
/// Colored -> 0 (violation for every p > 0), White -> 1/sqrt(2).
double violation_threshold(StateFamily family);

struct BetaSurface {
  std::vector<double> theta;  // radians, as supplied
  std::vector<double> phi;
  Eigen::MatrixXd values;     // values(i, j) = beta(p, theta[i], phi[j])
};

/// beta_analytic evaluated on the cartesian product of the two grids;
/// rows follow theta, columns follow phi. Grids must be non-empty and
/// strictly increasing.
BetaSurface beta_surface(double p, std::span<const double> theta_grid,
                         std::span<const double> phi_grid);

}  // namespace bellsim
