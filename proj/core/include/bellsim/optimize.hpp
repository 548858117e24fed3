#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bellsim {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free Nelder-Mead maximization, deterministic given its inputs.
/// The initial simplex keeps `start` as a vertex, so the result is never
/// worse than the starting value. Terminates when the spread of vertex
/// values drops below `value_tol` and the simplex diameter below `x_tol`,
/// or after `max_evaluations`.
SimplexResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, double initial_step, double value_tol,
    double x_tol, int max_evaluations);

}  // namespace bellsim
