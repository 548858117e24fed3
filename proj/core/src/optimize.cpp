#include "bellsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bellsim {

SimplexResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, double initial_step, double value_tol,
    double x_tol, int max_evaluations) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_maximize: empty start point");

  int evals = 0;
  auto f = [&](const std::vector<double>& x) {
    ++evals;
    return -objective(std::span<const double>(x));  // minimize -objective
  };

  // n+1 vertices: the start point plus one step along each coordinate.
  std::vector<std::vector<double>> verts(n + 1, std::vector<double>(start.begin(), start.end()));
  for (std::size_t i = 0; i < n; ++i) verts[i + 1][i] += initial_step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  while (evals < max_evaluations) {
    sort_order();
    const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(verts[order[i]][d] - verts[best][d]));
    if (fv[worst] - fv[best] <= value_tol && diameter <= x_tol) break;

    // Centroid of all vertices except the worst.
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += verts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d)
        x[d] = centroid[d] + coeff * (centroid[d] - verts[worst][d]);
      return x;
    };

    const std::vector<double> reflected = blend(kReflect);
    const double fr = f(reflected);

    if (fr < fv[best]) {
      const std::vector<double> expanded = blend(kExpand);
      const double fe = f(expanded);
      if (fe < fr) {
        verts[worst] = expanded;
        fv[worst] = fe;
      } else {
        verts[worst] = reflected;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      verts[worst] = reflected;
      fv[worst] = fr;
    } else {
      const std::vector<double> contracted =
          blend(fr < fv[worst] ? kContract : -kContract);
      const double fc = f(contracted);
      if (fc < std::min(fr, fv[worst])) {
        verts[worst] = contracted;
        fv[worst] = fc;
      } else {
        // Shrink everything toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d)
            verts[i][d] = verts[best][d] + kShrink * (verts[i][d] - verts[best][d]);
          fv[i] = f(verts[i]);
        }
      }
    }
  }

  sort_order();
  SimplexResult result;
  result.x = verts[order[0]];
  result.value = -fv[order[0]];
  result.evaluations = evals;
  return result;
}

}  // namespace bellsim
