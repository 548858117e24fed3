#include "bellsim/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index * 0x9E3779B97F4A7C15ULL);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; reject u1 == 0 to keep log() finite.
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::array<std::uint64_t, 4> multinomial4(const std::array<double, 4>& probs,
                                          std::uint64_t n, Rng& rng) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -1e-12)) throw std::invalid_argument("multinomial4: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("multinomial4: probabilities do not sum to 1");

  // Cumulative cells, clamped so the walk always terminates in cell 3.
  std::array<double, 3> cdf{};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += std::max(probs[i], 0.0);
    cdf[i] = acc;
  }

  std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
  for (std::uint64_t k = 0; k < n; ++k) {
    const double u = rng.uniform() * sum;
    if (u < cdf[0]) ++counts[0];
    else if (u < cdf[1]) ++counts[1];
    else if (u < cdf[2]) ++counts[2];
    else ++counts[3];
  }
  return counts;
}

}  // namespace bellsim
