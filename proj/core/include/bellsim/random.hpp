#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace bellsim {

/// SplitMix64 scrambler. Fixed forever: seed derivation and golden test
/// fixtures depend on these exact constants.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `index` of a master seed.
///
/// Rule: child = splitmix64(master + index * 0x9E3779B97F4A7C15), i.e.
/// the (index+1)-th output of the SplitMix64 stream seeded at `master`.
/// Independent streams for per-setting / per-delay / per-basis sampling
/// are always derived through this function.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

/// Seeded pseudo-random source with a fully specified mapping from raw
/// 64-bit draws to doubles, so that identical seeds give bit-identical
/// streams on every platform (std::uniform_real_distribution makes no
/// such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform double in [0, 1): top 53 bits of one raw draw.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller on two fixed-rule uniforms.
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// One multinomial draw over four outcome cells: each of the `n` trials
/// walks the cumulative distribution with a single uniform. Counts sum
/// to `n` exactly.
std::array<std::uint64_t, 4> multinomial4(const std::array<double, 4>& probs,
                                          std::uint64_t n, Rng& rng);

}  // namespace bellsim
