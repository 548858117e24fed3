#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bellsim/chsh.hpp"
#include "bellsim/random.hpp"
#include "bellsim/source.hpp"
#include "bellsim/states.hpp"

namespace bellsim {

/// Sentinel shot count selecting exact mode: probabilities are used
/// directly instead of sampled counts.
inline constexpr std::uint64_t kExactShots = 0;

/// Analyzer angles of the two arms. The second angle is beta_angle, not
/// the Bell value.
struct AnalyzerSetting {
  double alpha = 0.0;
  double beta_angle = 0.0;
};

struct CountRecord {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  AnalyzerSetting setting;
  std::uint64_t seed = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
};

struct CorrelationEstimate {
  double e_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t total = 0;
};

/// Projectors onto |s(2a)> = cos(a)|o> + sin(a)|e> and its orthogonal
/// complement sin(a)|o> - cos(a)|e>. Their sum is the identity and their
/// difference is observable(a).
std::pair<Matrix2c, Matrix2c> analyzer_projectors(double angle);

using ProbQuad = std::array<double, 4>;  // (pp, pm, mp, mm)

/// Joint outcome probabilities tr(rho P_x(alpha) (x) P_y(beta_angle)).
ProbQuad coincidence_probs(const DensityMatrix& rho, const AnalyzerSetting& s);

/// Multinomial draw of n_total coincidences over the four outcomes;
/// bit-reproducible for identical (probs, n_total, seed).
CountRecord sample_counts(const ProbQuad& probs, std::uint64_t n_total,
                          std::uint64_t seed, const AnalyzerSetting& setting = {});

/// e_hat = (n_pp - n_pm - n_mp + n_mm) / N with the multinomial
/// delta-method standard error sqrt((1 - e_hat^2) / N).
CorrelationEstimate estimate_correlation(const CountRecord& counts);

/// Optional imperfection model: accidental coincidences mix the outcome
/// probabilities toward uniform, detection efficiency rescales the
/// effective pair rate as N_eff = round(eta^2 N).
struct DetectorModel {
  double efficiency = 1.0;           // eta in (0, 1]
  double accidental_fraction = 0.0;  // in [0, 1)
};

ProbQuad detector_effects(const ProbQuad& probs, const DetectorModel& model);
std::uint64_t effective_shots(std::uint64_t shots, const DetectorModel& model);

struct MeasuredBell {
  double beta_hat = 0.0;
  double std_err = 0.0;
  bool exact = false;
  std::array<CorrelationEstimate, 4> terms{};
};

/// Simulated CHSH run: four settings drawn independently, each with child
/// seed child_seed(seed, setting index). shots = kExactShots evaluates the
/// trace expression with zero uncertainty.
MeasuredBell run_chsh(const DensityMatrix& rho, const ChshSettings& s,
                      std::uint64_t shots_per_setting, std::uint64_t seed,
                      const DetectorModel& model = {});

struct SweepRecord {
  double tau_fs = 0.0;
  double p_model = 0.0;
  double beta_measured = 0.0;
  double beta_stderr = 0.0;
  double beta_model = 0.0;  // noise-free model value at the angles used
  double theta = 0.0;       // radians
  double phi = 0.0;         // radians
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Delay sweep through the full measurement chain. With optimize true the
/// angles are re-optimized per point from the model p; otherwise the fixed
/// settings are used everywhere. Per-point seed is child_seed(seed, index).
std::vector<SweepRecord> experiment_sweep(const SourceParams& params,
                                          std::span<const double> taus_fs,
                                          std::uint64_t shots, std::uint64_t seed,
                                          bool optimize,
                                          const ChshSettings& fixed =
                                              ChshSettings::restricted(0.0, 0.0),
                                          const DetectorModel& model = {});

}  // namespace bellsim
