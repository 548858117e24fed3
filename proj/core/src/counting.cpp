#include "bellsim/counting.hpp"

#include <cmath>
#include <stdexcept>

#include "bellsim/parallel.hpp"

namespace bellsim {
namespace {

Eigen::Vector2cd plus_ket(double angle) {
  return {Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0)};
}

Eigen::Vector2cd minus_ket(double angle) {
  return {Complex(std::sin(angle), 0.0), Complex(-std::cos(angle), 0.0)};
}

double exact_e_hat(const ProbQuad& probs) {
  return probs[0] - probs[1] - probs[2] + probs[3];
}

}  // namespace

std::pair<Matrix2c, Matrix2c> analyzer_projectors(double angle) {
  if (!std::isfinite(angle)) {
    throw std::domain_error("analyzer angle must be finite");
  }
  const Eigen::Vector2cd sp = plus_ket(angle);
  const Eigen::Vector2cd sm = minus_ket(angle);
  return {sp * sp.adjoint(), sm * sm.adjoint()};
}

ProbQuad coincidence_probs(const DensityMatrix& rho, const AnalyzerSetting& s) {
  const auto [ap, am] = analyzer_projectors(s.alpha);
  const auto [bp, bm] = analyzer_projectors(s.beta_angle);
  const auto prob = [&rho](const Matrix2c& a, const Matrix2c& b) {
    const double value = (rho.matrix() * tensor(a, b)).trace().real();
    return std::max(value, 0.0);
  };
  return {prob(ap, bp), prob(ap, bm), prob(am, bp), prob(am, bm)};
}

CountRecord sample_counts(const ProbQuad& probs, std::uint64_t n_total,
                          std::uint64_t seed, const AnalyzerSetting& setting) {
  Rng rng(seed);
  const auto counts = multinomial4(probs, n_total, rng);
  CountRecord record;
  record.n_pp = counts[0];
  record.n_pm = counts[1];
  record.n_mp = counts[2];
  record.n_mm = counts[3];
  record.setting = setting;
  record.seed = seed;
  return record;
}

CorrelationEstimate estimate_correlation(const CountRecord& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) {
    throw std::invalid_argument("estimate_correlation: zero total counts");
  }
  const double nd = static_cast<double>(n);
  CorrelationEstimate est;
  est.total = n;
  est.e_hat = (static_cast<double>(counts.n_pp) - static_cast<double>(counts.n_pm) -
               static_cast<double>(counts.n_mp) + static_cast<double>(counts.n_mm)) /
              nd;
  est.std_err = std::sqrt(std::max(0.0, 1.0 - est.e_hat * est.e_hat) / nd);
  return est;
}

ProbQuad detector_effects(const ProbQuad& probs, const DetectorModel& model) {
  if (!(model.efficiency > 0.0 && model.efficiency <= 1.0)) {
    throw std::domain_error("efficiency must lie in (0, 1]");
  }
  if (!(model.accidental_fraction >= 0.0 && model.accidental_fraction < 1.0)) {
    throw std::domain_error("accidental_fraction must lie in [0, 1)");
  }
  const double a = model.accidental_fraction;
  ProbQuad mixed;
  for (std::size_t i = 0; i < 4; ++i) {
    mixed[i] = (1.0 - a) * probs[i] + a * 0.25;
  }
  return mixed;
}

std::uint64_t effective_shots(std::uint64_t shots, const DetectorModel& model) {
  if (!(model.efficiency > 0.0 && model.efficiency <= 1.0)) {
    throw std::domain_error("efficiency must lie in (0, 1]");
  }
  const double eta = model.efficiency;
  return static_cast<std::uint64_t>(
      std::llround(eta * eta * static_cast<double>(shots)));
}

MeasuredBell run_chsh(const DensityMatrix& rho, const ChshSettings& s,
                      std::uint64_t shots_per_setting, std::uint64_t seed,
                      const DetectorModel& model) {
  const auto& a = s.angles();
  const std::array<AnalyzerSetting, 4> settings = {
      AnalyzerSetting{a[0], a[2]}, AnalyzerSetting{a[0], a[3]},
      AnalyzerSetting{a[1], a[2]}, AnalyzerSetting{a[1], a[3]}};
  constexpr std::array<double, 4> signs = {1.0, 1.0, 1.0, -1.0};

  MeasuredBell result;
  result.exact = shots_per_setting == kExactShots;
  const std::uint64_t n_eff =
      result.exact ? 0 : effective_shots(shots_per_setting, model);
  if (!result.exact && n_eff == 0) {
    throw std::domain_error("efficiency leaves no effective coincidences");
  }

  double variance = 0.0;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const ProbQuad probs =
        detector_effects(coincidence_probs(rho, settings[i]), model);
    CorrelationEstimate est;
    if (result.exact) {
      est.e_hat = exact_e_hat(probs);
      est.std_err = 0.0;
      est.total = 0;
    } else {
      est = estimate_correlation(
          sample_counts(probs, n_eff, child_seed(seed, i), settings[i]));
    }
    result.terms[i] = est;
    result.beta_hat += signs[i] * est.e_hat;
    variance += est.std_err * est.std_err;
  }
  result.std_err = std::sqrt(variance);
  return result;
}

std::vector<SweepRecord> experiment_sweep(const SourceParams& params,
                                          std::span<const double> taus_fs,
                                          std::uint64_t shots, std::uint64_t seed,
                                          bool optimize, const ChshSettings& fixed,
                                          const DetectorModel& model) {
  if (!optimize && !fixed.has_angle_pair()) {
    throw std::invalid_argument(
        "sweep requires a two-parameter settings family");
  }
  std::vector<SweepRecord> records(taus_fs.size());
  parallel_for(taus_fs.size(), [&](std::size_t i) {
    const double tau = taus_fs[i];
    const double p = p_of_tau(tau, params);
    const ChshSettings settings =
        optimize ? maximize_restricted(p).settings : fixed;
    const DensityMatrix rho = colored_state(p);
    const MeasuredBell run =
        run_chsh(rho, settings, shots, child_seed(seed, i), model);

    SweepRecord& rec = records[i];
    rec.tau_fs = tau;
    rec.p_model = p;
    rec.beta_measured = run.beta_hat;
    rec.beta_stderr = run.std_err;
    rec.beta_model = bell_value(rho, settings).value;
    rec.theta = settings.theta();
    rec.phi = settings.phi();
    rec.shots = shots;
    rec.seed = child_seed(seed, i);
  });
  return records;
}

}  // namespace bellsim
