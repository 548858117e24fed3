#include <bellsim/counting.hpp>

#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace bellsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kRoot2 = 1.41421356237309504880;
}  // namespace

// ---------- projectors ----------

TEST_CASE("analyzer_projectors at the axis angles") {
  const auto [p0, m0] = analyzer_projectors(0.0);
  CHECK(std::abs(p0(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(p0(1, 1)) < 1e-15);
  CHECK(std::abs(m0(1, 1) - Complex(1, 0)) < 1e-15);

  const auto [pd, md] = analyzer_projectors(kPi / 4);
  CHECK(std::abs(pd(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(pd(0, 1) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(md(0, 1) - Complex(-0.5, 0)) < 1e-15);
}

TEST_CASE("projectors resolve the identity and the observable") {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-kPi, kPi);
    const auto [plus, minus] = analyzer_projectors(a);
    CHECK((plus + minus - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((plus - minus - observable(a)).cwiseAbs().maxCoeff() < 1e-14);
  }
  const auto [p8, m8] = analyzer_projectors(kPi / 8);
  const Matrix2c mid =
      (pauli(PauliAxis::Z) + pauli(PauliAxis::X)) / std::sqrt(2.0);
  CHECK((p8 - m8 - mid).cwiseAbs().maxCoeff() < 1e-15);
}

// ---------- probabilities ----------

TEST_CASE("coincidence probabilities of the model states") {
  const ProbQuad natural = coincidence_probs(phi_plus(), {0.0, 0.0});
  CHECK(natural[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(natural[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(natural[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(natural[3] == doctest::Approx(0.5).epsilon(1e-14));

  for (double p : {0.0, 0.4, 1.0}) {
    const ProbQuad diag =
        coincidence_probs(colored_state(p), {kPi / 4, kPi / 4});
    CHECK(diag[0] == doctest::Approx((1 + p) / 4).epsilon(1e-13));
    CHECK(diag[1] == doctest::Approx((1 - p) / 4).epsilon(1e-13));
    CHECK(diag[2] == doctest::Approx((1 - p) / 4).epsilon(1e-13));
    CHECK(diag[3] == doctest::Approx((1 + p) / 4).epsilon(1e-13));
  }

  const ProbQuad flat = coincidence_probs(werner_state(0.0), {0.3, -0.8});
  for (double q : flat) CHECK(q == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("probabilities stay normalized for random states and angles") {
  Rng rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = testsup::random_state(rng);
    const AnalyzerSetting s{rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};
    const ProbQuad q = coincidence_probs(rho, s);
    double sum = 0.0;
    for (double v : q) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

// ---------- sampling ----------

TEST_CASE("sample_counts is deterministic and conserves the total") {
  const ProbQuad probs{0.4, 0.1, 0.2, 0.3};
  const CountRecord a = sample_counts(probs, 5000, 123);
  const CountRecord b = sample_counts(probs, 5000, 123);
  CHECK(a.n_pp == b.n_pp);
  CHECK(a.n_pm == b.n_pm);
  CHECK(a.n_mp == b.n_mp);
  CHECK(a.n_mm == b.n_mm);
  CHECK(a.total() == 5000);
  CHECK(a.seed == 123);

  const CountRecord c = sample_counts(probs, 5000, 124);
  CHECK((a.n_pp != c.n_pp || a.n_pm != c.n_pm || a.n_mp != c.n_mp));
}

TEST_CASE("sample_counts golden fixture") {
  // Frozen from the first run; guards the RNG and multinomial layout.
  const ProbQuad probs = coincidence_probs(colored_state(0.6), {0.0, kPi / 8});
  const CountRecord rec = sample_counts(probs, 10000, 42);
  CHECK(rec.n_pp == 4202);
  CHECK(rec.n_pm == 719);
  CHECK(rec.n_mp == 745);
  CHECK(rec.n_mm == 4334);
}

TEST_CASE("degenerate distribution concentrates all counts") {
  const CountRecord rec = sample_counts({1.0, 0.0, 0.0, 0.0}, 777, 5);
  CHECK(rec.n_pp == 777);
  CHECK(rec.total() == 777);
}

TEST_CASE("count means track the cell probabilities") {
  double mean = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    mean += static_cast<double>(
        sample_counts({0.5, 0.0, 0.0, 0.5}, 100, 9000 + i).n_pp);
  }
  mean /= draws;
  CHECK(std::abs(mean - 50.0) < 1.5);
}

// ---------- estimator ----------

TEST_CASE("estimate_correlation closed-form cases") {
  const CorrelationEstimate perfect =
      estimate_correlation({50, 0, 0, 50, {}, 0});
  CHECK(perfect.e_hat == 1.0);
  CHECK(perfect.std_err == 0.0);
  CHECK(perfect.total == 100);

  const CorrelationEstimate flat = estimate_correlation({25, 25, 25, 25, {}, 0});
  CHECK(flat.e_hat == 0.0);
  CHECK(flat.std_err == doctest::Approx(0.1).epsilon(1e-15));

  CHECK(estimate_correlation({30, 20, 20, 30, {}, 0}).e_hat ==
        doctest::Approx(0.2).epsilon(1e-15));

  CHECK_THROWS_AS(estimate_correlation({0, 0, 0, 0, {}, 0}),
                  std::invalid_argument);
}

TEST_CASE("estimator stays within [-1, 1] on random counts") {
  Rng rng(47);
  for (int trial = 0; trial < 500; ++trial) {
    ProbQuad probs;
    double total = 0.0;
    for (double& q : probs) {
      q = rng.uniform();
      total += q;
    }
    for (double& q : probs) q /= total;
    const CountRecord rec = sample_counts(probs, 50, rng.next());
    const CorrelationEstimate est = estimate_correlation(rec);
    CHECK(std::abs(est.e_hat) <= 1.0);
    CHECK(est.std_err >= 0.0);
  }
}

// ---------- detector model ----------

TEST_CASE("detector_effects mixes toward uniform") {
  const ProbQuad probs{0.5, 0.0, 0.0, 0.5};
  const ProbQuad same = detector_effects(probs, {});
  CHECK(same == probs);

  const ProbQuad mixed = detector_effects(probs, {1.0, 0.1});
  CHECK(mixed[0] == doctest::Approx(0.475).epsilon(1e-15));
  CHECK(mixed[1] == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(mixed[2] == doctest::Approx(0.025).epsilon(1e-15));
  CHECK(mixed[3] == doctest::Approx(0.475).epsilon(1e-15));

  CHECK_THROWS_AS(detector_effects(probs, {0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(detector_effects(probs, {1.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(detector_effects(probs, {1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(detector_effects(probs, {1.0, -0.1}), std::domain_error);
}

TEST_CASE("effective shots scale with the squared efficiency") {
  CHECK(effective_shots(10000, {}) == 10000);
  CHECK(effective_shots(10000, {0.5, 0.0}) == 2500);
  CHECK(effective_shots(3, {0.1, 0.0}) == 0);
}

// ---------- CHSH runs ----------

TEST_CASE("exact run reproduces the trace value for any settings mode") {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = testsup::random_state(rng);
    const ChshSettings s = ChshSettings::general(
        rng.uniform(-kPi / 2, kPi / 2), rng.uniform(-kPi / 2, kPi / 2),
        rng.uniform(-kPi / 2, kPi / 2), rng.uniform(-kPi / 2, kPi / 2));
    const MeasuredBell run = run_chsh(rho, s, kExactShots, 1);
    CHECK(run.exact);
    CHECK(run.std_err == 0.0);
    CHECK(std::abs(run.beta_hat - bell_value(rho, s).value) <= 1e-12);
  }
}

TEST_CASE("exact per-term estimates equal the model correlations") {
  const DensityMatrix rho = colored_state(0.35);
  const ChshSettings s = ChshSettings::restricted(0.6, -0.2);
  const MeasuredBell run = run_chsh(rho, s, kExactShots, 0);
  const auto& a = s.angles();
  const double expected[4] = {
      correlation(rho, a[0], a[2]), correlation(rho, a[0], a[3]),
      correlation(rho, a[1], a[2]), correlation(rho, a[1], a[3])};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(run.terms[i].e_hat - expected[i]) <= 1e-12);
  }
}

TEST_CASE("sampled runs are seed-deterministic") {
  const DensityMatrix rho = colored_state(0.8);
  const ChshSettings s = ChshSettings::symmetric(kPi / 4, 0.33);
  const MeasuredBell a = run_chsh(rho, s, 20000, 99);
  const MeasuredBell b = run_chsh(rho, s, 20000, 99);
  CHECK(a.beta_hat == b.beta_hat);
  CHECK(a.std_err == b.std_err);
  for (int i = 0; i < 4; ++i) CHECK(a.terms[i].e_hat == b.terms[i].e_hat);
  CHECK_FALSE(a.exact);

  const MeasuredBell c = run_chsh(rho, s, 20000, 100);
  CHECK(a.beta_hat != c.beta_hat);
}

TEST_CASE("sampled run at the Tsirelson point golden fixture") {
  const MeasuredBell run =
      run_chsh(phi_plus(), ChshSettings::symmetric(kPi / 4, kPi / 8), 100000, 7);
  CHECK(run.beta_hat == doctest::Approx(2.82572).epsilon(1e-9));
  CHECK(run.std_err == doctest::Approx(0.00447640002).epsilon(1e-6));
  CHECK(std::abs(run.beta_hat - 2.0 * kRoot2) <= 4.0 * run.std_err);
}

TEST_CASE("vanishing effective rate is a domain error") {
  CHECK_THROWS_WITH_AS(
      run_chsh(phi_plus(), ChshSettings::restricted(0, 0), 3, 1, {0.1, 0.0}),
      "efficiency leaves no effective coincidences", std::domain_error);
}

TEST_CASE("correlation error shrinks like one over root shots") {
  // Mean |e_hat - E| over 200 seeds at three decades of shots; the
  // log-log slope against shots must sit near -1/2.
  const ProbQuad probs = coincidence_probs(phi_plus(), {0.0, kPi / 8});
  const double exact = correlation(phi_plus(), 0.0, kPi / 8);
  const std::vector<std::uint64_t> shot_grid{1000, 10000, 100000};
  std::vector<double> mean_err;
  for (std::uint64_t shots : shot_grid) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const CountRecord rec =
          sample_counts(probs, shots, child_seed(7777, seed));
      acc += std::abs(estimate_correlation(rec).e_hat - exact);
    }
    mean_err.push_back(acc / 200.0);
  }
  // Least-squares slope through the three (log N, log err) points.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = std::log(static_cast<double>(shot_grid[i]));
    const double y = std::log(mean_err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(std::abs(slope + 0.5) <= 0.1);
}

// ---------- sweeps ----------

TEST_CASE("exact optimized sweep reproduces the robustness curve") {
  const SourceParams params = SourceParams::from_kappa(1.0, 1.0, 1.0);
  std::vector<double> taus;
  for (int i = 0; i <= 10; ++i) taus.push_back(0.5 * i / 10.0);
  const auto records =
      experiment_sweep(params, taus, kExactShots, 5, /*optimize=*/true);
  REQUIRE(records.size() == taus.size());

  CHECK(records[0].p_model == 1.0);
  CHECK(records[0].beta_measured == doctest::Approx(2.0 * kRoot2).epsilon(1e-9));
  CHECK(records[0].theta == doctest::Approx(kPi / 4).epsilon(1e-4));
  CHECK(records[0].phi == doctest::Approx(kPi / 8).epsilon(1e-4));

  CHECK(records.back().p_model == 0.0);
  CHECK(records.back().beta_measured == doctest::Approx(2.0).epsilon(1e-9));

  for (const SweepRecord& rec : records) {
    const double bound = 2.0 * std::sqrt(1.0 + rec.p_model * rec.p_model);
    CHECK(std::abs(rec.beta_measured - bound) <= 1e-6);
    CHECK(std::abs(rec.beta_model - bound) <= 1e-6);
    CHECK(rec.shots == kExactShots);
  }
}

TEST_CASE("sweep seeds derive per point from the master seed") {
  const SourceParams params = SourceParams::from_kappa(1.0, 1.0, 1.0);
  const std::vector<double> taus{0.0, 0.1, 0.2};
  const auto records = experiment_sweep(params, taus, 100, 31, true);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].seed == child_seed(31, i));
  }
}

TEST_CASE("fixed-angle sweep requires a two-parameter family") {
  const SourceParams params = SourceParams::from_kappa(1.0, 1.0, 1.0);
  const std::vector<double> taus{0.0};
  CHECK_THROWS_AS(experiment_sweep(params, taus, 100, 1, /*optimize=*/false,
                                   ChshSettings::general(0, 1, 2, 3)),
                  std::invalid_argument);

  const auto fixed = experiment_sweep(params, taus, kExactShots, 1, false,
                                      ChshSettings::restricted(kPi / 4, kPi / 8));
  CHECK(fixed[0].beta_measured == doctest::Approx(2.0 * kRoot2).epsilon(1e-12));
  CHECK(fixed[0].theta == doctest::Approx(kPi / 4).epsilon(1e-15));
}
