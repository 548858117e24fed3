#include <bellsim/source.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace bellsim;

namespace {

SourceParams demo_params() {
  // 3 mm crystal, D_G = 62 fs/mm, 120 fs FWHM pump through a 93 fs/mm
  // walk-off: window half-width 93 fs, kappa about 5.47.
  return SourceParams::from_pump(3.0, 62.0, 93.0, sigma_p_from_fwhm(120.0));
}

}  // namespace

// ---------- building blocks ----------

TEST_CASE("rect is the strict unit window") {
  CHECK(rect(0.0) == 1.0);
  CHECK(rect(-0.49) == 1.0);
  CHECK(rect(0.5) == 0.0);
  CHECK(rect(-0.5) == 0.0);
  CHECK(rect(3.0) == 0.0);
  CHECK_THROWS_AS(rect(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("sigma_p_from_fwhm carries the 2 sqrt(2 ln 2) factor") {
  CHECK(sigma_p_from_fwhm(120.0) ==
        doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0)) / 120.0)
            .epsilon(1e-15));
  CHECK_THROWS_AS(sigma_p_from_fwhm(0.0), std::domain_error);
  CHECK_THROWS_AS(sigma_p_from_fwhm(-5.0), std::domain_error);
}

TEST_CASE("derive_dispersion from group velocities") {
  auto [l0, d0] = derive_dispersion(1.0, 1.0, 1.0);
  CHECK(l0 == 0.0);
  CHECK(d0 == 0.0);

  auto [l1, d1] = derive_dispersion(0.5, 1.0, 1.0);
  CHECK(l1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d1 == 0.0);

  auto [l2, d2] = derive_dispersion(1.0, 1.0, 0.5);
  CHECK(d2 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(l2 == doctest::Approx(1.0 - 0.5 * 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(derive_dispersion(0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(derive_dispersion(1.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("SourceParams validation") {
  CHECK_THROWS_AS(SourceParams::from_kappa(0.0, 62.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(SourceParams::from_kappa(-3.0, 62.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(SourceParams::from_pump(3.0, 62.0, 93.0, -0.1),
                  std::domain_error);

  const SourceParams p = demo_params();
  CHECK(p.length_mm() == 3.0);
  CHECK(p.d_g_fs_per_mm() == 62.0);
  CHECK(p.window_half_width_fs() == doctest::Approx(93.0).epsilon(1e-15));
  CHECK(p.kappa() ==
        doctest::Approx(sigma_p_from_fwhm(120.0) * 93.0 * 3.0).epsilon(1e-15));

  // Negative D_G is a sign convention, not an error.
  const SourceParams neg = SourceParams::from_kappa(3.0, -62.0, 1.0);
  CHECK(neg.window_half_width_fs() == doctest::Approx(93.0).epsilon(1e-15));
}

// ---------- delay profile ----------

TEST_CASE("p_of_tau landmarks") {
  const SourceParams unit = SourceParams::from_kappa(1.0, 1.0, 1.0);
  CHECK(p_of_tau(0.0, unit) == 1.0);
  // quarter-window point of the closed form
  CHECK(p_of_tau(0.25, unit) ==
        doctest::Approx(0.5 * std::exp(-0.125)).epsilon(1e-15));
  CHECK(p_of_tau(0.25, unit) == doctest::Approx(0.4412485).epsilon(1e-7));
  CHECK(p_of_tau(0.5, unit) == 0.0);
  CHECK(p_of_tau(-0.5, unit) == 0.0);
  CHECK(p_of_tau(12.0, unit) == 0.0);
}

TEST_CASE("degenerate dispersion raises the documented error") {
  const SourceParams flat = SourceParams::from_kappa(3.0, 0.0, 1.0);
  CHECK_THROWS_WITH_AS(p_of_tau(1.0, flat),
                       "degenerate dispersion: delay map undefined",
                       std::domain_error);
  CHECK_THROWS_AS(tau_for_p(0.5, flat), std::domain_error);
}

TEST_CASE("profile is even in tau") {
  const SourceParams p = demo_params();
  for (int i = 0; i <= 100; ++i) {
    const double tau = p.window_half_width_fs() * 1.2 * i / 100.0;
    CHECK(std::abs(p_of_tau(tau, p) - p_of_tau(-tau, p)) <= 1e-14);
  }
}

TEST_CASE("profile is monotone non-increasing in |tau| inside the window") {
  const SourceParams p = demo_params();
  double prev = p_of_tau(0.0, p);
  for (int i = 1; i <= 400; ++i) {
    const double tau = p.window_half_width_fs() * i / 400.0;
    const double cur = p_of_tau(tau, p);
    CHECK(cur <= prev + 1e-15);
    CHECK(cur >= 0.0);
    CHECK(cur <= 1.0);
    prev = cur;
  }
}

TEST_CASE("kappa = 0 gives the bare triangle") {
  const SourceParams tri = SourceParams::from_kappa(2.0, 50.0, 0.0);
  const double dgl = 100.0;
  for (int i = 0; i < 100; ++i) {
    const double x = -0.49 + 0.98 * i / 99.0;
    CHECK(std::abs(p_of_tau(x * dgl, tri) - (1.0 - 2.0 * std::abs(x))) <=
          1e-14);
  }
}

// ---------- inverse map ----------

TEST_CASE("tau_for_p round trips and hits the triangle midpoint") {
  const SourceParams p = demo_params();
  for (double target : {1.0, 0.9, 0.75, 0.5, 0.25, 0.1, 1e-3}) {
    const double tau = tau_for_p(target, p);
    CHECK(tau >= 0.0);
    CHECK(tau <= p.window_half_width_fs());
    CHECK(std::abs(p_of_tau(tau, p) - target) <= 1e-9);
  }
  CHECK(tau_for_p(1.0, p) == 0.0);

  const SourceParams tri = SourceParams::from_kappa(2.0, 50.0, 0.0);
  CHECK(tau_for_p(0.5, tri) == doctest::Approx(25.0).epsilon(1e-9));

  CHECK_THROWS_AS(tau_for_p(0.0, p), std::domain_error);
  CHECK_THROWS_AS(tau_for_p(1.5, p), std::domain_error);
  CHECK_THROWS_AS(tau_for_p(-0.5, p), std::domain_error);
}

// ---------- states and sweeps ----------

TEST_CASE("state_at_delay matches the colored family") {
  const SourceParams unit = SourceParams::from_kappa(1.0, 1.0, 1.0);
  CHECK((state_at_delay(0.0, unit).matrix() - phi_plus().matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-15);

  const DensityMatrix edge = state_at_delay(0.7, unit);
  CHECK((edge.matrix() - colored_state(0.0).matrix()).cwiseAbs().maxCoeff() <
        1e-15);

  const double corner = state_at_delay(0.25, unit).entry(0, 3).real();
  CHECK(corner == doctest::Approx(0.2206242).epsilon(1e-6));
}

TEST_CASE("delay_sweep preserves order and evenness") {
  const SourceParams p = demo_params();
  std::vector<double> taus{0.0};
  const auto single = delay_sweep(taus, p);
  REQUIRE(single.size() == 1);
  CHECK(single[0].tau_fs == 0.0);
  CHECK(single[0].p == 1.0);

  taus = {-40.0, -10.0, 0.0, 10.0, 40.0};
  const auto sym = delay_sweep(taus, p);
  REQUIRE(sym.size() == taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(sym[i].tau_fs == taus[i]);
  }
  CHECK(std::abs(sym[0].p - sym[4].p) <= 1e-14);
  CHECK(std::abs(sym[1].p - sym[3].p) <= 1e-14);
  CHECK(sym[1].p >= sym[0].p);
}
