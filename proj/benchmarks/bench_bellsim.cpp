#include <benchmark/benchmark.h>

#include <cstdint>
#include <numbers>
#include <vector>

#include <bellsim/chsh.hpp>
#include <bellsim/counting.hpp>
#include <bellsim/source.hpp>
#include <bellsim/states.hpp>
#include <bellsim/tomo.hpp>

namespace {

using namespace bellsim;

constexpr double kPi = std::numbers::pi;

void BM_BetaClosedForm(benchmark::State& state) {
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta);
    benchmark::DoNotOptimize(beta_symmetric(0.6, theta, kPi / 8));
  }
}
BENCHMARK(BM_BetaClosedForm);

void BM_BellValueTrace(benchmark::State& state) {
  const DensityMatrix rho = colored_state(0.6);
  const ChshSettings settings = ChshSettings::symmetric(kPi / 4, kPi / 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_value(rho, settings).value);
  }
}
BENCHMARK(BM_BellValueTrace);

void BM_MaximizeRestricted(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_restricted(0.6).value);
  }
}
BENCHMARK(BM_MaximizeRestricted);

void BM_MaximizeGeneral(benchmark::State& state) {
  const DensityMatrix rho = colored_state(0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_general(rho).value);
  }
}
BENCHMARK(BM_MaximizeGeneral);

void BM_BetaSurface181(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 0; i <= 180; ++i) grid.push_back(-kPi / 2 + kPi * i / 180);
  for (auto _ : state) {
    const BetaSurface surface = beta_surface(0.6, grid, grid);
    benchmark::DoNotOptimize(surface.values.sum());
  }
}
BENCHMARK(BM_BetaSurface181);

void BM_RunChshSampled(benchmark::State& state) {
  const DensityMatrix rho = colored_state(0.6);
  const ChshSettings settings = maximize_restricted(0.6).settings;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_chsh(rho, settings, static_cast<std::uint64_t>(state.range(0)), seed++)
            .beta_hat);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_RunChshSampled)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_ReconstructExact(benchmark::State& state) {
  const DensityMatrix rho = colored_state(0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(rho, kExactShots, 0).fidelity_to_reference);
  }
}
BENCHMARK(BM_ReconstructExact);

void BM_ReconstructSampled(benchmark::State& state) {
  const DensityMatrix rho = colored_state(0.6);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(rho, 10000, seed++).fidelity_to_reference);
  }
}
BENCHMARK(BM_ReconstructSampled);

void BM_DelayMap(benchmark::State& state) {
  const SourceParams params =
      SourceParams::from_pump(3.0, 62.0, 93.0, sigma_p_from_fwhm(120.0));
  double tau = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau);
    benchmark::DoNotOptimize(p_of_tau(tau, params));
  }
}
BENCHMARK(BM_DelayMap);

void BM_DelayMapInverse(benchmark::State& state) {
  const SourceParams params =
      SourceParams::from_pump(3.0, 62.0, 93.0, sigma_p_from_fwhm(120.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_for_p(0.5, params));
  }
}
BENCHMARK(BM_DelayMapInverse);

}  // namespace

BENCHMARK_MAIN();
