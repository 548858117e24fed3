#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellsim/chsh.hpp"
#include "bellsim/config.hpp"
#include "bellsim/counting.hpp"
#include "bellsim/parallel.hpp"
#include "bellsim/serialize.hpp"
#include "bellsim/source.hpp"
#include "bellsim/states.hpp"
#include "bellsim/tomo.hpp"

namespace {

using namespace bellsim;

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

// Usage problems that CLI11 cannot express (cross-option requirements).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 12345;
  std::string out;
  std::string format = "csv";
  bool exact = false;
};

void emit(const GlobalOpts& g, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content;
  } else {
    write_atomic(g.out, content);
  }
}

SourceParams require_source_params(const GlobalOpts& g, const char* command) {
  if (g.config_path.empty()) {
    throw UsageError(std::string(command) + " requires --config");
  }
  return source_params_from_config(Config::from_file(g.config_path));
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo + step * i);
  }
  return grid;
}

int run_bell_max(const GlobalOpts& g, double p_min, double p_max, int steps,
                 bool white) {
  if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 1.0)) {
    throw std::domain_error("p grid must satisfy 0 <= p-min <= p-max <= 1");
  }
  const std::vector<double> grid = linspace(p_min, p_max, steps);
  std::vector<BellMaxRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double p = grid[i];
    const BellResult best = maximize_restricted(p);
    BellMaxRow& row = rows[i];
    row.p = p;
    row.beta_max = best.value;
    row.theta = best.settings.theta();
    row.phi = best.settings.phi();
    row.bound = horodecki_bound(colored_state(p));
    if (white) {
      row.beta_max_white = maximize_general(werner_state(p)).value;
    }
  });
  emit(g, g.format == "json" ? bell_max_json(rows, white)
                             : bell_max_csv(rows, white));
  return 0;
}

int run_delay_sweep(const GlobalOpts& g, const SourceParams& params,
                    const std::vector<double>& taus, std::uint64_t shots,
                    bool optimize, double theta, double phi) {
  const ChshSettings fixed = ChshSettings::restricted(theta, phi);
  const auto records = experiment_sweep(
      params, taus, g.exact ? kExactShots : shots, g.seed, optimize, fixed);
  emit(g, g.format == "json" ? sweep_json(records) : sweep_csv(records));
  return 0;
}

int run_surface(const GlobalOpts& g, double p, const std::vector<double>& thetas,
                const std::vector<double>& phis) {
  const BetaSurface surface = beta_surface(p, thetas, phis);
  emit(g, g.format == "json" ? surface_json(surface) : surface_csv(surface));
  return 0;
}

int run_simulate(const GlobalOpts& g, double p, bool have_angles, double theta,
                 double phi, std::uint64_t shots) {
  const ChshSettings settings = have_angles
                                    ? ChshSettings::restricted(theta, phi)
                                    : maximize_restricted(p).settings;
  const std::uint64_t effective = g.exact ? kExactShots : shots;
  const MeasuredBell run =
      run_chsh(colored_state(p), settings, effective, g.seed);
  emit(g, g.format == "json"
              ? measured_bell_json(run, p, settings, effective, g.seed)
              : measured_bell_csv(run, p, settings, effective, g.seed));
  return 0;
}

int run_tomo(const GlobalOpts& g, double p, std::uint64_t shots,
             std::string coeffs_out) {
  if (g.out.empty()) {
    throw UsageError("tomo requires --out for the reconstruction JSON");
  }
  if (coeffs_out.empty()) {
    std::filesystem::path path(g.out);
    path.replace_extension();
    coeffs_out = path.string() + "_coeffs.csv";
  }
  const std::uint64_t effective = g.exact ? kExactShots : shots;
  const TomoResult result = reconstruct(colored_state(p), effective, g.seed);
  write_atomic(g.out, tomo_result_json(result));
  write_atomic(coeffs_out, pauli_coeffs_csv(result.rho_hat));
  std::cout << "fidelity = " << fmt9(result.fidelity_to_reference)
            << "  fitted_p = " << fmt9(result.fitted_p)
            << "  purity = " << fmt9(result.purity) << "\n";
  return 0;
}

int run_validate(const GlobalOpts& g) {
  if (g.config_path.empty()) {
    throw UsageError("validate requires --config");
  }
  const SourceParams params =
      source_params_from_config(Config::from_file(g.config_path));
  std::cout << describe(params) << "config ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test simulator: colored-noise entangled pairs, CHSH "
               "optimization, coincidence counting and state tomography"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "source parameter file (key = value)");
  app.add_option("--seed", g.seed, "master random seed (default 12345)");
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_option("--format", g.format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--exact", g.exact, "noise-free mode: exact probabilities, no sampling");

  auto* bm = app.add_subcommand(
      "bell-max", "maximum Bell value against the colored-noise weight p");
  bm->fallthrough();
  double p_min = 0.0;
  double p_max = 1.0;
  int bm_steps = 11;
  bool white = false;
  bm->add_option("--p-min", p_min, "lowest Bell-state weight (default 0)");
  bm->add_option("--p-max", p_max, "highest Bell-state weight (default 1)");
  bm->add_option("--steps", bm_steps, "number of grid points (default 11)")
      ->check(CLI::PositiveNumber);
  bm->add_flag("--white", white,
               "append a Werner-state (white noise) comparison column");

  auto* ds = app.add_subcommand(
      "delay-sweep", "simulated Bell measurement across trombone delays");
  ds->fallthrough();
  double tau_min = 0.0;
  double tau_max = 0.0;
  int ds_points = 41;
  std::uint64_t ds_shots = 100000;
  double ds_theta_deg = 0.0;
  double ds_phi_deg = 0.0;
  auto* tau_min_opt =
      ds->add_option("--tau-min", tau_min, "first delay in fs (default -window/2)");
  auto* tau_max_opt =
      ds->add_option("--tau-max", tau_max, "last delay in fs (default +window/2)");
  tau_min_opt->needs(tau_max_opt);
  tau_max_opt->needs(tau_min_opt);
  ds->add_option("--points", ds_points, "number of delays (default 41)")
      ->check(CLI::PositiveNumber);
  ds->add_option("--shots", ds_shots, "coincidences per setting (default 100000)")
      ->check(CLI::PositiveNumber);
  auto* ds_theta_opt = ds->add_option(
      "--theta-deg", ds_theta_deg,
      "fixed analyzer angle theta; disables per-point optimization");
  auto* ds_phi_opt =
      ds->add_option("--phi-deg", ds_phi_deg, "fixed analyzer angle phi");
  ds_theta_opt->needs(ds_phi_opt);
  ds_phi_opt->needs(ds_theta_opt);

  auto* sf = app.add_subcommand(
      "surface", "Bell operator over the (theta, phi) analyzer plane");
  sf->fallthrough();
  double sf_p = 1.0;
  double theta_min_deg = -90.0;
  double theta_max_deg = 90.0;
  int theta_steps = 181;
  double phi_min_deg = -90.0;
  double phi_max_deg = 90.0;
  int phi_steps = 181;
  sf->add_option("--p", sf_p, "Bell-state weight")->required();
  sf->add_option("--theta-min-deg", theta_min_deg, "default -90");
  sf->add_option("--theta-max-deg", theta_max_deg, "default 90");
  sf->add_option("--theta-steps", theta_steps, "default 181")
      ->check(CLI::PositiveNumber);
  sf->add_option("--phi-min-deg", phi_min_deg, "default -90");
  sf->add_option("--phi-max-deg", phi_max_deg, "default 90");
  sf->add_option("--phi-steps", phi_steps, "default 181")
      ->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand(
      "simulate", "one CHSH run: four settings, counts and estimates");
  sim->fallthrough();
  double sim_p = 1.0;
  double sim_tau = 0.0;
  double sim_theta_deg = 0.0;
  double sim_phi_deg = 0.0;
  std::uint64_t sim_shots = 100000;
  auto* sim_p_opt = sim->add_option("--p", sim_p, "Bell-state weight");
  auto* sim_tau_opt =
      sim->add_option("--tau", sim_tau, "trombone delay in fs (needs --config)");
  sim_p_opt->excludes(sim_tau_opt);
  sim_tau_opt->excludes(sim_p_opt);
  auto* sim_theta_opt = sim->add_option(
      "--theta-deg", sim_theta_deg,
      "analyzer angle theta; default: model-optimal angles");
  auto* sim_phi_opt =
      sim->add_option("--phi-deg", sim_phi_deg, "analyzer angle phi");
  sim_theta_opt->needs(sim_phi_opt);
  sim_phi_opt->needs(sim_theta_opt);
  sim->add_option("--shots", sim_shots, "coincidences per setting (default 100000)")
      ->check(CLI::PositiveNumber);

  auto* tm = app.add_subcommand(
      "tomo", "simulate tomography and reconstruct the state");
  tm->fallthrough();
  double tm_p = 1.0;
  double tm_tau = 0.0;
  std::uint64_t tm_shots = 10000;
  std::string coeffs_out;
  auto* tm_p_opt = tm->add_option("--p", tm_p, "Bell-state weight");
  auto* tm_tau_opt =
      tm->add_option("--tau", tm_tau, "trombone delay in fs (needs --config)");
  tm_p_opt->excludes(tm_tau_opt);
  tm_tau_opt->excludes(tm_p_opt);
  tm->add_option("--shots", tm_shots, "coincidences per basis (default 10000)")
      ->check(CLI::PositiveNumber);
  tm->add_option("--coeffs-out", coeffs_out,
                 "Pauli coefficient CSV path (default: derived from --out)");

  auto* val = app.add_subcommand(
      "validate", "parse a config file and echo the resolved parameters");
  val->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (bm->parsed()) {
      return run_bell_max(g, p_min, p_max, bm_steps, white);
    }
    if (ds->parsed()) {
      const SourceParams params = require_source_params(g, "delay-sweep");
      double lo = tau_min;
      double hi = tau_max;
      if (tau_min_opt->count() == 0) {
        hi = params.window_half_width_fs();
        lo = -hi;
      }
      const bool optimize = ds_theta_opt->count() == 0;
      return run_delay_sweep(g, params, linspace(lo, hi, ds_points), ds_shots,
                             optimize, ds_theta_deg * kRadPerDeg,
                             ds_phi_deg * kRadPerDeg);
    }
    if (sf->parsed()) {
      return run_surface(
          g, sf_p,
          linspace(theta_min_deg * kRadPerDeg, theta_max_deg * kRadPerDeg,
                   theta_steps),
          linspace(phi_min_deg * kRadPerDeg, phi_max_deg * kRadPerDeg,
                   phi_steps));
    }
    if (sim->parsed()) {
      double p = sim_p;
      if (sim_tau_opt->count() > 0) {
        p = p_of_tau(sim_tau, require_source_params(g, "simulate --tau"));
      } else if (sim_p_opt->count() == 0) {
        throw UsageError("simulate requires --p or --tau");
      }
      return run_simulate(g, p, sim_theta_opt->count() > 0,
                          sim_theta_deg * kRadPerDeg, sim_phi_deg * kRadPerDeg,
                          sim_shots);
    }
    if (tm->parsed()) {
      double p = tm_p;
      if (tm_tau_opt->count() > 0) {
        p = p_of_tau(tm_tau, require_source_params(g, "tomo --tau"));
      } else if (tm_p_opt->count() == 0) {
        throw UsageError("tomo requires --p or --tau");
      }
      return run_tomo(g, p, tm_shots, coeffs_out);
    }
    if (val->parsed()) {
      return run_validate(g);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
