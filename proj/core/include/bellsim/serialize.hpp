#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bellsim/chsh.hpp"
#include "bellsim/counting.hpp"
#include "bellsim/states.hpp"
#include "bellsim/tomo.hpp"

namespace bellsim {

/// Canonical float formatting for all emitted datasets: 9 significant
/// digits, shortest form ("%.9g").
std::string fmt9(double value);

/// The double closest to fmt9(value), used so JSON numbers match the CSV
/// text precision.
double round9(double value);

/// Write-then-rename so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// 4x4 density matrix as JSON text: {"basis": ["oo",...], "rho": [[[re,im],...]]}.
std::string density_matrix_json(const DensityMatrix& rho);

/// Tomography result as JSON text: rho_hat plus fidelity, purity,
/// fitted_p, fidelity_to_fit, min_eig_raw, shots_per_basis, seed.
std::string tomo_result_json(const TomoResult& result);

/// The 16 real Pauli coefficients c_ab = tr(rho sigma_a (x) sigma_b),
/// a, b over (I, X, Y, Z): CSV "op_a,op_b,coeff".
std::string pauli_coeffs_csv(const DensityMatrix& rho);

/// Bell-operator surface as CSV: corner cell "theta_deg/phi_deg", first
/// row the phi grid, then one row per theta. Angles in degrees. The JSON
/// form carries theta_deg, phi_deg and a row-per-theta values array.
std::string surface_csv(const BetaSurface& surface);
std::string surface_json(const BetaSurface& surface);

/// Delay-sweep records as CSV (columns tau_fs, p_model, beta_measured,
/// beta_stderr, beta_model, theta_deg, phi_deg, shots, seed) or as a JSON
/// array of objects with the same fields. "beta" columns hold the Bell
/// operator value, not the analyzer angle.
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string sweep_json(const std::vector<SweepRecord>& records);

struct BellMaxRow {
  double p = 0.0;
  double beta_max = 0.0;
  double theta = 0.0;  // radians
  double phi = 0.0;    // radians
  double bound = 0.0;  // Horodecki maximum for the colored family
  double beta_max_white = 0.0;  // Werner comparison, when requested
};

/// Robustness-curve rows (p, beta_max, theta_deg, phi_deg,
/// horodecki_bound); include_white appends beta_max_white and
/// violated_white columns.
std::string bell_max_csv(const std::vector<BellMaxRow>& rows, bool include_white);
std::string bell_max_json(const std::vector<BellMaxRow>& rows, bool include_white);

/// One simulated CHSH run: per-setting counts and estimates plus the
/// aggregated Bell value. The CSV carries the aggregate in '# key = value'
/// comment lines above uniform per-setting rows.
std::string measured_bell_csv(const MeasuredBell& run, double p,
                              const ChshSettings& settings, std::uint64_t shots,
                              std::uint64_t seed);
std::string measured_bell_json(const MeasuredBell& run, double p,
                               const ChshSettings& settings, std::uint64_t shots,
                               std::uint64_t seed);

}  // namespace bellsim
