#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <utility>

#include "bellsim/counting.hpp"
#include "bellsim/states.hpp"

namespace bellsim {

/// Local measurement basis of one arm. Z and X are analyzer angles 0 and
/// pi/4; Y is the circular-polarization basis, modeled directly as the
/// sigma_y eigenprojectors.
enum class LocalBasis { Z, X, Y };

/// Projectors onto the +1 / -1 eigenvectors of the chosen Pauli operator.
std::pair<Matrix2c, Matrix2c> basis_projectors(LocalBasis basis);

/// The nine local-basis pairs {Z, X, Y} x {Z, X, Y}, row-major. This order
/// fixes both the per-basis child-seed indices and the serialization
/// layout.
using BasisPair = std::pair<LocalBasis, LocalBasis>;
const std::array<BasisPair, 9>& tomo_settings();

/// Joint outcome probabilities (pp, pm, mp, mm) for one basis pair.
ProbQuad joint_probs(const DensityMatrix& rho, const BasisPair& pair);

/// Pauli-basis expectations recovered from the nine outcome quads, in
/// tomo_settings() order. t(i, j) indexes (x, y, z) as in
/// pauli_correlation_matrix; a and b are the local Bloch vectors of the
/// two arms (each averaged over the three pairs that measure it).
struct PauliExpectations {
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
};

PauliExpectations expectations_from_probs(const std::array<ProbQuad, 9>& probs);

/// rho = (1/4) [I + sum a_i sigma_i (x) I + sum b_j I (x) sigma_j
///              + sum t_ij sigma_i (x) sigma_j].
/// Exact left-inverse of the expectation map; Hermitian and unit-trace by
/// construction, but possibly indefinite under shot noise.
Matrix4c linear_inversion(const PauliExpectations& e);

/// Physicality repair: eigendecompose, clip negative eigenvalues to zero,
/// renormalize to unit trace. Identity on physical inputs; requires the
/// input Hermitian and unit-trace within 1e-9.
DensityMatrix project_physical(const Matrix4c& raw);

struct TomoResult {
  DensityMatrix rho_hat = phi_plus();
  double fidelity_to_reference = 0.0;
  double purity = 0.0;
  double min_eig_raw = 0.0;  // smallest eigenvalue before projection
  double fitted_p = 0.0;     // best colored-noise weight, 1001-point grid
  double fidelity_to_fit = 0.0;
  std::uint64_t shots_per_basis = 0;
  std::uint64_t seed = 0;
};

/// Full pipeline against a known state: simulate the nine bases
/// (shots = kExactShots for noise-free probabilities, child seed per basis
/// index), invert, project, and report diagnostics against rho_true and
/// the best-fit colored-noise state.
TomoResult reconstruct(const DensityMatrix& rho_true,
                       std::uint64_t shots_per_basis, std::uint64_t seed);

}  // namespace bellsim
