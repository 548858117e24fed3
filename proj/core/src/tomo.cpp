#include "bellsim/tomo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellsim/random.hpp"

namespace bellsim {
namespace {

constexpr double kNormTol = 1e-9;

int pauli_index(LocalBasis basis) {
  switch (basis) {
    case LocalBasis::X: return 0;
    case LocalBasis::Y: return 1;
    case LocalBasis::Z: return 2;
  }
  throw std::logic_error("unreachable");
}

PauliAxis axis_of(int pauli_idx) {
  switch (pauli_idx) {
    case 0: return PauliAxis::X;
    case 1: return PauliAxis::Y;
    default: return PauliAxis::Z;
  }
}

double quad_e(const ProbQuad& q) { return q[0] - q[1] - q[2] + q[3]; }
double quad_a(const ProbQuad& q) { return q[0] + q[1] - q[2] - q[3]; }
double quad_b(const ProbQuad& q) { return q[0] - q[1] + q[2] - q[3]; }

}  // namespace

std::pair<Matrix2c, Matrix2c> basis_projectors(LocalBasis basis) {
  switch (basis) {
    case LocalBasis::Z:
      return analyzer_projectors(0.0);
    case LocalBasis::X:
      return analyzer_projectors(std::numbers::pi / 4.0);
    case LocalBasis::Y: {
      const Complex half(0.5, 0.0);
      const Complex ihalf(0.0, 0.5);
      Matrix2c plus;   // |R><R|, R = (|o> + i|e>)/sqrt(2)
      plus << half, -ihalf, ihalf, half;
      Matrix2c minus;  // |L><L|
      minus << half, ihalf, -ihalf, half;
      return {plus, minus};
    }
  }
  throw std::logic_error("unreachable");
}

const std::array<BasisPair, 9>& tomo_settings() {
  static const std::array<BasisPair, 9> pairs = {{
      {LocalBasis::Z, LocalBasis::Z},
      {LocalBasis::Z, LocalBasis::X},
      {LocalBasis::Z, LocalBasis::Y},
      {LocalBasis::X, LocalBasis::Z},
      {LocalBasis::X, LocalBasis::X},
      {LocalBasis::X, LocalBasis::Y},
      {LocalBasis::Y, LocalBasis::Z},
      {LocalBasis::Y, LocalBasis::X},
      {LocalBasis::Y, LocalBasis::Y},
  }};
  return pairs;
}

ProbQuad joint_probs(const DensityMatrix& rho, const BasisPair& pair) {
  const auto [ap, am] = basis_projectors(pair.first);
  const auto [bp, bm] = basis_projectors(pair.second);
  const auto prob = [&rho](const Matrix2c& a, const Matrix2c& b) {
    return std::max((rho.matrix() * tensor(a, b)).trace().real(), 0.0);
  };
  return {prob(ap, bp), prob(ap, bm), prob(am, bp), prob(am, bm)};
}

PauliExpectations expectations_from_probs(const std::array<ProbQuad, 9>& probs) {
  for (const auto& quad : probs) {
    const double sum = quad[0] + quad[1] + quad[2] + quad[3];
    if (std::abs(sum - 1.0) > kNormTol) {
      throw std::invalid_argument("basis record is not normalized");
    }
  }
  PauliExpectations e;
  Eigen::Vector3d a_hits = Eigen::Vector3d::Zero();
  Eigen::Vector3d b_hits = Eigen::Vector3d::Zero();
  const auto& pairs = tomo_settings();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int i = pauli_index(pairs[k].first);
    const int j = pauli_index(pairs[k].second);
    e.t(i, j) = quad_e(probs[k]);
    e.a(i) += quad_a(probs[k]);
    a_hits(i) += 1.0;
    e.b(j) += quad_b(probs[k]);
    b_hits(j) += 1.0;
  }
  e.a = e.a.cwiseQuotient(a_hits);
  e.b = e.b.cwiseQuotient(b_hits);
  return e;
}

Matrix4c linear_inversion(const PauliExpectations& e) {
  const Matrix2c id = Matrix2c::Identity();
  Matrix4c rho = tensor(id, id);
  for (int i = 0; i < 3; ++i) {
    rho += e.a(i) * tensor(pauli(axis_of(i)), id);
    rho += e.b(i) * tensor(id, pauli(axis_of(i)));
    for (int j = 0; j < 3; ++j) {
      rho += e.t(i, j) * tensor(pauli(axis_of(i)), pauli(axis_of(j)));
    }
  }
  return 0.25 * rho;
}

DensityMatrix project_physical(const Matrix4c& raw) {
  if ((raw - raw.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
    throw std::invalid_argument("project_physical: input is not Hermitian");
  }
  if (std::abs(raw.trace().real() - 1.0) > kNormTol ||
      std::abs(raw.trace().imag()) > kNormTol) {
    throw std::invalid_argument("project_physical: input trace is not 1");
  }
  const Matrix4c herm = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm);
  Eigen::Vector4d lambda = solver.eigenvalues().cwiseMax(0.0);
  lambda /= lambda.sum();
  const Matrix4c repaired = solver.eigenvectors() * lambda.asDiagonal() *
                            solver.eigenvectors().adjoint();
  return DensityMatrix(0.5 * (repaired + repaired.adjoint()));
}

TomoResult reconstruct(const DensityMatrix& rho_true,
                       std::uint64_t shots_per_basis, std::uint64_t seed) {
  const auto& pairs = tomo_settings();
  std::array<ProbQuad, 9> quads;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ProbQuad exact = joint_probs(rho_true, pairs[k]);
    if (shots_per_basis == kExactShots) {
      quads[k] = exact;
    } else {
      const CountRecord counts =
          sample_counts(exact, shots_per_basis, child_seed(seed, k));
      const double n = static_cast<double>(counts.total());
      quads[k] = {static_cast<double>(counts.n_pp) / n,
                  static_cast<double>(counts.n_pm) / n,
                  static_cast<double>(counts.n_mp) / n,
                  static_cast<double>(counts.n_mm) / n};
    }
  }

  const Matrix4c raw = linear_inversion(expectations_from_probs(quads));
  Eigen::SelfAdjointEigenSolver<Matrix4c> raw_eigs(0.5 * (raw + raw.adjoint()));

  TomoResult result;
  result.rho_hat = project_physical(raw);
  result.min_eig_raw = raw_eigs.eigenvalues().minCoeff();
  result.fidelity_to_reference = fidelity(result.rho_hat, rho_true);
  result.purity = result.rho_hat.purity();
  result.shots_per_basis = shots_per_basis;
  result.seed = seed;

  result.fitted_p = 0.0;
  result.fidelity_to_fit = -1.0;
  for (int g = 0; g <= 1000; ++g) {
    const double p = static_cast<double>(g) / 1000.0;
    const double f = fidelity(result.rho_hat, colored_state(p));
    if (f > result.fidelity_to_fit) {
      result.fidelity_to_fit = f;
      result.fitted_p = p;
    }
  }
  return result;
}

}  // namespace bellsim
