#include "bellsim/states.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

Matrix4c maximally_mixed() { return 0.25 * Matrix4c::Identity(); }

}  // namespace

Matrix2c pauli(PauliAxis axis) {
  Matrix2c m;
  switch (axis) {
    case PauliAxis::X:
      m << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case PauliAxis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix4c tensor(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

StateDiagnostics validate_state(const Matrix4c& m) {
  StateDiagnostics d;
  d.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace_defect = std::abs(m.trace() - Complex(1.0));
  const Matrix4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.purity = (h * h).trace().real();
  return d;
}

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m) {
  if (!m.allFinite())
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  const StateDiagnostics d = validate_state(m);
  if (d.hermiticity_defect > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian (defect " +
                                std::to_string(d.hermiticity_defect) + ")");
  if (d.trace_defect > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace differs from 1 (defect " +
                                std::to_string(d.trace_defect) + ")");
  if (d.min_eigenvalue < kMinEigenvalueTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(d.min_eigenvalue));
}

DensityMatrix phi_plus() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(m);
}

DensityMatrix colored_state(double p) {
  require_unit_interval(p, "colored_state: p");
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = 0.5;
  m(0, 3) = m(3, 0) = 0.5 * p;
  return DensityMatrix(m);
}

DensityMatrix werner_state(double p) {
  require_unit_interval(p, "werner_state: p");
  const Matrix4c m = p * phi_plus().matrix() + (1.0 - p) * maximally_mixed();
  return DensityMatrix(m);
}

DensityMatrix mixed_noise_state(double p, double w) {
  require_unit_interval(p, "mixed_noise_state: p");
  require_unit_interval(w, "mixed_noise_state: w");
  const Matrix4c m = w * colored_state(p).matrix() + (1.0 - w) * maximally_mixed();
  return DensityMatrix(m);
}

namespace {

// Hermitian PSD square root; small negative eigenvalues from roundoff clip to 0.
Matrix4c sqrt_psd(const Matrix4c& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix4c root = sqrt_psd(rho.matrix());
  const Matrix4c inner = root * sigma.matrix() * root;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (inner + inner.adjoint()),
                                             Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::sqrt(std::max(es.eigenvalues()[i], 0.0));
  return std::min(sum * sum, 1.0);
}

DensityMatrix NoiseModel::state() const {
  switch (kind) {
    case NoiseKind::Colored:
      return colored_state(p);
    case NoiseKind::White:
      return werner_state(p);
    case NoiseKind::Mixed:
      return mixed_noise_state(p, w);
  }
  throw std::logic_error("NoiseModel: unknown kind");
}

}  // namespace bellsim
