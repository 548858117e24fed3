#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>

namespace bellsim {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Two-photon product basis order, fixed project-wide (serialization included):
/// index 0 = |oo>, 1 = |oe>, 2 = |eo>, 3 = |ee>.
inline constexpr std::array<const char*, 4> kBasisLabels{"oo", "oe", "eo", "ee"};

enum class PauliAxis { X, Y, Z };

/// The standard 2x2 Pauli matrix for the given axis.
Matrix2c pauli(PauliAxis axis);

/// Kronecker product a (x) b in the fixed basis order above.
Matrix4c tensor(const Matrix2c& a, const Matrix2c& b);

/// Physicality report for an arbitrary 4x4 complex matrix. Reports, never
/// throws; callers decide what defects they tolerate.
struct StateDiagnostics {
  double hermiticity_defect = 0.0;  // max entrywise |m - m^dagger|
  double trace_defect = 0.0;        // |tr(m) - 1|
  double min_eigenvalue = 0.0;      // smallest eigenvalue of the Hermitian part
  double purity = 0.0;              // tr(h^2) of the Hermitian part h
};

StateDiagnostics validate_state(const Matrix4c& m);

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kMinEigenvalueTol = -1e-10;

/// A validated two-qubit density matrix: Hermitian (1e-12), unit trace
/// (1e-12), eigenvalues >= -1e-10. Construction throws std::invalid_argument
/// otherwise; instances are immutable and freely shareable across threads.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix4c& m);

  const Matrix4c& matrix() const { return m_; }
  Complex entry(int row, int col) const { return m_(row, col); }
  double purity() const { return (m_ * m_).trace().real(); }

 private:
  Matrix4c m_;
};

/// |Phi+><Phi+| with |Phi+> = (|oo> + |ee>)/sqrt(2).
DensityMatrix phi_plus();

/// Colored-noise family: p |Phi+><Phi+| + (1-p)/2 (|oo><oo| + |ee><ee|).
/// Diagonal (1/2, 0, 0, 1/2) with corner coherences p/2.
DensityMatrix colored_state(double p);

/// White-noise (Werner) comparison family: p |Phi+><Phi+| + (1-p) I/4.
DensityMatrix werner_state(double p);

/// Colored state diluted with white noise: w * colored_state(p) + (1-w) I/4.
/// Models the residual isotropic noise of an imperfect source.
DensityMatrix mixed_noise_state(double p, double w);

/// Uhlmann fidelity in the squared (Jozsa) convention:
///   F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2,
/// so F(rho, rho) = 1 and F equals <psi|sigma|psi> when rho is pure.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Noise description attached to a model state.
enum class NoiseKind { Colored, White, Mixed };

struct NoiseModel {
  double p = 1.0;              // Bell-state weight
  NoiseKind kind = NoiseKind::Colored;
  double w = 1.0;              // colored fraction, used when kind == Mixed

  DensityMatrix state() const;
};

}  // namespace bellsim
