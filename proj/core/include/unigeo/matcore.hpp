#pragma once

// Dense complex matrix kernel: Hermitian and unitary value types together
// with the spectral routines (eigendecomposition, SVD, exp(iX), principal
// logarithm, modulus) that the rest of the library is written against.

#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace unigeo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;

/// Relative asymmetry accepted by the HermitianMatrix constructor.
inline constexpr double kHermitianTolerance = 1e-8;
/// Per-dimension unitarity tolerance: ||U*U - I||_F <= n * kUnitaryTolerance.
inline constexpr double kUnitaryTolerance = 1e-8;
/// Phases within this distance of -pi are reported as +pi.
inline constexpr double kBranchSnap = 1e-12;

ComplexMatrix identity(Index n);

/// Square matrix with finite entries; throws DimensionMismatch / NotFinite.
void require_square_finite(const ComplexMatrix& a, const char* what);

/// Hermitian n x n matrix. The constructor accepts inputs that are Hermitian
/// up to ||A - A*||_F <= 1e-8 (1 + ||A||_F) and stores (A + A*)/2, so the
/// stored value is exactly self-adjoint.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a);

  static HermitianMatrix zero(Index n);
  static HermitianMatrix diagonal(const RealVector& d);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  /// Largest |eigenvalue|.
  double spectral_norm() const;
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator-() const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);
  friend HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }
  friend HermitianMatrix operator/(const HermitianMatrix& a, double s) { return (1.0 / s) * a; }
  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix a, Trusted) : m_(std::move(a)) {}

  ComplexMatrix m_;
};

/// n x n unitary matrix, checked at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(const ComplexMatrix& u);

  static UnitaryMatrix identity(Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  UnitaryMatrix adjoint() const;
  /// ||U*U - I||_F.
  double unitarity_defect() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  ComplexMatrix m_;
};

/// Singular values s_1 >= ... >= s_n >= 0.
struct SingularSpectrum {
  RealVector values;
};

struct HermitianEigen {
  RealVector values;  // non-increasing
  UnitaryMatrix vectors;
};

/// Spectral data of a unitary matrix: U = V diag(exp(i phase)) V*.
struct UnitaryEigen {
  RealVector phases;  // each in (-pi, pi]
  UnitaryMatrix vectors;
};

/// A = V diag(lambda) V* with lambda non-increasing. Within a block of equal
/// eigenvalues the columns are ordered by the index of their first non-zero
/// component, and every column is phase-fixed so that component is real
/// positive.
HermitianEigen hermitian_eig(const HermitianMatrix& a);

SingularSpectrum singular_values(const ComplexMatrix& t);

/// |T| = sqrt(T*T).
HermitianMatrix modulus(const ComplexMatrix& t);

/// exp(iX) for Hermitian X.
UnitaryMatrix exp_i(const HermitianMatrix& x);

/// Phases and eigenvectors of a unitary matrix from its complex Schur form.
UnitaryEigen unitary_eig(const UnitaryMatrix& u);

/// Hermitian Z with spectrum in (-pi, pi] and exp(iZ) = U. A phase at -pi
/// is reported as +pi.
HermitianMatrix principal_log(const UnitaryMatrix& u);

/// f(A) through the spectral theorem.
HermitianMatrix apply_spectral(const HermitianMatrix& a, const std::function<double(double)>& f);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& t);

}  // namespace unigeo
