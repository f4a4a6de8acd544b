#pragma once

// Orthogonal projections as points of the Grassmann manifold G_{m,n},
// direct rotations between them, principal angles and the angular metrics
// rho_phi(P, Q) = phi(theta_1, ..., theta_m, 0, ..., 0).

#include "unigeo/lagrangian.hpp"
#include "unigeo/matcore.hpp"

namespace unigeo {

inline constexpr double kProjectionTolerance = 1e-8;
inline constexpr double kCodiagonalTolerance = 1e-8;

/// Orthogonal projection of rank 1 <= m <= n-1.
///
/// Construction checks P* = P, ||P^2 - P||_F <= 1e-8, that no eigenvalue
/// lies in (0.1, 0.9), and tr(P) = m within 1e-6 where m counts the
/// eigenvalues above 1/2.
class Projection {
 public:
  explicit Projection(const ComplexMatrix& p);

  const ComplexMatrix& matrix() const noexcept { return p_; }
  Index dim() const noexcept { return p_.rows(); }
  Index rank() const noexcept { return m_; }
  /// Orthonormal basis of the range (n x m).
  const ComplexMatrix& basis() const noexcept { return basis_; }

  /// U P U*.
  Projection conjugated(const UnitaryMatrix& u) const;
  /// I - P.
  Projection complement() const;

 private:
  ComplexMatrix p_;
  ComplexMatrix basis_;
  Index m_ = 0;
};

/// Hermitian unitary S = 2P - I.
class Symmetry {
 public:
  explicit Symmetry(const UnitaryMatrix& s);

  const UnitaryMatrix& unitary() const noexcept { return s_; }
  const ComplexMatrix& matrix() const noexcept { return s_.matrix(); }

 private:
  UnitaryMatrix s_;
};

/// P = B B* for a basis B (n x m) with orthonormal columns.
Projection projection_from_basis(const ComplexMatrix& columns);

Symmetry to_symmetry(const Projection& p);

struct DirectRotation {
  /// P-codiagonal X with ||X|| <= pi/2 and Q = e^{iX} P e^{-iX}.
  HermitianMatrix generator;
  /// ||P - Q|| >= 1 - 1e-9: some angle is (nearly) pi/2 and X is not unique.
  bool boundary_non_unique = false;
};

/// X = log(S_Q S_P) / 2. The eigenvalues of S_Q S_P close to -1 (principal
/// angles near pi/2) are handled by an explicit rotation inside their
/// invariant subspace, so X stays codiagonal at the boundary.
DirectRotation direct_rotation(const Projection& p, const Projection& q);

/// Principal angles theta_1 >= ... >= theta_m in [0, pi/2].
struct PrincipalAngles {
  RealVector theta;
};

/// Angles whose cosines are the m largest singular values of PQ. Sines from
/// (I - P)Q are used for the small angles, where arccos loses accuracy.
PrincipalAngles principal_angles(const Projection& p, const Projection& q);

/// rho_phi(P, Q) = phi(theta_1, ..., theta_m, 0, ..., 0).
double angular_metric(const GaugeFunction& phi, const Projection& p, const Projection& q);

/// e^{itX} P e^{-itX}; X must be P-codiagonal (X = PX + XP).
Projection grassmann_geodesic(const Projection& p, const HermitianMatrix& x, double t);

/// ||PXP||_F + ||(I-P) X (I-P)||_F.
double codiagonal_defect(const Projection& p, const HermitianMatrix& x);

/// ||direct_rotation(P, Q)||_phi.
double grassmann_distance(const GaugeFunction& phi, const Projection& p, const Projection& q);

struct PsiEquivalence {
  double d_psi;
  double rho_phi;
  double gap;
};

/// Compares the rectifiable distance of the induced psi norm with rho_phi.
/// Requires 2m <= n; for larger ranks pass the complements I - P, I - Q.
PsiEquivalence psi_distance_equivalence(const GaugeFunction& phi, const Projection& p, const Projection& q);

}  // namespace unigeo
