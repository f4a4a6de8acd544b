#include "unigeo/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "unigeo/error.hpp"

namespace unigeo {

namespace {

// Eigenvalues of S_Q S_P with |phase| above pi - kClusterWidth belong to
// principal angles within kClusterWidth / 2 of pi/2.
constexpr double kClusterWidth = 1e-4;

void require_compatible(const Projection& p, const Projection& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "projections of different dimension");
  if (p.rank() != q.rank()) {
    throw Error(ErrorCode::RankMismatch,
                "ranks " + std::to_string(p.rank()) + " and " + std::to_string(q.rank()) + " differ");
  }
}

ComplexMatrix range_basis(const ComplexMatrix& compressed) {
  const HermitianEigen eig = hermitian_eig(HermitianMatrix(compressed));
  Index r = 0;
  while (r < eig.values.size() && eig.values(r) > 0.5) ++r;
  return eig.vectors.matrix().leftCols(r);
}

// Rotation generator inside an invariant subspace E (columns orthonormal)
// where every principal angle between the compressed ranges is near pi/2.
ComplexMatrix boundary_block(const ComplexMatrix& e, const ComplexMatrix& p, const ComplexMatrix& q) {
  const ComplexMatrix a = range_basis(e.adjoint() * p * e);
  const ComplexMatrix b = range_basis(e.adjoint() * q * e);
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::ConvergenceFailure, "boundary subspace does not split evenly between P and Q");
  }
  const Index k = e.cols();
  ComplexMatrix x_e = ComplexMatrix::Zero(k, k);
  if (a.cols() == 0) return x_e;

  Eigen::JacobiSVD<ComplexMatrix> svd(a.adjoint() * b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix av = a * svd.matrixU();
  const ComplexMatrix bv = b * svd.matrixV();
  for (Index j = 0; j < av.cols(); ++j) {
    const double cosine = std::min(svd.singularValues()(j), 1.0);
    Eigen::VectorXcd c = bv.col(j) - cosine * av.col(j);
    const double sine = c.norm();
    if (sine == 0.0) continue;
    c /= sine;
    const double theta = std::atan2(sine, cosine);
    // exp(theta (c a* - a c*)) sends a_j to cos(theta) a_j + sin(theta) c_j = b_j.
    x_e += Complex(0.0, -theta) * (c * av.col(j).adjoint() - av.col(j) * c.adjoint());
  }
  return e * x_e * e.adjoint();
}

}  // namespace

// ---------------------------------------------------------------------------
// Projection / Symmetry

Projection::Projection(const ComplexMatrix& p) {
  require_square_finite(p, "projection");
  const Index n = p.rows();
  if ((p - p.adjoint()).norm() > kProjectionTolerance * (1.0 + p.norm())) {
    throw Error(ErrorCode::NotProjection, "matrix is not self-adjoint");
  }
  p_ = 0.5 * (p + p.adjoint());
  const double idem = (p_ * p_ - p_).norm();
  if (idem > kProjectionTolerance) {
    throw Error(ErrorCode::NotProjection, "||P^2 - P||_F = " + std::to_string(idem));
  }
  const HermitianEigen eig = hermitian_eig(HermitianMatrix(p_));
  for (Index k = 0; k < n; ++k) {
    if (eig.values(k) > 0.1 && eig.values(k) < 0.9) {
      throw Error(ErrorCode::NotProjection, "eigenvalue " + std::to_string(eig.values(k)) + " is neither 0 nor 1");
    }
    if (eig.values(k) > 0.5) ++m_;
  }
  if (m_ < 1 || m_ > n - 1) throw Error(ErrorCode::NotProjection, "rank must lie in [1, n-1]");
  const double trace = p_.trace().real();
  if (std::abs(trace - static_cast<double>(m_)) > 1e-6) {
    throw Error(ErrorCode::NotProjection, "trace " + std::to_string(trace) + " is not an integer rank");
  }
  basis_ = eig.vectors.matrix().leftCols(m_);
}

Projection Projection::conjugated(const UnitaryMatrix& u) const {
  if (u.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "conjugating unitary");
  return Projection(u.matrix() * p_ * u.matrix().adjoint());
}

Projection Projection::complement() const { return Projection(identity(dim()) - p_); }

Symmetry::Symmetry(const UnitaryMatrix& s) : s_(s) {
  const ComplexMatrix& m = s_.matrix();
  if ((m - m.adjoint()).norm() > kProjectionTolerance) {
    throw Error(ErrorCode::NotProjection, "symmetry is not self-adjoint");
  }
  if ((m * m - identity(m.rows())).norm() > kProjectionTolerance) {
    throw Error(ErrorCode::NotProjection, "symmetry is not an involution");
  }
}

Projection projection_from_basis(const ComplexMatrix& columns) {
  if (columns.rows() == 0 || columns.cols() == 0 || !columns.allFinite()) {
    throw Error(ErrorCode::NotOrthonormal, "basis must be a non-empty finite n x m matrix");
  }
  const double defect = (columns.adjoint() * columns - identity(columns.cols())).norm();
  if (defect > kProjectionTolerance) {
    throw Error(ErrorCode::NotOrthonormal, "||B*B - I||_F = " + std::to_string(defect));
  }
  return Projection(columns * columns.adjoint());
}

Symmetry to_symmetry(const Projection& p) {
  return Symmetry(UnitaryMatrix(2.0 * p.matrix() - identity(p.dim())));
}

// ---------------------------------------------------------------------------
// Direct rotation and angles

DirectRotation direct_rotation(const Projection& p, const Projection& q) {
  require_compatible(p, q);
  const Index n = p.dim();
  const UnitaryMatrix reflection_product = to_symmetry(q).unitary() * to_symmetry(p).unitary();
  const UnitaryEigen eig = unitary_eig(reflection_product);
  const ComplexMatrix& v = eig.vectors.matrix();

  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  std::vector<Index> cluster;
  for (Index k = 0; k < n; ++k) {
    if (std::abs(eig.phases(k)) > kPi - kClusterWidth) {
      cluster.push_back(k);
    } else {
      x += (0.5 * eig.phases(k)) * v.col(k) * v.col(k).adjoint();
    }
  }
  if (!cluster.empty()) {
    ComplexMatrix e(n, static_cast<Index>(cluster.size()));
    for (std::size_t j = 0; j < cluster.size(); ++j) e.col(static_cast<Index>(j)) = v.col(cluster[j]);
    x += boundary_block(e, p.matrix(), q.matrix());
  }

  const bool boundary = spectral_norm(p.matrix() - q.matrix()) >= 1.0 - 1e-9;
  return {HermitianMatrix(x), boundary};
}

PrincipalAngles principal_angles(const Projection& p, const Projection& q) {
  require_compatible(p, q);
  const Index m = p.rank();
  const ComplexMatrix& a = p.basis();
  const ComplexMatrix& b = q.basis();

  Eigen::JacobiSVD<ComplexMatrix> cos_svd(a.adjoint() * b);
  Eigen::JacobiSVD<ComplexMatrix> sin_svd(b - a * (a.adjoint() * b));
  const RealVector& cosines = cos_svd.singularValues();  // non-increasing
  const RealVector& sines = sin_svd.singularValues();    // non-increasing

  RealVector theta(m);
  for (Index i = 0; i < m; ++i) {
    // i-th largest cosine pairs with the i-th smallest sine.
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines(m - 1 - i), 0.0, 1.0);
    theta(m - 1 - i) = c > std::sqrt(0.5) ? std::asin(s) : std::acos(c);
  }
  return {theta};
}

double angular_metric(const GaugeFunction& phi, const Projection& p, const Projection& q) {
  return phi.evaluate_padded(principal_angles(p, q).theta, p.dim());
}

double codiagonal_defect(const Projection& p, const HermitianMatrix& x) {
  if (x.dim() != p.dim()) throw Error(ErrorCode::DimensionMismatch, "tangent vector dimension");
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix comp = identity(p.dim()) - pm;
  return (pm * x.matrix() * pm).norm() + (comp * x.matrix() * comp).norm();
}

Projection grassmann_geodesic(const Projection& p, const HermitianMatrix& x, double t) {
  const double defect = codiagonal_defect(p, x);
  if (defect > kCodiagonalTolerance) {
    throw Error(ErrorCode::NotCodiagonal, "codiagonal defect " + std::to_string(defect));
  }
  if (!std::isfinite(t)) throw Error(ErrorCode::OutOfDomain, "t must be finite");
  return p.conjugated(exp_i(t * x));
}

double grassmann_distance(const GaugeFunction& phi, const Projection& p, const Projection& q) {
  return norm_phi(phi, direct_rotation(p, q).generator.matrix());
}

PsiEquivalence psi_distance_equivalence(const GaugeFunction& phi, const Projection& p, const Projection& q) {
  require_compatible(p, q);
  const Index m = p.rank();
  if (2 * m > p.dim()) {
    throw Error(ErrorCode::RankTooLarge, "2m > n; compare the complements I - P and I - Q instead");
  }
  const GaugeFunction psi = induced_psi(phi, static_cast<int>(m));
  const double d_psi = psi(singular_values(direct_rotation(p, q).generator.matrix()).values);
  const double rho = angular_metric(phi, p, q);
  return {d_psi, rho, std::abs(d_psi - rho)};
}

}  // namespace unigeo
