#include "unigeo/samplers.hpp"

#include <cmath>

#include "unigeo/error.hpp"

namespace unigeo {

ComplexMatrix sample_ginibre(Index rows, Index cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  const double s = std::sqrt(0.5);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

UnitaryMatrix sample_haar_unitary(Index n, CounterRng& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "dimension must be >= 1");
  const Eigen::HouseholderQR<ComplexMatrix> qr(sample_ginibre(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrix(q);
}

HermitianMatrix sample_hermitian_sphere(Index n, double norm, CounterRng& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "dimension must be >= 1");
  if (!(norm >= 0.0)) throw Error(ErrorCode::InvalidConfig, "norm must be non-negative");
  const ComplexMatrix g = sample_ginibre(n, n, rng);
  HermitianMatrix h(0.5 * (g + g.adjoint()));
  const double current = h.spectral_norm();
  if (current == 0.0) return HermitianMatrix::zero(n);
  return (norm / current) * h;
}

HermitianMatrix sample_hermitian_ball(Index n, double radius, CounterRng& rng) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidConfig, "radius must be positive");
  const double u = 1.0 - rng.uniform();
  return sample_hermitian_sphere(n, radius * u, rng);
}

Projection sample_projection(Index n, Index m, CounterRng& rng) {
  if (m < 1 || m > n - 1) throw Error(ErrorCode::InvalidConfig, "rank must lie in [1, n-1]");
  const UnitaryMatrix u = sample_haar_unitary(n, rng);
  return projection_from_basis(u.matrix().leftCols(m));
}

}  // namespace unigeo
