#include "unigeo/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "unigeo/error.hpp"

namespace unigeo {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kLeadingComponent = 1e-10;

Index leading_index(const Eigen::Ref<const Eigen::VectorXcd>& v) {
  for (Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > kLeadingComponent) return k;
  }
  return v.size();
}

}  // namespace

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be a non-empty square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) throw Error(ErrorCode::NotFinite, std::string(what) + " has non-finite entries");
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  require_square_finite(a, "Hermitian matrix");
  const double asym = (a - a.adjoint()).norm();
  if (asym > kHermitianTolerance * (1.0 + a.norm())) {
    throw Error(ErrorCode::NotHermitian, "||A - A*||_F = " + std::to_string(asym));
  }
  m_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index n) { return {ComplexMatrix::Zero(n, n), Trusted{}}; }

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return {d.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{}};
}

double HermitianMatrix::spectral_norm() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

HermitianMatrix HermitianMatrix::operator-() const { return {-m_, Trusted{}}; }

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return {s * a.m_, HermitianMatrix::Trusted{}};
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "Hermitian sum");
  return {a.m_ + b.m_, HermitianMatrix::Trusted{}};
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "Hermitian difference");
  return {a.m_ - b.m_, HermitianMatrix::Trusted{}};
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(const ComplexMatrix& u) : m_(u) {
  require_square_finite(m_, "unitary matrix");
  const double defect = unitarity_defect();
  if (defect > static_cast<double>(m_.rows()) * kUnitaryTolerance) {
    throw Error(ErrorCode::NotUnitary, "||U*U - I||_F = " + std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index n) { return UnitaryMatrix(unigeo::identity(n)); }

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint()); }

double UnitaryMatrix::unitarity_defect() const {
  return (m_.adjoint() * m_ - unigeo::identity(m_.rows())).norm();
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "unitary product");
  return UnitaryMatrix(a.m_ * b.m_);
}

// ---------------------------------------------------------------------------
// Spectral routines

HermitianEigen hermitian_eig(const HermitianMatrix& a) {
  const Index n = a.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver");

  // Eigen returns ascending order; flip to non-increasing and phase-fix.
  RealVector values = es.eigenvalues().reverse();
  ComplexMatrix vectors = es.eigenvectors().rowwise().reverse();
  for (Index j = 0; j < n; ++j) {
    const Index k = leading_index(vectors.col(j));
    if (k < n) vectors.col(j) *= std::conj(vectors(k, j)) / std::abs(vectors(k, j));
  }

  const double scale = 1.0 + values.cwiseAbs().maxCoeff();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  for (Index begin = 0; begin < n;) {
    Index end = begin + 1;
    while (end < n && values(begin) - values(end) <= kTieTolerance * scale) ++end;
    std::stable_sort(order.begin() + begin, order.begin() + end, [&](Index x, Index y) {
      return leading_index(vectors.col(x)) < leading_index(vectors.col(y));
    });
    begin = end;
  }

  ComplexMatrix sorted(n, n);
  for (Index j = 0; j < n; ++j) sorted.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  return {std::move(values), UnitaryMatrix(sorted)};
}

SingularSpectrum singular_values(const ComplexMatrix& t) {
  require_square_finite(t, "matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return {svd.singularValues()};
}

HermitianMatrix modulus(const ComplexMatrix& t) {
  require_square_finite(t, "matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(t, Eigen::ComputeFullV);
  const ComplexMatrix& v = svd.matrixV();
  return HermitianMatrix(v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint());
}

UnitaryMatrix exp_i(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x.matrix());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver");
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
  const ComplexMatrix& v = es.eigenvectors();
  return UnitaryMatrix(v * phases.asDiagonal() * v.adjoint());
}

UnitaryEigen unitary_eig(const UnitaryMatrix& u) {
  // A unitary matrix is normal, so its Schur form is diagonal up to round-off
  // and the Schur vectors are an orthonormal eigenbasis even for clusters.
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix());
  if (schur.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "complex Schur");
  const ComplexMatrix& t = schur.matrixT();
  RealVector phases(u.dim());
  for (Index k = 0; k < u.dim(); ++k) {
    Complex lambda = t(k, k);
    const double r = std::abs(lambda);
    if (r > 0.0) lambda /= r;
    double phase = std::atan2(lambda.imag(), lambda.real());
    if (phase <= -kPi + kBranchSnap) phase = kPi;
    phases(k) = phase;
  }
  return {std::move(phases), UnitaryMatrix(schur.matrixU())};
}

HermitianMatrix principal_log(const UnitaryMatrix& u) {
  const UnitaryEigen eig = unitary_eig(u);
  const ComplexMatrix& v = eig.vectors.matrix();
  return HermitianMatrix(v * eig.phases.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix apply_spectral(const HermitianMatrix& a, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver");
  const RealVector mapped = es.eigenvalues().unaryExpr(f);
  const ComplexMatrix& v = es.eigenvectors();
  return HermitianMatrix(v * mapped.cast<Complex>().asDiagonal() * v.adjoint());
}

double spectral_norm(const ComplexMatrix& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return svd.singularValues()(0);
}

}  // namespace unigeo
