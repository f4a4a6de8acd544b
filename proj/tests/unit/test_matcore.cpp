#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "unigeo/error.hpp"
#include "unigeo/matcore.hpp"
#include "unigeo/samplers.hpp"

namespace unigeo {
namespace {

using test::cis;
using test::diag;
using test::frob;

TEST(HermitianMatrix, SymmetrizesAndRejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, Complex(2.0, 1e-12), Complex(2.0, 0.0), 3.0;
  const HermitianMatrix h(a);
  EXPECT_EQ(h.matrix(), h.matrix().adjoint());

  a(0, 1) = Complex(2.0, 1.0);
  try {
    HermitianMatrix bad(a);
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(HermitianMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), Error);
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianMatrix{a}, Error);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  try {
    UnitaryMatrix bad(2.0 * ComplexMatrix::Identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(HermitianEig, ZeroMatrix) {
  const HermitianEigen e = hermitian_eig(HermitianMatrix::zero(3));
  EXPECT_EQ(e.values, RealVector::Zero(3));
  EXPECT_LT(frob(e.vectors.matrix(), ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(HermitianEig, DiagonalIsSortedWithPermutationVectors) {
  const HermitianEigen e = hermitian_eig(HermitianMatrix(diag({1.0, 5.0, -2.0})));
  EXPECT_DOUBLE_EQ(e.values(0), 5.0);
  EXPECT_DOUBLE_EQ(e.values(1), 1.0);
  EXPECT_DOUBLE_EQ(e.values(2), -2.0);
  ComplexMatrix perm = ComplexMatrix::Zero(3, 3);
  perm(1, 0) = 1.0;
  perm(0, 1) = 1.0;
  perm(2, 2) = 1.0;
  EXPECT_LT(frob(e.vectors.matrix(), perm), 1e-14);
}

TEST(HermitianEig, TiesArePhaseFixedAndOrdered) {
  const HermitianEigen e = hermitian_eig(HermitianMatrix(diag({2.0, 2.0, 2.0})));
  EXPECT_LT(frob(e.vectors.matrix(), ComplexMatrix::Identity(3, 3)), 1e-14);
  for (Index j = 0; j < 3; ++j) {
    Index first = 0;
    while (std::abs(e.vectors.matrix()(first, j)) <= 1e-10) ++first;
    EXPECT_GT(e.vectors.matrix()(first, j).real(), 0.0);
    EXPECT_NEAR(e.vectors.matrix()(first, j).imag(), 0.0, 1e-15);
  }
}

TEST(HermitianEig, RandomReconstruction) {
  CounterRng rng = test::stream("eig-recon");
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const HermitianMatrix a = sample_hermitian_sphere(n, 1.0 + 5.0 * rng.uniform(), rng);
    const HermitianEigen e = hermitian_eig(a);
    for (Index i = 1; i < n; ++i) EXPECT_GE(e.values(i - 1), e.values(i));
    const ComplexMatrix& v = e.vectors.matrix();
    const ComplexMatrix recon = v * e.values.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LE(frob(recon, a.matrix()), 1e-12 * a.frobenius_norm());
    EXPECT_LE(e.vectors.unitarity_defect(), 1e-12);
  }
}

TEST(SingularValues, Closed) {
  const RealVector s1 = singular_values(ComplexMatrix::Identity(2, 2)).values;
  EXPECT_DOUBLE_EQ(s1(0), 1.0);
  EXPECT_DOUBLE_EQ(s1(1), 1.0);
  const RealVector s2 = singular_values(diag({3.0, Complex(0.0, -4.0)})).values;
  EXPECT_DOUBLE_EQ(s2(0), 4.0);
  EXPECT_DOUBLE_EQ(s2(1), 3.0);
}

TEST(SingularValues, MatchGramSpectrumAndUnitaryInvariance) {
  CounterRng rng = test::stream("svd-gram");
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 7);
    const ComplexMatrix t = sample_ginibre(n, n, rng);
    const RealVector s = singular_values(t).values;
    const RealVector gram = hermitian_eig(HermitianMatrix(t.adjoint() * t)).values;
    for (Index i = 0; i < n; ++i) {
      EXPECT_NEAR(s(i), std::sqrt(std::max(gram(i), 0.0)), 1e-10);
      if (i > 0) EXPECT_GE(s(i - 1), s(i));
      EXPECT_GE(s(i), 0.0);
    }
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const UnitaryMatrix v = sample_haar_unitary(n, rng);
    const RealVector s_uv = singular_values(u.matrix() * t * v.matrix()).values;
    EXPECT_LE((s - s_uv).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Modulus, Closed) {
  CounterRng rng = test::stream("modulus-closed");
  const UnitaryMatrix u = sample_haar_unitary(4, rng);
  EXPECT_LT(frob(modulus(u.matrix()).matrix(), ComplexMatrix::Identity(4, 4)), 1e-12);
  EXPECT_LT(frob(modulus(diag({-2.0, Complex(0.0, 3.0)})).matrix(), diag({2.0, 3.0})), 1e-14);
}

TEST(Modulus, SquareAndSpectrum) {
  CounterRng rng = test::stream("modulus-random");
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const ComplexMatrix t = sample_ginibre(n, n, rng);
    const HermitianMatrix m = modulus(t);
    const ComplexMatrix gram = t.adjoint() * t;
    EXPECT_LE(frob(m.matrix() * m.matrix(), gram), 1e-10 * gram.norm());
    const RealVector ev = hermitian_eig(m).values;
    const RealVector s = singular_values(t).values;
    EXPECT_LE((ev - s).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GE(ev.minCoeff(), -1e-12);
  }
}

TEST(ExpI, Closed) {
  EXPECT_LT(frob(exp_i(HermitianMatrix::zero(3)).matrix(), ComplexMatrix::Identity(3, 3)), 1e-15);
  const UnitaryMatrix e = exp_i(HermitianMatrix(diag({kPi / 2, -kPi / 3})));
  EXPECT_LT(frob(e.matrix(), diag({Complex(0.0, 1.0), cis(-kPi / 3)})), 1e-15);
}

TEST(ExpI, GroupInverseAndIsometry) {
  CounterRng rng = test::stream("exp-inverse");
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const HermitianMatrix x = sample_hermitian_sphere(n, 10.0 * rng.uniform(), rng);
    const ComplexMatrix prod = exp_i(x).matrix() * exp_i(-x).matrix();
    EXPECT_LE(frob(prod, ComplexMatrix::Identity(n, n)), 1e-10);
    EXPECT_LE(frob(modulus(exp_i(x).matrix()).matrix(), ComplexMatrix::Identity(n, n)), 1e-10);
  }
}

TEST(PrincipalLog, Closed) {
  EXPECT_LT(principal_log(UnitaryMatrix::identity(3)).matrix().norm(), 1e-15);
  const HermitianMatrix z = principal_log(UnitaryMatrix(diag({cis(kPi / 2), cis(-kPi / 3)})));
  EXPECT_LT(frob(z.matrix(), diag({kPi / 2, -kPi / 3})), 1e-14);
}

TEST(PrincipalLog, MinusIdentityUsesPlusPi) {
  const HermitianMatrix z = principal_log(UnitaryMatrix(-ComplexMatrix::Identity(2, 2)));
  const RealVector ev = hermitian_eig(z).values;
  EXPECT_DOUBLE_EQ(ev(0), kPi);
  EXPECT_DOUBLE_EQ(ev(1), kPi);
}

TEST(PrincipalLog, PhaseJustBelowMinusPiSnapsToPlusPi) {
  // exp(-i pi) computed in floating point lands a hair away from -1.
  const UnitaryMatrix u(diag({Complex(-1.0, -1e-16), 1.0}));
  const RealVector ev = hermitian_eig(principal_log(u)).values;
  EXPECT_DOUBLE_EQ(ev(0), kPi);
}

TEST(PrincipalLog, RoundTripInsideBranch) {
  CounterRng rng = test::stream("log-roundtrip");
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const HermitianMatrix x = sample_hermitian_ball(n, 0.9 * kPi, rng);
    const HermitianMatrix z = principal_log(exp_i(x));
    EXPECT_LE(frob(z.matrix(), x.matrix()), 1e-9);
    EXPECT_LE(z.spectral_norm(), kPi);
  }
}

TEST(PrincipalLog, ExpOfLogForHaarUnitaries) {
  CounterRng rng = test::stream("exp-log");
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const HermitianMatrix z = principal_log(u);
    EXPECT_LE(frob(exp_i(z).matrix(), u.matrix()), 1e-10 * std::sqrt(static_cast<double>(n)));
    const RealVector ev = hermitian_eig(z).values;
    EXPECT_LE(ev(0), kPi);
    EXPECT_GT(ev(n - 1), -kPi);
  }
}

TEST(UnitaryEig, PhasesInBranch) {
  CounterRng rng = test::stream("unitary-eig");
  const UnitaryMatrix u = sample_haar_unitary(6, rng);
  const UnitaryEigen e = unitary_eig(u);
  const ComplexMatrix& v = e.vectors.matrix();
  ComplexMatrix d = ComplexMatrix::Zero(6, 6);
  for (Index k = 0; k < 6; ++k) {
    EXPECT_GT(e.phases(k), -kPi);
    EXPECT_LE(e.phases(k), kPi);
    d(k, k) = cis(e.phases(k));
  }
  EXPECT_LE(frob(v * d * v.adjoint(), u.matrix()), 1e-12);
}

TEST(ApplySpectral, SquareRootSquares) {
  CounterRng rng = test::stream("apply-spectral");
  const ComplexMatrix g = sample_ginibre(4, 4, rng);
  const HermitianMatrix psd(g.adjoint() * g);
  const HermitianMatrix r = apply_spectral(psd, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  EXPECT_LE(frob(r.matrix() * r.matrix(), psd.matrix()), 1e-10 * psd.frobenius_norm());
}

TEST(SpectralNorm, Rectangular) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 3);
  a(0, 2) = Complex(0.0, 7.0);
  a(1, 0) = 2.0;
  EXPECT_DOUBLE_EQ(spectral_norm(a), 7.0);
}

}  // namespace
}  // namespace unigeo
