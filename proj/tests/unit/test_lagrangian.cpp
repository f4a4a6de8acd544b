#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "test_support.hpp"
#include "unigeo/error.hpp"
#include "unigeo/grassmann.hpp"
#include "unigeo/lagrangian.hpp"
#include "unigeo/samplers.hpp"

namespace unigeo {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::vector<GaugeFunction> builtin_gauges() {
  return {GaugeFunction::schatten(1.0), GaugeFunction::schatten(2.0), GaugeFunction::schatten(3.0),
          GaugeFunction::schatten(kInfinity), GaugeFunction::ky_fan(1),   GaugeFunction::ky_fan(2)};
}

std::vector<Lagrangian> builtin_lagrangians() {
  std::vector<Lagrangian> ls{Lagrangian::energy()};
  for (const GaugeFunction& g : builtin_gauges()) ls.push_back(Lagrangian::norm(g));
  return ls;
}

RealVector normal_vector(Index n, CounterRng& rng) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

// Permutation, sign, homogeneity and triangle checks shared by every gauge.
void expect_gauge_axioms(const GaugeFunction& phi, Index n, CounterRng& rng, int pairs) {
  SCOPED_TRACE(phi.label());
  EXPECT_EQ(phi(RealVector::Zero(n)), 0.0);
  for (int i = 0; i < pairs; ++i) {
    const RealVector x = normal_vector(n, rng);
    const RealVector y = normal_vector(n, rng);
    const double fx = phi(x);
    EXPECT_GT(fx, 0.0);

    RealVector perm = x;
    for (Index k = n - 1; k > 0; --k) std::swap(perm(k), perm(static_cast<Index>(rng() % (k + 1))));
    EXPECT_NEAR(phi(perm), fx, 1e-12 * (1.0 + fx));

    RealVector flipped = x;
    for (Index k = 0; k < n; ++k) {
      if (rng() & 1u) flipped(k) = -flipped(k);
    }
    EXPECT_NEAR(phi(flipped), fx, 1e-12 * (1.0 + fx));

    const double t = 4.0 * rng.normal();
    EXPECT_NEAR(phi(RealVector(t * x)), std::abs(t) * fx, 1e-12 * (1.0 + std::abs(t) * fx));

    EXPECT_LE(phi(RealVector(x + y)), fx + phi(y) + 1e-12);
  }
}

TEST(GaugeFunction, ClosedValues) {
  const std::vector<double> a{3.0, 4.0};
  EXPECT_DOUBLE_EQ(gauge_eval(GaugeFunction::schatten(2.0), a), 5.0);
  const std::vector<double> b{1.0, -7.0, 2.0};
  EXPECT_DOUBLE_EQ(gauge_eval(GaugeFunction::ky_fan(1), b), 7.0);
  EXPECT_DOUBLE_EQ(gauge_eval(GaugeFunction::ky_fan(2), b), 9.0);
  EXPECT_DOUBLE_EQ(gauge_eval(GaugeFunction::schatten(kInfinity), b), 7.0);
  const std::vector<double> c{kPi / 2, kPi / 4};
  EXPECT_NEAR(gauge_eval(GaugeFunction::schatten(1.0), c), 3 * kPi / 4, 1e-15);
  const std::vector<double> d{1.0, 2.0};
  EXPECT_NEAR(gauge_eval(GaugeFunction::schatten(3.0), d), std::cbrt(9.0), 1e-15);
}

TEST(GaugeFunction, InvalidParameters) {
  EXPECT_THROW(GaugeFunction::schatten(0.5), Error);
  EXPECT_THROW(GaugeFunction::ky_fan(0), Error);
  const std::vector<double> x{1.0, 2.0};
  try {
    gauge_eval(GaugeFunction::ky_fan(3), x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGauge);
  }
}

TEST(GaugeFunction, NondegenerateFlags) {
  EXPECT_FALSE(GaugeFunction::schatten(1.0).nondegenerate());
  EXPECT_TRUE(GaugeFunction::schatten(2.0).nondegenerate());
  EXPECT_TRUE(GaugeFunction::schatten(1.5).nondegenerate());
  EXPECT_FALSE(GaugeFunction::schatten(kInfinity).nondegenerate());
  EXPECT_FALSE(GaugeFunction::ky_fan(2).nondegenerate());
}

TEST(GaugeFunction, AxiomsForBuiltins) {
  CounterRng rng = test::stream("gauge-axioms");
  for (const GaugeFunction& phi : builtin_gauges()) expect_gauge_axioms(phi, 5, rng, 1000);
}

TEST(GaugeFunction, PaddingAppendsZeros) {
  RealVector theta(2);
  theta << 0.3, -0.4;
  EXPECT_NEAR(GaugeFunction::schatten(2.0).evaluate_padded(theta, 6), 0.5, 1e-15);
  EXPECT_THROW(GaugeFunction::schatten(2.0).evaluate_padded(theta, 1), Error);
}

TEST(GaugeFunction, CustomAcceptsAGauge) {
  // max(|x|_inf, |x|_1 / 2) is a symmetric gauge function.
  const auto f = [](std::span<const double> x) {
    double mx = 0.0;
    double sum = 0.0;
    for (double v : x) {
      mx = std::max(mx, std::abs(v));
      sum += std::abs(v);
    }
    return std::max(mx, 0.5 * sum);
  };
  const GaugeFunction g = GaugeFunction::custom(f, "mixed", 4);
  EXPECT_EQ(g.kind(), GaugeFunction::Kind::Custom);
  const std::vector<double> x{1.0, -3.0, 2.0, 0.0};
  EXPECT_DOUBLE_EQ(g(x), 3.0);
}

TEST(GaugeFunction, CustomRejectsNonGauges) {
  const auto weighted = [](std::span<const double> x) { return std::abs(x[0]) + 2.0 * std::abs(x[1]); };
  EXPECT_THROW(GaugeFunction::custom(weighted, "weighted", 2), Error);
  const auto signed_sum = [](std::span<const double> x) { return std::abs(x[0] + x[1]); };
  EXPECT_THROW(GaugeFunction::custom(signed_sum, "signed", 2), Error);
  const auto squared = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  EXPECT_THROW(GaugeFunction::custom(squared, "squared", 2), Error);
}

TEST(InducedPsi, ClosedValues) {
  const std::vector<double> s1{3.0, 1.0};
  EXPECT_DOUBLE_EQ(induced_psi(GaugeFunction::schatten(1.0), 1)(s1), 2.0);
  const std::vector<double> s2{3.0, 1.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(induced_psi(GaugeFunction::ky_fan(1), 1)(s2), 2.0);
  // Unsorted input with signs: pairs are formed after sorting |s|.
  const std::vector<double> s3{0.0, -1.0, 5.0, 3.0};
  EXPECT_DOUBLE_EQ(induced_psi(GaugeFunction::schatten(1.0), 2)(s3), 4.0 + 0.5);
}

TEST(InducedPsi, RankTooLarge) {
  const std::vector<double> s{1.0, 2.0, 3.0};
  try {
    induced_psi(GaugeFunction::schatten(2.0), 2)(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankTooLarge);
  }
}

TEST(InducedPsi, IsItselfAGauge) {
  CounterRng rng = test::stream("psi-axioms");
  for (const GaugeFunction& phi : builtin_gauges()) expect_gauge_axioms(induced_psi(phi, 2), 6, rng, 300);
}

TEST(InducedPsi, CompressionIdentityOnTangentVectors) {
  // Z tangent at Q (Z = QZ + ZQ, i.e. Q-codiagonal): ||QZ||_phi = ||Z||_psi.
  CounterRng rng = test::stream("psi-tangent");
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 4 + static_cast<Index>(rng() % 5);
    const Index m = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(n / 2));
    const Projection q = sample_projection(n, m, rng);
    const ComplexMatrix c = identity(n) - q.matrix();
    const ComplexMatrix g = sample_ginibre(n, n, rng);
    const ComplexMatrix z = q.matrix() * g * c + c * g.adjoint() * q.matrix();
    for (const GaugeFunction& phi : builtin_gauges()) {
      const double lhs = norm_phi(phi, q.matrix() * z);
      const double rhs = induced_psi(phi, static_cast<int>(m))(singular_values(z).values);
      EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + lhs)) << phi.label() << " n=" << n << " m=" << m;
    }
  }
}

TEST(Lagrangian, ClosedValues) {
  EXPECT_DOUBLE_EQ(lagrangian_eval(Lagrangian::energy(), test::diag({1.0, 2.0})), 5.0);
  CounterRng rng = test::stream("lagrangian-unitary");
  const UnitaryMatrix u = sample_haar_unitary(5, rng);
  EXPECT_NEAR(lagrangian_eval(Lagrangian::norm(GaugeFunction::schatten(kInfinity)), u.matrix()), 1.0, 1e-12);
  EXPECT_NEAR(lagrangian_eval(Lagrangian::norm(GaugeFunction::ky_fan(1)), u.matrix()), 1.0, 1e-12);
  for (const Lagrangian& l : builtin_lagrangians()) EXPECT_EQ(l(ComplexMatrix::Zero(3, 3)), 0.0);
}

TEST(Lagrangian, Flags) {
  EXPECT_TRUE(Lagrangian::energy().strictly_convex());
  EXPECT_FALSE(Lagrangian::norm(GaugeFunction::schatten(2.0)).strictly_convex());
  EXPECT_TRUE(Lagrangian::norm(GaugeFunction::schatten(2.0)).nondegenerate());
  EXPECT_FALSE(Lagrangian::norm(GaugeFunction::schatten(1.0)).nondegenerate());
  EXPECT_EQ(Lagrangian::norm(GaugeFunction::ky_fan(1)).label(), "kyfan:1");
}

TEST(Lagrangian, UnitaryInvariance) {
  CounterRng rng = test::stream("lagrangian-invariance");
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 5);
    const ComplexMatrix a = sample_ginibre(n, n, rng);
    const ComplexMatrix uav =
        sample_haar_unitary(n, rng).matrix() * a * sample_haar_unitary(n, rng).matrix();
    for (const Lagrangian& l : builtin_lagrangians()) {
      const double v = l(a);
      EXPECT_NEAR(l(uav), v, 1e-10 * (1.0 + v)) << l.label();
      if (l.gauge() != nullptr) EXPECT_NEAR(v, (*l.gauge())(singular_values(uav).values), 1e-10 * (1.0 + v));
    }
  }
}

TEST(Lagrangian, ContractionAndMonotonicity) {
  CounterRng rng = test::stream("lagrangian-p2p3");
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const ComplexMatrix a = sample_ginibre(n, n, rng);
    const double t = rng.uniform();
    const ComplexMatrix ga = sample_ginibre(n, n, rng);
    const ComplexMatrix gc = sample_ginibre(n, n, rng);
    const ComplexMatrix psd_a = ga.adjoint() * ga;
    const ComplexMatrix psd_b = psd_a + gc.adjoint() * gc;
    for (const Lagrangian& l : builtin_lagrangians()) {
      EXPECT_LE(l(t * a), t * l(a) + 1e-12 * (1.0 + l(a))) << l.label();
      EXPECT_LE(l(psd_a), l(psd_b) + 1e-12 * (1.0 + l(psd_b))) << l.label();
    }
  }
}

TEST(Lagrangian, CustomSymmetricUsesSingularValues) {
  const auto f = [](std::span<const double> s) {
    double acc = 0.0;
    for (double v : s) acc += v * v * v * v;
    return acc;
  };
  const Lagrangian l = Lagrangian::custom_symmetric(f, "quartic", true, true);
  EXPECT_DOUBLE_EQ(l(test::diag({1.0, Complex(0.0, -2.0)})), 17.0);
  EXPECT_EQ(l.kind(), Lagrangian::Kind::Custom);
}

TEST(ConvexityProbe, IdentityAndRay) {
  CounterRng rng = test::stream("probe-ray");
  const HermitianMatrix b = sample_hermitian_sphere(3, 1.0, rng);
  for (const Lagrangian& l : builtin_lagrangians()) {
    const ConvexityProbe same = check_nondegenerate_witness(l, b, b, 0.3);
    EXPECT_NEAR(same.equality_gap, 0.0, 1e-12);
    EXPECT_TRUE(same.parallel);
    if (l.kind() == Lagrangian::Kind::Norm) {
      const ConvexityProbe ray = check_nondegenerate_witness(l, 2.0 * b, b, 0.5);
      EXPECT_NEAR(ray.equality_gap, 0.0, 1e-12) << l.label();
      EXPECT_TRUE(ray.parallel);
    }
  }
  EXPECT_FALSE(check_nondegenerate_witness(Lagrangian::energy(), -b, b, 0.5).parallel);
  EXPECT_THROW(check_nondegenerate_witness(Lagrangian::energy(), b, b, 1.0), Error);
}

TEST(ConvexityProbe, StrictConvexityOfEnergyAndFrobenius) {
  CounterRng rng = test::stream("probe-strict");
  for (int trial = 0; trial < 100; ++trial) {
    const HermitianMatrix a = sample_hermitian_sphere(3, 1.0 + rng.uniform(), rng);
    const HermitianMatrix b = sample_hermitian_sphere(3, 1.0 + rng.uniform(), rng);
    const ConvexityProbe e = check_nondegenerate_witness(Lagrangian::energy(), a, b, 0.5);
    EXPECT_GT(e.equality_gap, 0.0);
    EXPECT_FALSE(e.parallel);
    const ConvexityProbe f = check_nondegenerate_witness(Lagrangian::norm(GaugeFunction::schatten(2.0)), a, b, 0.5);
    EXPECT_GT(f.equality_gap, 0.0);
  }
}

TEST(ConvexityProbe, DegenerateNormsAdmitFlatWitnesses) {
  // Diagonal matrices with disjoint positive supports are flat for the trace
  // norm; sharing the top entry makes them flat for the spectral norm.
  const HermitianMatrix a(test::diag({1.0, 0.0, 0.0}));
  const HermitianMatrix b(test::diag({0.0, 1.0, 0.0}));
  const ConvexityProbe trace = check_nondegenerate_witness(Lagrangian::norm(GaugeFunction::schatten(1.0)), a, b, 0.5);
  EXPECT_NEAR(trace.equality_gap, 0.0, 1e-15);
  EXPECT_FALSE(trace.parallel);

  const HermitianMatrix c(test::diag({1.0, 0.5, 0.0}));
  const HermitianMatrix d(test::diag({1.0, 0.0, 0.5}));
  const ConvexityProbe spec = check_nondegenerate_witness(Lagrangian::norm(GaugeFunction::schatten(kInfinity)), c, d, 0.5);
  EXPECT_NEAR(spec.equality_gap, 0.0, 1e-15);
  EXPECT_FALSE(spec.parallel);

  const ConvexityProbe p2 = check_nondegenerate_witness(Lagrangian::norm(GaugeFunction::schatten(2.0)), a, b, 0.5);
  EXPECT_GT(p2.equality_gap, 0.1);
}

TEST(Parsing, Specifiers) {
  EXPECT_EQ(parse_gauge("schatten:1").label(), "schatten:1");
  EXPECT_EQ(parse_gauge("schatten:inf").label(), "schatten:inf");
  EXPECT_DOUBLE_EQ(parse_gauge("schatten:2.5").p(), 2.5);
  EXPECT_EQ(parse_gauge("kyfan:3").k(), 3);
  EXPECT_EQ(parse_lagrangian("energy").kind(), Lagrangian::Kind::Energy);
  EXPECT_EQ(parse_lagrangian("kyfan:1").kind(), Lagrangian::Kind::Norm);
  for (const char* bad : {"", "schatten", "schatten:", "schatten:abc", "schatten:1x", "kyfan:1.5", "frob", "energy:1",
                          "schatten:nan"}) {
    try {
      parse_lagrangian(bad);
      FAIL() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
  EXPECT_THROW(parse_gauge("energy"), Error);
  EXPECT_THROW(parse_gauge("schatten:0.5"), Error);
}

}  // namespace
}  // namespace unigeo
