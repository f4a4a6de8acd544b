#include "unigeo/lagrangian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "unigeo/error.hpp"

namespace unigeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_real(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double schatten_value(std::span<const double> x, double p) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  if (std::isinf(p)) return peak;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the peak so large p cannot overflow.
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(s, 1.0 / p);
}

std::vector<double> sorted_abs(std::span<const double> x) {
  std::vector<double> a(x.size());
  std::transform(x.begin(), x.end(), a.begin(), [](double v) { return std::abs(v); });
  std::sort(a.begin(), a.end(), std::greater<>());
  return a;
}

std::span<const double> as_span(const RealVector& x) {
  return {x.data(), static_cast<std::size_t>(x.size())};
}

void require_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NotFinite, "gauge argument has non-finite entries");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GaugeFunction

GaugeFunction GaugeFunction::schatten(double p) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::InvalidGauge, "Schatten exponent must be >= 1");
  const bool strictly_convex_norm = p > 1.0 && !std::isinf(p);
  return {Schatten{p}, "schatten:" + format_real(p), strictly_convex_norm};
}

GaugeFunction GaugeFunction::ky_fan(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidGauge, "Ky Fan order must be >= 1");
  return {KyFan{k}, "kyfan:" + std::to_string(k), false};
}

GaugeFunction GaugeFunction::custom(Evaluator f, std::string label, Index dim, bool nondegenerate,
                                    std::uint64_t seed) {
  if (!f) throw Error(ErrorCode::InvalidGauge, "custom gauge without evaluator");
  if (dim < 1) throw Error(ErrorCode::InvalidGauge, "custom gauge needs a sampling dimension >= 1");
  GaugeFunction g{Custom{std::move(f)}, std::move(label), nondegenerate};

  const auto n = static_cast<std::size_t>(dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  auto draw = [&] {
    std::vector<double> v(n);
    for (double& e : v) e = normal(rng);
    return v;
  };
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidGauge, g.label() + ": " + why);
  };

  const std::vector<double> zero(n, 0.0);
  if (std::abs(g(zero)) > 1e-12) fail("phi(0) != 0");
  constexpr int kSamples = 200;
  for (int i = 0; i < kSamples; ++i) {
    std::vector<double> x = draw();
    const std::vector<double> y = draw();
    const double fx = g(x);
    const double tol = 1e-9 * (1.0 + std::abs(fx));
    if (!(fx > 0.0)) fail("not positive on a non-zero vector");

    std::vector<double> perm = x;
    std::shuffle(perm.begin(), perm.end(), rng);
    if (std::abs(g(perm) - fx) > tol) fail("not rearrangement invariant");

    std::vector<double> flipped = x;
    for (double& e : flipped) {
      if (unit(rng) < 0.5) e = -e;
    }
    if (std::abs(g(flipped) - fx) > tol) fail("depends on signs");

    std::vector<double> sum(n);
    for (std::size_t j = 0; j < n; ++j) sum[j] = x[j] + y[j];
    const double fy = g(y);
    if (g(sum) > fx + fy + 1e-9 * (1.0 + fx + fy)) fail("violates the triangle inequality");

    const double t = 3.0 * unit(rng);
    for (double& e : x) e *= t;
    if (std::abs(g(x) - t * fx) > 1e-9 * (1.0 + t * fx)) fail("not absolutely homogeneous");
  }
  return g;
}

double GaugeFunction::operator()(std::span<const double> x) const {
  require_finite(x);
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Schatten>) {
          return schatten_value(x, r.p);
        } else if constexpr (std::is_same_v<T, KyFan>) {
          if (static_cast<std::size_t>(r.k) > x.size()) {
            throw Error(ErrorCode::InvalidGauge, label_ + " on a vector of length " + std::to_string(x.size()));
          }
          const std::vector<double> a = sorted_abs(x);
          return std::accumulate(a.begin(), a.begin() + r.k, 0.0);
        } else if constexpr (std::is_same_v<T, Induced>) {
          const auto m = static_cast<std::size_t>(r.m);
          if (2 * m > x.size()) {
            throw Error(ErrorCode::RankTooLarge, label_ + " needs at least " + std::to_string(2 * m) + " values");
          }
          const std::vector<double> a = sorted_abs(x);
          std::vector<double> paired(x.size(), 0.0);
          for (std::size_t i = 0; i < m; ++i) paired[i] = 0.5 * (a[2 * i] + a[2 * i + 1]);
          return (*r.base)(paired);
        } else {
          return r.f(x);
        }
      },
      rep_);
}

double GaugeFunction::operator()(const RealVector& x) const { return (*this)(as_span(x)); }

double GaugeFunction::evaluate_padded(const RealVector& x, Index n) const {
  if (x.size() > n) throw Error(ErrorCode::DimensionMismatch, "padded gauge argument longer than n");
  RealVector padded = RealVector::Zero(n);
  padded.head(x.size()) = x;
  return (*this)(padded);
}

GaugeFunction::Kind GaugeFunction::kind() const noexcept {
  switch (rep_.index()) {
    case 0: return Kind::Schatten;
    case 1: return Kind::KyFan;
    case 2: return Kind::Induced;
    default: return Kind::Custom;
  }
}

double GaugeFunction::p() const {
  if (const auto* s = std::get_if<Schatten>(&rep_)) return s->p;
  throw Error(ErrorCode::InvalidGauge, label_ + " is not a Schatten gauge");
}

int GaugeFunction::k() const {
  if (const auto* s = std::get_if<KyFan>(&rep_)) return s->k;
  throw Error(ErrorCode::InvalidGauge, label_ + " is not a Ky Fan gauge");
}

double gauge_eval(const GaugeFunction& phi, std::span<const double> x) { return phi(x); }

double norm_phi(const GaugeFunction& phi, const ComplexMatrix& a) {
  if (phi.kind() == GaugeFunction::Kind::Schatten && phi.p() == 2.0) {
    require_square_finite(a, "matrix");
    return a.norm();
  }
  return phi(singular_values(a).values);
}

GaugeFunction induced_psi(const GaugeFunction& phi, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidGauge, "induced gauge needs m >= 1");
  auto base = std::make_shared<const GaugeFunction>(phi);
  std::string label = "psi[" + phi.label() + ",m=" + std::to_string(m) + "]";
  return {GaugeFunction::Induced{std::move(base), m}, std::move(label), false};
}

// ---------------------------------------------------------------------------
// Lagrangian

Lagrangian Lagrangian::norm(GaugeFunction phi) {
  Lagrangian l;
  l.kind_ = Kind::Norm;
  l.label_ = phi.label();
  l.nondegenerate_ = phi.nondegenerate();
  l.strictly_convex_ = false;  // no norm is strictly convex along rays
  l.gauge_ = std::make_shared<const GaugeFunction>(std::move(phi));
  return l;
}

Lagrangian Lagrangian::energy() {
  Lagrangian l;
  l.kind_ = Kind::Energy;
  l.label_ = "energy";
  l.strictly_convex_ = true;
  l.nondegenerate_ = true;
  return l;
}

Lagrangian Lagrangian::custom_symmetric(Evaluator f, std::string label, bool strictly_convex,
                                        bool nondegenerate) {
  if (!f) throw Error(ErrorCode::InvalidGauge, "custom Lagrangian without evaluator");
  Lagrangian l;
  l.kind_ = Kind::Custom;
  l.custom_ = std::move(f);
  l.label_ = std::move(label);
  l.strictly_convex_ = strictly_convex;
  l.nondegenerate_ = nondegenerate || strictly_convex;
  return l;
}

double Lagrangian::operator()(const ComplexMatrix& a) const {
  switch (kind_) {
    case Kind::Energy:
      require_square_finite(a, "matrix");
      return a.squaredNorm();  // sum of s_i^2
    case Kind::Norm:
      return norm_phi(*gauge_, a);
    case Kind::Custom: {
      const RealVector s = singular_values(a).values;
      return custom_(as_span(s));
    }
  }
  return 0.0;
}

double lagrangian_eval(const Lagrangian& l, const ComplexMatrix& a) { return l(a); }

ConvexityProbe check_nondegenerate_witness(const Lagrangian& l, const HermitianMatrix& a,
                                           const HermitianMatrix& b, double lambda) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "convexity probe operands");
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::OutOfDomain, "lambda must lie in (0, 1)");

  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix& bm = b.matrix();
  const double gap = lambda * l(am) + (1.0 - lambda) * l(bm) - l(lambda * am + (1.0 - lambda) * bm);

  constexpr double kRel = 1e-8;
  const double na = am.norm();
  const double nb = bm.norm();
  const double scale = std::max({na, nb, std::numeric_limits<double>::min()});
  bool parallel = false;
  if (na <= kRel * scale) {
    parallel = true;  // A = 0 = 0 * B
  } else if (nb > kRel * scale) {
    const double s = am.cwiseProduct(bm.conjugate()).sum().real() / (nb * nb);
    parallel = s >= 0.0 && (am - s * bm).norm() <= kRel * scale;
  }
  return {gap, parallel};
}

// ---------------------------------------------------------------------------
// Specifier parsing

namespace {

double parse_real(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v, std::chars_format::general);
  if (text.empty() || res.ec != std::errc() || res.ptr != last || std::isnan(v)) {
    throw Error(ErrorCode::ParseError, "bad real in specifier '" + std::string(spec) + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view spec) {
  int v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorCode::ParseError, "bad integer in specifier '" + std::string(spec) + "'");
  }
  return v;
}

}  // namespace

GaugeFunction parse_gauge(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "schatten" && colon != std::string_view::npos) {
    const double p = arg == "inf" ? kInf : parse_real(arg, spec);
    return GaugeFunction::schatten(p);
  }
  if (head == "kyfan" && colon != std::string_view::npos) return GaugeFunction::ky_fan(parse_int(arg, spec));
  throw Error(ErrorCode::ParseError, "unknown gauge specifier '" + std::string(spec) + "'");
}

Lagrangian parse_lagrangian(std::string_view spec) {
  if (spec == "energy") return Lagrangian::energy();
  return Lagrangian::norm(parse_gauge(spec));
}

}  // namespace unigeo
