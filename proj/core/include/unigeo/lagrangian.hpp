#pragma once

// Symmetric gauge functions, the unitarily invariant norms they induce, and
// symmetric Lagrangians L(A) = f(s(A)).

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "unigeo/matcore.hpp"

namespace unigeo {

/// A symmetric gauge function phi on R^n: a norm invariant under
/// permutations and sign changes of the coordinates.
///
/// Built-ins are Schatten-p (p >= 1, p = inf allowed), Ky Fan k, and the
/// induced psi gauge (see induced_psi). Custom evaluators are sampled for the
/// gauge axioms at registration.
class GaugeFunction {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  enum class Kind { Schatten, KyFan, Induced, Custom };

  static GaugeFunction schatten(double p);
  static GaugeFunction ky_fan(int k);
  /// Runs 200 randomized property checks on vectors of length `dim` and
  /// throws InvalidGauge on the first violation.
  static GaugeFunction custom(Evaluator f, std::string label, Index dim, bool nondegenerate = false,
                              std::uint64_t seed = 0x5eed5eedULL);

  double operator()(std::span<const double> x) const;
  double operator()(const RealVector& x) const;
  /// phi(x_1, ..., x_k, 0, ..., 0) with the input zero-padded to length n.
  double evaluate_padded(const RealVector& x, Index n) const;

  Kind kind() const noexcept;
  const std::string& label() const noexcept { return label_; }
  /// Equality in the triangle inequality of ||.||_phi forces proportional
  /// arguments. Declared, not computed: true for Schatten p with 1 < p < inf.
  bool nondegenerate() const noexcept { return nondegenerate_; }

  /// Schatten exponent (Kind::Schatten only).
  double p() const;
  /// Ky Fan order (Kind::KyFan only).
  int k() const;

 private:
  struct Schatten {
    double p;
  };
  struct KyFan {
    int k;
  };
  struct Induced {
    std::shared_ptr<const GaugeFunction> base;
    int m;
  };
  struct Custom {
    Evaluator f;
  };
  using Rep = std::variant<Schatten, KyFan, Induced, Custom>;

  GaugeFunction(Rep rep, std::string label, bool nondegenerate)
      : rep_(std::move(rep)), label_(std::move(label)), nondegenerate_(nondegenerate) {}

  friend GaugeFunction induced_psi(const GaugeFunction& phi, int m);

  Rep rep_;
  std::string label_;
  bool nondegenerate_ = false;
};

double gauge_eval(const GaugeFunction& phi, std::span<const double> x);

/// ||A||_phi = phi(s(A)).
double norm_phi(const GaugeFunction& phi, const ComplexMatrix& a);

/// psi(s) = phi((s_1+s_2)/2, ..., (s_{2m-1}+s_{2m})/2, 0, ..., 0) with s
/// sorted non-increasing. Evaluation requires at least 2m coordinates and
/// throws RankTooLarge otherwise. For Q of rank m and Z tangent at Q,
/// ||QZ||_phi = ||Z||_psi.
GaugeFunction induced_psi(const GaugeFunction& phi, int m);

/// Convex, non-negative, unitarily invariant L with L(0) = 0, evaluated
/// through the singular values of its argument.
class Lagrangian {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;

  enum class Kind { Norm, Energy, Custom };

  static Lagrangian norm(GaugeFunction phi);
  /// E(A) = ||A||_F^2.
  static Lagrangian energy();
  /// `f` receives the singular values; the flags are taken as declared.
  static Lagrangian custom_symmetric(Evaluator f, std::string label, bool strictly_convex,
                                     bool nondegenerate);

  double operator()(const ComplexMatrix& a) const;

  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  bool strictly_convex() const noexcept { return strictly_convex_; }
  bool nondegenerate() const noexcept { return nondegenerate_; }
  /// The gauge of a Kind::Norm Lagrangian, nullptr otherwise.
  const GaugeFunction* gauge() const noexcept { return gauge_ ? gauge_.get() : nullptr; }

 private:
  Lagrangian() = default;

  Kind kind_ = Kind::Energy;
  std::shared_ptr<const GaugeFunction> gauge_;
  Evaluator custom_;
  std::string label_;
  bool strictly_convex_ = false;
  bool nondegenerate_ = false;
};

double lagrangian_eval(const Lagrangian& l, const ComplexMatrix& a);

struct ConvexityProbe {
  /// lambda L(A) + (1 - lambda) L(B) - L(lambda A + (1 - lambda) B).
  double equality_gap;
  /// A = sB for some s >= 0, within 1e-8 relative.
  bool parallel;
};

ConvexityProbe check_nondegenerate_witness(const Lagrangian& l, const HermitianMatrix& a,
                                           const HermitianMatrix& b, double lambda);

/// `schatten:<p>` (p a decimal real >= 1 or `inf`) or `kyfan:<k>`.
GaugeFunction parse_gauge(std::string_view spec);
/// Any gauge specifier (as a norm Lagrangian) or `energy`.
Lagrangian parse_lagrangian(std::string_view spec);

}  // namespace unigeo
