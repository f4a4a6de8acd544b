#pragma once

// Curves in U(n): geodesic segments t -> U exp(itZ/b), broken geodesics,
// their action under a symmetric Lagrangian, and the rectifiable distance
// d_phi(U, V) = ||log(U*V)||_phi of a unitarily invariant norm.

#include <optional>
#include <vector>

#include "unigeo/lagrangian.hpp"
#include "unigeo/matcore.hpp"

namespace unigeo {

/// Exponents with spectral norm above pi + kExponentSlack are rejected.
inline constexpr double kExponentSlack = 1e-10;
/// Logs closer than this to spectral norm pi are flagged as non-unique.
inline constexpr double kBoundaryMargin = 1e-9;

/// t -> start * exp(i t/horizon * exponent) on [0, horizon].
struct GeodesicSegment {
  UnitaryMatrix start;
  HermitianMatrix exponent;
  double horizon;
  /// ||exponent|| is within kBoundaryMargin of pi: a second geodesic with
  /// the same endpoints exists.
  bool non_unique = false;

  UnitaryMatrix at(double t) const;
  UnitaryMatrix end() const { return at(horizon); }
};

/// Broken geodesic on the partition 0 = t_0 < ... < t_k = b:
///   P(t) = U e^{iX_1} ... e^{iX_{j-1}} e^{i (t - t_{j-1})/(t_j - t_{j-1}) X_j}
/// for t in [t_{j-1}, t_j], with every ||X_j|| <= pi.
class PolygonalPath {
 public:
  PolygonalPath(UnitaryMatrix start, std::vector<double> breakpoints, std::vector<HermitianMatrix> exponents);

  static PolygonalPath from_segment(const GeodesicSegment& g);

  const UnitaryMatrix& start() const noexcept { return start_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<HermitianMatrix>& exponents() const noexcept { return exponents_; }
  double horizon() const noexcept { return breakpoints_.back(); }
  Index dim() const noexcept { return start_.dim(); }
  std::size_t segments() const noexcept { return exponents_.size(); }

  UnitaryMatrix evaluate(double t) const;
  UnitaryMatrix end() const { return knots_.back(); }

 private:
  UnitaryMatrix start_;
  std::vector<double> breakpoints_;
  std::vector<HermitianMatrix> exponents_;
  std::vector<UnitaryMatrix> knots_;  // P(t_j)
};

/// Samples of a curve at increasing times.
struct SampledCurve {
  std::vector<double> times;
  std::vector<UnitaryMatrix> points;
};

UnitaryMatrix eval_polygonal(const PolygonalPath& p, double t);

/// Segment from U to V over [0, b] with exponent principal_log(U*V).
GeodesicSegment geodesic_between(const UnitaryMatrix& u, const UnitaryMatrix& v, double b);

/// sum_j (t_j - t_{j-1}) L(X_j / (t_j - t_{j-1})); for one segment b L(Z/b).
double action(const Lagrangian& l, const PolygonalPath& p);

/// sum_j ||X_j||_phi.
double length_phi(const GaugeFunction& phi, const PolygonalPath& p);

/// ||principal_log(U*V)||_phi.
double distance_phi(const GaugeFunction& phi, const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Joins consecutive samples by the geodesic segment through their principal
/// log. Throws GapTooLarge when a gap has a phase within 1e-9 of pi.
PolygonalPath polygonal_from_samples(const SampledCurve& c);

struct AlignmentResult {
  bool additive = false;
  /// d(U,W) + d(W,V) - d(U,V) >= 0.
  double gap = 0.0;
  std::optional<double> t0;
  std::optional<HermitianMatrix> x0;
  /// min_t ||W - U exp(i t X0)||_F at t0.
  double residual = 0.0;
  /// residual <= 1e-6 sqrt(n).
  bool aligned = false;
};

inline constexpr double kAlignmentTolerance = 1e-8;

/// Tests additivity d(U,V) = d(U,W) + d(W,V) and, when additive, recovers
/// W = U exp(i t0 X0) with X0 = log(U*V) by golden-section search on t0.
/// Requires a nondegenerate gauge.
AlignmentResult check_alignment(const GaugeFunction& phi, const UnitaryMatrix& u, const UnitaryMatrix& w,
                                const UnitaryMatrix& v, double tol = kAlignmentTolerance);

}  // namespace unigeo
