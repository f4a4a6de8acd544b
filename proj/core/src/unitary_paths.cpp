#include "unigeo/unitary_paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unigeo/error.hpp"
#include "unigeo/minimize.hpp"

namespace unigeo {

namespace {

void require_same_dim(const UnitaryMatrix& a, const UnitaryMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": " + std::to_string(a.dim()) + " vs " +
                                                  std::to_string(b.dim()));
  }
}

}  // namespace

UnitaryMatrix GeodesicSegment::at(double t) const {
  if (!(t >= 0.0 && t <= horizon)) throw Error(ErrorCode::OutOfDomain, "t outside [0, b]");
  return start * exp_i((t / horizon) * exponent);
}

// ---------------------------------------------------------------------------
// PolygonalPath

PolygonalPath::PolygonalPath(UnitaryMatrix start, std::vector<double> breakpoints,
                             std::vector<HermitianMatrix> exponents)
    : start_(std::move(start)), breakpoints_(std::move(breakpoints)), exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw Error(ErrorCode::InvalidPath, "a path needs at least one segment");
  if (breakpoints_.size() != exponents_.size() + 1) {
    throw Error(ErrorCode::InvalidPath, "expected " + std::to_string(exponents_.size() + 1) + " breakpoints");
  }
  if (breakpoints_.front() != 0.0) throw Error(ErrorCode::InvalidPath, "first breakpoint must be 0");
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1]) || !std::isfinite(breakpoints_[j])) {
      throw Error(ErrorCode::InvalidPath, "breakpoints must be finite and strictly increasing");
    }
  }
  knots_.reserve(exponents_.size() + 1);
  knots_.push_back(start_);
  for (const HermitianMatrix& x : exponents_) {
    if (x.dim() != start_.dim()) throw Error(ErrorCode::DimensionMismatch, "segment exponent dimension");
    if (x.spectral_norm() > kPi + kExponentSlack) {
      throw Error(ErrorCode::InvalidPath, "segment exponent with spectral norm above pi");
    }
    knots_.push_back(knots_.back() * exp_i(x));
  }
}

PolygonalPath PolygonalPath::from_segment(const GeodesicSegment& g) {
  return {g.start, {0.0, g.horizon}, {g.exponent}};
}

UnitaryMatrix PolygonalPath::evaluate(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw Error(ErrorCode::OutOfDomain, "t outside [0, b]");
  // Segment j (1-based) covers [t_{j-1}, t_j]; breakpoints belong to the left segment.
  const auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  const auto j = static_cast<std::size_t>(it - breakpoints_.begin());
  const double t0 = breakpoints_[j - 1];
  const double t1 = breakpoints_[j];
  if (t == t1) return knots_[j];
  return knots_[j - 1] * exp_i(((t - t0) / (t1 - t0)) * exponents_[j - 1]);
}

UnitaryMatrix eval_polygonal(const PolygonalPath& p, double t) { return p.evaluate(t); }

// ---------------------------------------------------------------------------
// Geodesics, action, distance

GeodesicSegment geodesic_between(const UnitaryMatrix& u, const UnitaryMatrix& v, double b) {
  require_same_dim(u, v, "geodesic endpoints");
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::OutOfDomain, "horizon b must be positive");
  HermitianMatrix z = principal_log(u.adjoint() * v);
  const bool non_unique = z.spectral_norm() >= kPi - kBoundaryMargin;
  return {u, std::move(z), b, non_unique};
}

double action(const Lagrangian& l, const PolygonalPath& p) {
  const auto& t = p.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < p.segments(); ++j) {
    const double dt = t[j + 1] - t[j];
    total += dt * l(p.exponents()[j].matrix() / dt);
  }
  return total;
}

double length_phi(const GaugeFunction& phi, const PolygonalPath& p) {
  double total = 0.0;
  for (const HermitianMatrix& x : p.exponents()) total += norm_phi(phi, x.matrix());
  return total;
}

double distance_phi(const GaugeFunction& phi, const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_dim(u, v, "distance operands");
  return norm_phi(phi, principal_log(u.adjoint() * v).matrix());
}

PolygonalPath polygonal_from_samples(const SampledCurve& c) {
  if (c.times.size() != c.points.size() || c.points.size() < 2) {
    throw Error(ErrorCode::InvalidPath, "need at least two samples with matching times");
  }
  if (c.times.front() != 0.0) throw Error(ErrorCode::InvalidPath, "sampling must start at t = 0");
  std::vector<HermitianMatrix> exponents;
  exponents.reserve(c.points.size() - 1);
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    require_same_dim(c.points[i], c.points[i + 1], "samples");
    const UnitaryMatrix step = c.points[i].adjoint() * c.points[i + 1];
    const UnitaryEigen eig = unitary_eig(step);
    if (eig.phases.cwiseAbs().maxCoeff() >= kPi - kBoundaryMargin) {
      throw Error(ErrorCode::GapTooLarge, "samples " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                              " are (nearly) antipodal");
    }
    const ComplexMatrix& vecs = eig.vectors.matrix();
    exponents.emplace_back(vecs * eig.phases.cast<Complex>().asDiagonal() * vecs.adjoint());
  }
  return {c.points.front(), c.times, std::move(exponents)};
}

AlignmentResult check_alignment(const GaugeFunction& phi, const UnitaryMatrix& u, const UnitaryMatrix& w,
                                const UnitaryMatrix& v, double tol) {
  require_same_dim(u, v, "alignment operands");
  require_same_dim(u, w, "alignment operands");
  if (!phi.nondegenerate()) {
    throw Error(ErrorCode::NondegeneracyRequired, phi.label() + " is not flagged nondegenerate");
  }

  AlignmentResult r;
  const UnitaryMatrix uadj = u.adjoint();
  HermitianMatrix x0 = principal_log(uadj * v);
  const double d_uv = norm_phi(phi, x0.matrix());
  const double d_uw = distance_phi(phi, u, w);
  const double d_wv = distance_phi(phi, w, v);
  r.gap = d_uw + d_wv - d_uv;
  r.additive = std::abs(r.gap) <= tol;
  if (!r.additive || x0.spectral_norm() >= kPi - kBoundaryMargin) return r;

  // U*W = exp(i t X0) on the geodesic; the residual is unimodal in t there.
  const ComplexMatrix target = (uadj * w).matrix();
  const auto residual = [&](double t) { return (target - exp_i(t * x0).matrix()).norm(); };
  const ScalarMinimum best = golden_section(residual, 0.0, 1.0, 1e-10);
  r.t0 = best.x;
  r.residual = best.value;
  r.aligned = best.value <= 1e-6 * std::sqrt(static_cast<double>(u.dim()));
  r.x0 = std::move(x0);
  return r;
}

}  // namespace unigeo
