#pragma once

#include <functional>
#include <vector>

namespace unigeo {

struct ScalarMinimum {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for a minimum of a unimodal `f` on [lo, hi],
/// stopping once the bracket is narrower than `tol`.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol);

struct CoordinateDescentOptions {
  /// Initial half-width of the bracket searched along each coordinate.
  double initial_step = 0.05;
  /// Stop when no coordinate moved by more than this during a sweep.
  double step_tolerance = 1e-10;
  /// Per-coordinate golden-section resolution.
  double line_tolerance = 1e-11;
  int max_sweeps = 400;
  /// Declare a stall after this many consecutive coordinate updates without
  /// a decrease of the objective (while the steps are still above tolerance).
  int stall_updates = 200;
};

struct CoordinateDescentResult {
  std::vector<double> x;
  double value;
  int sweeps;
  int evaluations;
  bool converged;
  bool stalled;
};

/// Derivative-free coordinate descent: each sweep runs a golden-section line
/// search along every coordinate inside a bracket that adapts to the last
/// step taken on that coordinate.
CoordinateDescentResult coordinate_descent(const std::function<double(const std::vector<double>&)>& f,
                                           std::vector<double> x0, const CoordinateDescentOptions& opts = {});

}  // namespace unigeo
