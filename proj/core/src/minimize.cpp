#include "unigeo/minimize.hpp"

#include <algorithm>
#include <cmath>

namespace unigeo {

namespace {
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
}

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  // The bracket endpoints are candidates too: the minimum may sit on [lo, hi]'s boundary.
  ScalarMinimum best{c, fc, evals};
  if (fd < best.value) best = {d, fd, evals};
  for (double e : {lo, hi}) {
    if (e >= a - tol && e <= b + tol) {
      const double fe = f(e);
      ++best.evaluations;
      if (fe < best.value) best = {e, fe, best.evaluations};
    }
  }
  return best;
}

CoordinateDescentResult coordinate_descent(const std::function<double(const std::vector<double>&)>& f,
                                           std::vector<double> x0, const CoordinateDescentOptions& opts) {
  CoordinateDescentResult r{std::move(x0), 0.0, 0, 0, false, false};
  r.value = f(r.x);
  ++r.evaluations;
  std::vector<double> width(r.x.size(), opts.initial_step);
  int idle_updates = 0;

  for (r.sweeps = 0; r.sweeps < opts.max_sweeps;) {
    ++r.sweeps;
    double largest_step = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double centre = r.x[i];
      std::vector<double> probe = r.x;
      auto along = [&](double v) {
        probe[i] = v;
        return f(probe);
      };
      const double h = width[i];
      const ScalarMinimum m = golden_section(along, centre - h, centre + h, opts.line_tolerance);
      r.evaluations += m.evaluations;

      double step = 0.0;
      if (m.value < r.value) {
        step = std::abs(m.x - centre);
        r.x[i] = m.x;
        r.value = m.value;
        idle_updates = 0;
      } else {
        ++idle_updates;
      }
      largest_step = std::max(largest_step, step);
      // Hitting the bracket edge means the minimum may lie further out.
      width[i] = step > 0.9 * h ? 2.0 * h : std::max(4.0 * step, 10.0 * opts.line_tolerance);
    }
    if (largest_step <= opts.step_tolerance) {
      r.converged = true;
      return r;
    }
    if (idle_updates >= opts.stall_updates) {
      r.stalled = true;
      return r;
    }
  }
  r.stalled = true;
  return r;
}

}  // namespace unigeo
