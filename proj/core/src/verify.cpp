#include "unigeo/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <utility>

#include "unigeo/error.hpp"
#include "unigeo/grassmann.hpp"
#include "unigeo/io.hpp"
#include "unigeo/lagrangian.hpp"
#include "unigeo/minimize.hpp"
#include "unigeo/rng.hpp"
#include "unigeo/samplers.hpp"
#include "unigeo/unitary_paths.hpp"

namespace unigeo {

using Json = nlohmann::json;

namespace {

constexpr std::uint64_t kThompsonIndex = 1;
constexpr std::uint64_t kMinimalityIndex = 2;
constexpr std::uint64_t kDescentIndex = 3;
constexpr std::uint64_t kControlIndex = 4;
constexpr std::uint64_t kGrassmannIndex = 5;

/// A control midpoint must sit at least this far (Frobenius, in U(n)) from
/// every point of the geodesic to count as a second minimizer.
constexpr double kControlOffset = 1e-3;

enum class Status { Pass, Fail, Inconclusive };

struct TrialOutcome {
  Status status = Status::Pass;
  double violation = -std::numeric_limits<double>::infinity();
  // name -> (value, aggregate by minimum)
  std::map<std::string, std::pair<double, bool>> checks;
  Json witness;

  void check_max(const std::string& name, double v) { merge(name, v, false); }
  void check_min(const std::string& name, double v) { merge(name, v, true); }
  void merge(const std::string& name, double v, bool is_min) {
    auto [it, inserted] = checks.try_emplace(name, v, is_min);
    if (!inserted) it->second.first = is_min ? std::min(it->second.first, v) : std::max(it->second.first, v);
  }
  void violate(double v) { violation = std::max(violation, v); }
};

using TrialFn = std::function<TrialOutcome(CounterRng&)>;

std::vector<GaugeFunction> parse_gauges(const std::vector<std::string>& specs) {
  std::vector<GaugeFunction> out;
  out.reserve(specs.size());
  for (const std::string& s : specs) out.push_back(parse_gauge(s));
  return out;
}

std::vector<Lagrangian> parse_lagrangians(const std::vector<std::string>& specs) {
  std::vector<Lagrangian> out;
  out.reserve(specs.size());
  for (const std::string& s : specs) out.push_back(parse_lagrangian(s));
  return out;
}

SuiteReport run_trials(std::string name, std::uint64_t suite_index, const TrialConfig& cfg, const TrialFn& trial) {
  cfg.validate();
  const auto count = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutcome> outcomes(count);

  const auto run_one = [&](std::size_t i) {
    const std::uint64_t key = trial_stream_key(cfg.seed, suite_index, i);
    CounterRng rng(key);
    TrialOutcome o;
    try {
      o = trial(rng);
    } catch (const std::exception& e) {
      o = TrialOutcome{};
      o.status = Status::Fail;
      o.violation = std::numeric_limits<double>::infinity();
      o.witness = {{"error", e.what()}};
    }
    if (!o.witness.is_null()) {
      o.witness["trial"] = i;
      o.witness["stream_key"] = key;
    }
    outcomes[i] = std::move(o);
  };

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run_one(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  SuiteReport r;
  r.suite = std::move(name);
  r.config = cfg;
  r.worst_violation = -std::numeric_limits<double>::infinity();
  for (TrialOutcome& o : outcomes) {
    switch (o.status) {
      case Status::Pass: ++r.passed; break;
      case Status::Fail: ++r.failed; break;
      case Status::Inconclusive: ++r.inconclusive; break;
    }
    r.worst_violation = std::max(r.worst_violation, o.violation);
    for (const auto& [key, entry] : o.checks) {
      const auto [value, is_min] = entry;
      auto [it, inserted] = r.checks.try_emplace(key, value);
      if (!inserted) it->second = is_min ? std::min(it->second, value) : std::max(it->second, value);
    }
    if (!o.witness.is_null()) {
      if (r.witnesses.size() < cfg.max_witnesses) {
        r.witnesses.push_back(std::move(o.witness));
      } else {
        ++r.witnesses_dropped;
      }
    }
  }
  return r;
}

// Orthonormal (Frobenius) real coordinates of an n x n Hermitian matrix:
// the diagonal, then sqrt(2) Re and sqrt(2) Im of each entry above it.
struct HermitianCoordinates {
  Index n;

  std::size_t size() const { return static_cast<std::size_t>(n * n); }

  std::vector<double> to_coords(const HermitianMatrix& h) const {
    const ComplexMatrix& a = h.matrix();
    std::vector<double> c;
    c.reserve(size());
    for (Index i = 0; i < n; ++i) c.push_back(a(i, i).real());
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        c.push_back(std::sqrt(2.0) * a(i, j).real());
        c.push_back(std::sqrt(2.0) * a(i, j).imag());
      }
    }
    return c;
  }

  HermitianMatrix from_coords(const std::vector<double>& c) const {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) a(i, i) = c[k++];
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const Complex z(c[k], c[k + 1]);
        k += 2;
        a(i, j) = z / std::sqrt(2.0);
        a(j, i) = std::conj(z) / std::sqrt(2.0);
      }
    }
    return HermitianMatrix(a);
  }
};

// Action of the two-segment path U -> W = U exp(iM) -> V on [0, 1] with the
// break at t = 1/2. Midpoints with ||M|| > pi do not define a broken
// geodesic and get an infinite action.
double two_segment_action(const Lagrangian& l, const UnitaryMatrix& u, const UnitaryMatrix& v,
                          const HermitianMatrix& m) {
  if (m.spectral_norm() > kPi) return std::numeric_limits<double>::infinity();
  const UnitaryMatrix w = u * exp_i(m);
  const HermitianMatrix x2 = principal_log(w.adjoint() * v);
  return 0.5 * l(2.0 * m.matrix()) + 0.5 * l(2.0 * x2.matrix());
}

// min over r in [0, 1] of ||exp(iM) - exp(irZ)||_F.
double distance_to_geodesic(const HermitianMatrix& m, const HermitianMatrix& z) {
  const ComplexMatrix w = exp_i(m).matrix();
  const auto gap = [&](double r) { return (w - exp_i(r * z).matrix()).norm(); };
  return golden_section(gap, 0.0, 1.0, 1e-10).value;
}

HermitianMatrix unit_direction(Index n, CounterRng& rng) {
  const ComplexMatrix g = sample_ginibre(n, n, rng);
  const ComplexMatrix h = 0.5 * (g + g.adjoint());
  return HermitianMatrix(h / h.norm());
}

}  // namespace

// ---------------------------------------------------------------------------
// Config and report

void TrialConfig::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "n must be at least 1");
  if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
  if (!(spectral_cap > 0.0 && spectral_cap <= kPi)) {
    throw Error(ErrorCode::InvalidConfig, "spectral_cap must lie in (0, pi]");
  }
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw Error(ErrorCode::InvalidConfig, "tolerance must be finite and non-negative");
  }
  if (!(perturbation >= 0.0) || !std::isfinite(perturbation)) {
    throw Error(ErrorCode::InvalidConfig, "perturbation must be finite and non-negative");
  }
  if (!(recovery_tolerance > 0.0)) throw Error(ErrorCode::InvalidConfig, "recovery_tolerance must be positive");
  if (!(intermediate_radius > 0.0 && intermediate_radius <= kPi)) {
    throw Error(ErrorCode::InvalidConfig, "intermediate_radius must lie in (0, pi]");
  }
  for (const std::string& g : gauges) {
    const GaugeFunction phi = parse_gauge(g);
    if (phi.kind() == GaugeFunction::Kind::KyFan && phi.k() > n) {
      throw Error(ErrorCode::InvalidConfig, g + " needs n >= " + std::to_string(phi.k()));
    }
  }
  for (const std::string& s : lagrangians) {
    const Lagrangian l = parse_lagrangian(s);
    if (l.gauge() != nullptr && l.gauge()->kind() == GaugeFunction::Kind::KyFan && l.gauge()->k() > n) {
      throw Error(ErrorCode::InvalidConfig, s + " needs n >= " + std::to_string(l.gauge()->k()));
    }
  }
}

Json TrialConfig::to_json() const {
  return {{"n", n},
          {"m", m},
          {"trials", trials},
          {"seed", seed},
          {"tolerance", tolerance},
          {"gauges", gauges},
          {"lagrangians", lagrangians},
          {"spectral_cap", spectral_cap},
          {"perturbation", perturbation},
          {"recovery_tolerance", recovery_tolerance},
          {"intermediate_radius", intermediate_radius},
          {"max_witnesses", max_witnesses}};
}

Json SuiteReport::to_json() const {
  Json c = Json::object();
  for (const auto& [k, v] : checks) c[k] = v;
  return {{"suite", suite},
          {"config", config.to_json()},
          {"passed", passed},
          {"failed", failed},
          {"inconclusive", inconclusive},
          {"worst_violation", worst_violation},
          {"checks", c},
          {"negative_control", negative_control},
          {"witnesses", witnesses},
          {"witnesses_dropped", witnesses_dropped}};
}

// ---------------------------------------------------------------------------
// Suites

SuiteReport suite_thompson(const TrialConfig& cfg) {
  cfg.validate();
  const std::vector<GaugeFunction> gauges = parse_gauges(cfg.gauges);
  const Index n = cfg.n;
  return run_trials("thompson", kThompsonIndex, cfg, [&](CounterRng& rng) {
    TrialOutcome o;
    const int k = 2 + static_cast<int>(rng() % 3);
    const double budget = 0.95 * kPi * (0.5 + 0.5 * rng.uniform());
    std::vector<double> weights(static_cast<std::size_t>(k));
    for (double& w : weights) w = 0.05 + rng.uniform();
    double total = 0.0;
    for (double w : weights) total += w;

    std::vector<HermitianMatrix> xs;
    UnitaryMatrix product = UnitaryMatrix::identity(n);
    for (double w : weights) {
      xs.push_back(sample_hermitian_sphere(n, budget * w / total, rng));
      product = product * exp_i(xs.back());
    }
    const HermitianMatrix z = principal_log(product);

    Json failures = Json::array();
    for (const GaugeFunction& phi : gauges) {
      const double lhs = norm_phi(phi, z.matrix());
      double rhs = 0.0;
      for (const HermitianMatrix& x : xs) rhs += norm_phi(phi, x.matrix());
      const double v = lhs - rhs;
      o.violate(v);
      o.check_max("thompson[" + phi.label() + "]", v);
      if (v > cfg.tolerance) failures.push_back({{"gauge", phi.label()}, {"lhs", lhs}, {"rhs", rhs}});
    }
    if (!failures.empty()) {
      o.status = Status::Fail;
      Json factors = Json::array();
      for (const HermitianMatrix& x : xs) factors.push_back(io::matrix_to_json(x.matrix()));
      o.witness = {{"factors", factors}, {"failures", failures}};
    }
    return o;
  });
}

SuiteReport suite_minimality(const TrialConfig& cfg) {
  cfg.validate();
  const std::vector<Lagrangian> ls = parse_lagrangians(cfg.lagrangians);
  const Index n = cfg.n;
  return run_trials("minimality", kMinimalityIndex, cfg, [&](CounterRng& rng) {
    TrialOutcome o;
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const HermitianMatrix z = sample_hermitian_ball(n, cfg.spectral_cap, rng);
    const UnitaryMatrix v = u * exp_i(z);
    const double b = 0.5 + 1.5 * rng.uniform();
    const PolygonalPath geodesic = PolygonalPath::from_segment(geodesic_between(u, v, b));

    const int stops = 1 + static_cast<int>(rng() % 4);
    std::vector<UnitaryMatrix> points{u};
    for (int i = 0; i < stops; ++i) points.push_back(u * exp_i(sample_hermitian_ball(n, cfg.intermediate_radius, rng)));
    points.push_back(v);

    std::vector<double> cuts{0.0};
    for (int i = 0; i <= stops; ++i) cuts.push_back(cuts.back() + 0.1 + rng.uniform());
    const double scale = b / cuts.back();
    for (double& t : cuts) t *= scale;
    cuts.back() = b;

    std::vector<HermitianMatrix> exponents;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) exponents.push_back(principal_log(points[i].adjoint() * points[i + 1]));
    const PolygonalPath competitor(u, cuts, exponents);

    Json failures = Json::array();
    for (const Lagrangian& l : ls) {
      const double s_geo = action(l, geodesic);
      const double s_comp = action(l, competitor);
      const double v_l = s_geo - s_comp;
      o.violate(v_l);
      o.check_max("minimality[" + l.label() + "]", v_l);
      if (v_l > cfg.tolerance) {
        failures.push_back({{"lagrangian", l.label()}, {"geodesic_action", s_geo}, {"competitor_action", s_comp}});
      }
    }
    if (!failures.empty()) {
      o.status = Status::Fail;
      o.witness = {{"U", io::matrix_to_json(u.matrix())},
                   {"V", io::matrix_to_json(v.matrix())},
                   {"b", b},
                   {"competitor", io::path_to_json(competitor)},
                   {"failures", failures}};
    }
    return o;
  });
}

SuiteReport suite_uniqueness_descent(const TrialConfig& cfg) {
  cfg.validate();
  std::vector<Lagrangian> ls;
  for (Lagrangian& l : parse_lagrangians(cfg.lagrangians)) {
    if (l.strictly_convex() || l.nondegenerate()) ls.push_back(std::move(l));
  }
  if (ls.empty()) ls.push_back(Lagrangian::energy());
  const Index n = cfg.n;
  const HermitianCoordinates coords{n};

  SuiteReport r = run_trials("uniqueness_descent", kDescentIndex, cfg, [&](CounterRng& rng) {
    TrialOutcome o;
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const HermitianMatrix z = sample_hermitian_ball(n, cfg.spectral_cap, rng);
    const UnitaryMatrix v = u * exp_i(z);
    const HermitianMatrix midpoint = 0.5 * z;
    const HermitianMatrix start = midpoint + cfg.perturbation * unit_direction(n, rng);
    const ComplexMatrix w_star = exp_i(midpoint).matrix();

    bool failed = false;
    bool stalled = false;
    Json details = Json::array();
    for (const Lagrangian& l : ls) {
      const auto objective = [&](const std::vector<double>& c) {
        return two_segment_action(l, u, v, coords.from_coords(c));
      };
      const CoordinateDescentResult res = coordinate_descent(objective, coords.to_coords(start));
      const HermitianMatrix m = coords.from_coords(res.x);
      // Strictly convex: the midpoint itself. Nondegenerate norm: any point
      // of the geodesic, since reparametrizations keep the action.
      const double error =
          l.strictly_convex() ? (exp_i(m).matrix() - w_star).norm() : distance_to_geodesic(m, z);
      o.violate(error);
      o.check_max("descent_error[" + l.label() + "]", error);
      o.check_max("descent_sweeps", res.sweeps);
      const bool recovered = error <= cfg.recovery_tolerance;
      if (!recovered) {
        if (res.converged && !res.stalled) {
          failed = true;
        } else {
          stalled = true;
        }
        details.push_back({{"lagrangian", l.label()},
                           {"error", error},
                           {"converged", res.converged},
                           {"stalled", res.stalled},
                           {"sweeps", res.sweeps},
                           {"minimizer", io::matrix_to_json(m.matrix())}});
      }
    }
    if (failed || stalled) {
      o.status = failed ? Status::Fail : Status::Inconclusive;
      o.witness = {{"U", io::matrix_to_json(u.matrix())},
                   {"Z", io::matrix_to_json(z.matrix())},
                   {"start", io::matrix_to_json(start.matrix())},
                   {"outcome", failed ? "different_minimizer" : "stalled"},
                   {"details", details}};
    }
    return o;
  });
  return r;
}

SuiteReport suite_uniqueness_control(const TrialConfig& cfg) {
  cfg.validate();
  std::vector<Lagrangian> ls;
  for (Lagrangian& l : parse_lagrangians(cfg.lagrangians)) {
    if (!l.strictly_convex() && !l.nondegenerate()) ls.push_back(std::move(l));
  }
  if (ls.empty()) ls.push_back(Lagrangian::norm(GaugeFunction::schatten(1.0)));
  const Index n = cfg.n;

  SuiteReport r = run_trials("uniqueness_control", kControlIndex, cfg, [&](CounterRng& rng) {
    TrialOutcome o;
    const UnitaryMatrix u = sample_haar_unitary(n, rng);
    const HermitianMatrix z = sample_hermitian_sphere(n, cfg.spectral_cap * (0.5 + 0.5 * rng.uniform()), rng);
    const UnitaryMatrix v = u * exp_i(z);
    const HermitianEigen eig = hermitian_eig(z);
    const ComplexMatrix& basis = eig.vectors.matrix();
    const RealVector& lambda = eig.values;

    // Midpoints commuting with Z. Reweighting every eigenvalue keeps the
    // trace norm split exactly; for the spectral norm only the top
    // eigenvalue has to be halved while the others move within the slack.
    std::vector<HermitianMatrix> candidates;
    RealVector mu(n);
    for (Index k = 0; k < n; ++k) mu(k) = (0.2 + 0.6 * rng.uniform()) * lambda(k);
    candidates.emplace_back(basis * mu.cast<Complex>().asDiagonal() * basis.adjoint());
    Index top = 0;
    lambda.cwiseAbs().maxCoeff(&top);
    for (Index k = 0; k < n; ++k) {
      const double slack = std::abs(lambda(top)) - std::abs(lambda(k));
      mu(k) = 0.5 * lambda(k) + (k == top ? 0.0 : 0.9 * (rng.uniform() - 0.5) * slack);
    }
    candidates.emplace_back(basis * mu.cast<Complex>().asDiagonal() * basis.adjoint());

    bool all_found = true;
    Json exhibits = Json::array();
    for (const Lagrangian& l : ls) {
      const double s_geo = l(z.matrix());
      std::optional<Json> found;
      double best_gap = std::numeric_limits<double>::infinity();
      for (const HermitianMatrix& m : candidates) {
        const double gap = std::abs(two_segment_action(l, u, v, m) - s_geo);
        const double offset = distance_to_geodesic(m, z);
        if (offset <= kControlOffset) continue;
        best_gap = std::min(best_gap, gap);
        if (gap <= cfg.tolerance && !found) {
          found = Json{{"lagrangian", l.label()},
                       {"midpoint", io::matrix_to_json(m.matrix())},
                       {"action_gap", gap},
                       {"offset", offset}};
          o.check_min("control_offset[" + l.label() + "]", offset);
        }
      }
      o.violate(best_gap);
      o.check_max("control_action_gap[" + l.label() + "]", best_gap);
      if (found) {
        exhibits.push_back(*found);
      } else {
        all_found = false;
      }
    }
    o.status = all_found ? Status::Pass : Status::Fail;
    o.witness = {{"U", io::matrix_to_json(u.matrix())},
                 {"Z", io::matrix_to_json(z.matrix())},
                 {"outcome", all_found ? "non_unique" : "missed"},
                 {"exhibits", exhibits}};
    return o;
  });
  r.negative_control = true;
  return r;
}

SuiteReport suite_grassmann(const TrialConfig& cfg) {
  cfg.validate();
  if (cfg.m < 1 || 2 * cfg.m > cfg.n) throw Error(ErrorCode::InvalidConfig, "grassmann suite needs 1 <= m and 2m <= n");
  const std::vector<GaugeFunction> gauges = parse_gauges(cfg.gauges);
  const Index n = cfg.n;
  const Index m = cfg.m;
  return run_trials("grassmann", kGrassmannIndex, cfg, [&](CounterRng& rng) {
    TrialOutcome o;
    const Projection p = sample_projection(n, m, rng);
    const Projection q = sample_projection(n, m, rng);
    const HermitianMatrix x = direct_rotation(p, q).generator;
    const RealVector theta = principal_angles(p, q).theta;

    Json failures = Json::array();
    const auto record = [&](const std::string& name, double value) {
      o.violate(value);
      o.check_max(name, value);
      if (!(value <= cfg.tolerance)) failures.push_back({{"check", name}, {"value", value}});
    };

    std::vector<double> expected(static_cast<std::size_t>(n), 0.0);
    for (Index i = 0; i < m; ++i) {
      expected[static_cast<std::size_t>(2 * i)] = theta(i);
      expected[static_cast<std::size_t>(2 * i + 1)] = -theta(i);
    }
    std::sort(expected.begin(), expected.end());
    const RealVector ev = hermitian_eig(x).values;  // non-increasing
    double dk = 0.0;
    for (Index i = 0; i < n; ++i) dk = std::max(dk, std::abs(ev(n - 1 - i) - expected[static_cast<std::size_t>(i)]));
    record("davis_kahan", dk);

    const UnitaryMatrix e = exp_i(x);
    record("conjugation_residual", (e.matrix() * p.matrix() * e.matrix().adjoint() - q.matrix()).norm());

    const UnitaryMatrix sp = to_symmetry(p).unitary();
    const UnitaryMatrix sq = to_symmetry(q).unitary();
    for (const GaugeFunction& phi : gauges) {
      record("psi_rho_gap[" + phi.label() + "]", psi_distance_equivalence(phi, p, q).gap);
      record("symmetry_factor[" + phi.label() + "]",
             std::abs(distance_phi(phi, sp, sq) - 2.0 * norm_phi(phi, x.matrix())));
    }
    if (!failures.empty()) {
      o.status = Status::Fail;
      o.witness = {{"P", io::projection_to_json(p)}, {"Q", io::projection_to_json(q)}, {"failures", failures}};
    }
    return o;
  });
}

// ---------------------------------------------------------------------------
// Dispatch

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thompson", "minimality", "uniqueness_descent", "uniqueness_control",
                                              "grassmann"};
  return names;
}

SuiteReport run_suite(std::string_view name, const TrialConfig& cfg) {
  if (name == "thompson") return suite_thompson(cfg);
  if (name == "minimality") return suite_minimality(cfg);
  if (name == "uniqueness_descent") return suite_uniqueness_descent(cfg);
  if (name == "uniqueness_control") return suite_uniqueness_control(cfg);
  if (name == "grassmann") return suite_grassmann(cfg);
  throw Error(ErrorCode::InvalidConfig, "unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteReport> run_all(const TrialConfig& cfg) {
  std::vector<SuiteReport> out;
  for (const std::string& name : suite_names()) out.push_back(run_suite(name, cfg));
  return out;
}

}  // namespace unigeo
