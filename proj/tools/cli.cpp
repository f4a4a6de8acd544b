#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <system_error>

#include "CLI11.hpp"
#include "unigeo/error.hpp"
#include "unigeo/grassmann.hpp"
#include "unigeo/io.hpp"
#include "unigeo/lagrangian.hpp"
#include "unigeo/unitary_paths.hpp"
#include "unigeo/verify.hpp"

namespace unigeo::cli {

namespace {

using io::Json;

std::string vector_line(const RealVector& v, double scale) {
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ' ';
    s += format_real(scale * v(i));
  }
  return s;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* begin = text.data() + (hex ? 2 : 0);
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value, hex ? 16 : 10);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw Error(ErrorCode::ParseError, "seed '" + text + "' is not a 64-bit unsigned integer (decimal or 0x hex)");
  }
  return value;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("UNIGEO_SEED");
  return env != nullptr ? parse_seed(env) : kDefaultSeed;
}

void emit(std::ostream& out, const std::string& label, double value) {
  out << label << ' ' << format_real(value) << '\n';
}

void write_output(const std::string& path, const Json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

// ---------------------------------------------------------------------------
// Subcommands

struct PairArgs {
  std::string first;
  std::string second;
};

void add_pair(CLI::App* cmd, PairArgs& a, const char* first, const char* second) {
  cmd->add_option(first, a.first, std::string(first) + " JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option(second, a.second, std::string(second) + " JSON file")->required()->check(CLI::ExistingFile);
}

int cmd_dist(const PairArgs& a, const std::vector<std::string>& norms, std::ostream& out, std::ostream& err) {
  const UnitaryMatrix u = io::unitary_from_json(io::read_json_file(a.first));
  const UnitaryMatrix v = io::unitary_from_json(io::read_json_file(a.second));
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "U and V have different dimensions");
  const HermitianMatrix z = principal_log(u.adjoint() * v);
  const double z_norm = z.spectral_norm();
  if (z_norm >= kPi - kBoundaryMargin) {
    err << "warning: ||Z|| is within 1e-9 of pi; the minimizing geodesic is not unique\n";
  }
  for (const std::string& spec : norms) {
    const GaugeFunction phi = parse_gauge(spec);
    emit(out, "d[" + phi.label() + "]", norm_phi(phi, z.matrix()));
  }
  emit(out, "norm_Z", z_norm);
  return kExitOk;
}

int cmd_geodesic(const PairArgs& a, double b, int samples, const std::string& output, std::ostream& out,
                 std::ostream& err) {
  const UnitaryMatrix u = io::unitary_from_json(io::read_json_file(a.first));
  const UnitaryMatrix v = io::unitary_from_json(io::read_json_file(a.second));
  const GeodesicSegment g = geodesic_between(u, v, b);
  if (g.non_unique) err << "warning: ||Z|| is within 1e-9 of pi; the geodesic is not unique\n";
  std::vector<double> times;
  std::vector<HermitianMatrix> exponents;
  for (int k = 0; k <= samples; ++k) times.push_back(b * static_cast<double>(k) / samples);
  times.back() = b;
  for (int k = 0; k < samples; ++k) exponents.push_back(g.exponent / static_cast<double>(samples));
  const PolygonalPath path(u, std::move(times), std::move(exponents));
  write_output(output, io::path_to_json(path), out);
  return kExitOk;
}

int cmd_action(const std::string& path_file, const std::vector<std::string>& lagrangians, std::ostream& out) {
  const PolygonalPath path = io::path_from_json(io::read_json_file(path_file));
  for (const std::string& spec : lagrangians) {
    const Lagrangian l = parse_lagrangian(spec);
    emit(out, "action[" + l.label() + "]", action(l, path));
  }
  return kExitOk;
}

int cmd_angles(const PairArgs& a, const std::vector<std::string>& norms, bool degrees, std::ostream& out) {
  const Projection p = io::projection_from_json(io::read_json_file(a.first));
  const Projection q = io::projection_from_json(io::read_json_file(a.second));
  const RealVector theta = principal_angles(p, q).theta;
  out << "theta " << vector_line(theta, degrees ? 180.0 / kPi : 1.0) << '\n';
  for (const std::string& spec : norms) {
    const GaugeFunction phi = parse_gauge(spec);
    emit(out, "rho[" + phi.label() + "]", phi.evaluate_padded(theta, p.dim()));
  }
  return kExitOk;
}

int cmd_rotation(const PairArgs& a, const std::string& output, std::ostream& out, std::ostream& err) {
  const Projection p = io::projection_from_json(io::read_json_file(a.first));
  const Projection q = io::projection_from_json(io::read_json_file(a.second));
  const DirectRotation r = direct_rotation(p, q);
  if (r.boundary_non_unique) err << "warning: ||P - Q|| = 1; the direct rotation is not unique\n";
  const RealVector ev = hermitian_eig(r.generator).values;
  const Json j{{"generator", io::matrix_to_json(r.generator.matrix())},
               {"eigenvalues", std::vector<double>(ev.begin(), ev.end())},
               {"boundary_non_unique", r.boundary_non_unique}};
  write_output(output, j, out);
  return kExitOk;
}

int cmd_grassdist(const PairArgs& a, const std::vector<std::string>& norms, std::ostream& out) {
  const Projection p = io::projection_from_json(io::read_json_file(a.first));
  const Projection q = io::projection_from_json(io::read_json_file(a.second));
  const HermitianMatrix x = direct_rotation(p, q).generator;
  for (const std::string& spec : norms) {
    const GaugeFunction phi = parse_gauge(spec);
    emit(out, "d[" + phi.label() + "]", norm_phi(phi, x.matrix()));
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string report;
  std::optional<std::string> seed;
  std::vector<std::string> norms;
  std::vector<std::string> lagrangians;
  TrialConfig cfg;
};

int cmd_verify(VerifyArgs& a, std::ostream& out) {
  a.cfg.seed = a.seed ? parse_seed(*a.seed) : default_seed();
  if (!a.norms.empty()) a.cfg.gauges = a.norms;
  if (!a.lagrangians.empty()) a.cfg.lagrangians = a.lagrangians;
  a.cfg.validate();

  std::vector<SuiteReport> reports;
  if (a.suite == "all") {
    reports = run_all(a.cfg);
  } else {
    reports.push_back(run_suite(a.suite, a.cfg));
  }

  bool ok = true;
  Json j = Json::array();
  for (const SuiteReport& r : reports) {
    ok = ok && r.ok();
    out << r.suite << " passed=" << r.passed << " failed=" << r.failed << " inconclusive=" << r.inconclusive
        << " worst_violation=" << format_real(r.worst_violation) << ' ' << (r.ok() ? "PASS" : "FAIL") << '\n';
    j.push_back(r.to_json());
  }
  if (!a.report.empty()) io::write_file_atomic(a.report, j.dump(2) + "\n");
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // print -0 as 0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesics, distances and principal angles on U(n) and the Grassmann manifold", "unigeo"};
  app.require_subcommand(1, 1);

  PairArgs pair;
  std::vector<std::string> norms;
  std::vector<std::string> lagrangians;
  std::string output;
  std::string path_file;
  double b = 1.0;
  int samples = 16;
  bool degrees = false;
  VerifyArgs verify;

  CLI::App* dist = app.add_subcommand("dist", "d_phi(U, V) = ||log(U*V)||_phi and ||log(U*V)||");
  add_pair(dist, pair, "U", "V");
  dist->add_option("--norm", norms, "gauge specifier, repeatable")->default_val(std::vector<std::string>{"schatten:inf"});

  CLI::App* geo = app.add_subcommand("geodesic", "sample the geodesic from U to V as a path JSON");
  add_pair(geo, pair, "U", "V");
  geo->add_option("--b", b, "time horizon")->default_val(1.0)->check(CLI::PositiveNumber);
  geo->add_option("--samples", samples, "number of segments K (K + 1 sample times)")->default_val(16)->check(
      CLI::Range(1, 1 << 20));
  geo->add_option("-o,--output", output, "output file (stdout if omitted)");

  CLI::App* act = app.add_subcommand("action", "action of a path JSON");
  act->add_option("path", path_file, "path JSON file")->required()->check(CLI::ExistingFile);
  act->add_option("--lagrangian", lagrangians, "lagrangian specifier, repeatable")
      ->default_val(std::vector<std::string>{"energy"});

  CLI::App* ang = app.add_subcommand("angles", "principal angles and rho_phi(P, Q)");
  add_pair(ang, pair, "P", "Q");
  ang->add_option("--norm", norms, "gauge specifier, repeatable");
  ang->add_flag("--degrees", degrees, "print angles in degrees");

  CLI::App* rot = app.add_subcommand("rotation", "direct rotation X with Q = e^{iX} P e^{-iX}");
  add_pair(rot, pair, "P", "Q");
  rot->add_option("-o,--output", output, "output file (stdout if omitted)");

  CLI::App* gd = app.add_subcommand("grassdist", "||X||_phi for the direct rotation X from P to Q");
  add_pair(gd, pair, "P", "Q");
  gd->add_option("--norm", norms, "gauge specifier, repeatable")->default_val(std::vector<std::string>{"schatten:inf"});

  CLI::App* ver = app.add_subcommand("verify", "run randomized verification suites");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.insert(suite_choices.begin(), "all");
  ver->add_option("--suite", verify.suite, "suite name or all")->check(CLI::IsMember(suite_choices));
  ver->add_option("--n", verify.cfg.n, "dimension")->default_val(verify.cfg.n);
  ver->add_option("--m", verify.cfg.m, "projection rank for the grassmann suite")->default_val(verify.cfg.m);
  ver->add_option("--trials", verify.cfg.trials, "trials per suite")->default_val(verify.cfg.trials);
  ver->add_option("--seed", verify.seed, "64-bit seed, decimal or 0x hex (default: $UNIGEO_SEED or a fixed constant)");
  ver->add_option("--tol", verify.cfg.tolerance, "tolerance")->default_val(verify.cfg.tolerance);
  ver->add_option("--spectral-cap", verify.cfg.spectral_cap, "cap on ||Z|| for endpoints");
  ver->add_option("--perturbation", verify.cfg.perturbation, "start offset of the descent suite");
  ver->add_option("--norm", verify.norms, "gauge specifier, repeatable");
  ver->add_option("--lagrangian", verify.lagrangians, "lagrangian specifier, repeatable");
  ver->add_option("--threads", verify.cfg.threads, "worker threads (0 = all cores)");
  ver->add_option("--report", verify.report, "write the JSON report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dist->parsed()) return cmd_dist(pair, norms, out, err);
    if (geo->parsed()) return cmd_geodesic(pair, b, samples, output, out, err);
    if (act->parsed()) return cmd_action(path_file, lagrangians, out);
    if (ang->parsed()) return cmd_angles(pair, norms, degrees, out);
    if (rot->parsed()) return cmd_rotation(pair, output, out, err);
    if (gd->parsed()) return cmd_grassdist(pair, norms, out);
    if (ver->parsed()) return cmd_verify(verify, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace unigeo::cli
