#pragma once

// Seeded randomized suites that check the geometric inequalities and
// identities of the library on random inputs and report failures with
// replayable witnesses.
//
// Every trial draws from its own counter-based stream keyed by
// (seed, suite index, trial index), so a report does not depend on the
// number of worker threads.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unigeo/matcore.hpp"

namespace unigeo {

inline constexpr std::uint64_t kDefaultSeed = 0x243F6A8885A308D3ULL;

struct TrialConfig {
  Index n = 4;
  /// Projection rank for the Grassmann suite (2m <= n).
  Index m = 2;
  int trials = 100;
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-9;
  std::vector<std::string> gauges = {"schatten:1", "schatten:2", "schatten:3", "schatten:inf", "kyfan:2"};
  std::vector<std::string> lagrangians = {"energy", "schatten:2", "schatten:1", "kyfan:1"};
  /// Cap on ||Z|| when drawing endpoints.
  double spectral_cap = 0.9 * kPi;
  /// Frobenius size of the start offset in the descent suite.
  double perturbation = 1e-2;
  /// Midpoint recovery tolerance in the descent suite.
  double recovery_tolerance = 1e-5;
  /// Bound on ||M|| for intermediate points U exp(iM) of competitor paths.
  double intermediate_radius = kPi / 2;
  std::size_t max_witnesses = 32;
  /// Worker threads; 0 picks the hardware concurrency. Not part of reports.
  unsigned threads = 1;

  /// Throws InvalidConfig (or ParseError for a bad specifier).
  void validate() const;
  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  TrialConfig config;
  int passed = 0;
  int failed = 0;
  /// Trials whose optimizer stalled before reaching a verdict.
  int inconclusive = 0;
  /// Largest per-trial violation measure (suite specific; <= 0 is good for
  /// inequality suites, an error size for identity suites).
  double worst_violation = 0.0;
  /// Worst value of each named check over all trials.
  std::map<std::string, double> checks;
  std::vector<nlohmann::json> witnesses;
  std::size_t witnesses_dropped = 0;
  /// The suite is expected to exhibit a counterexample in every trial.
  bool negative_control = false;

  bool ok() const noexcept { return failed == 0; }
  nlohmann::json to_json() const;
};

/// ||Z||_phi <= sum_j ||X_j||_phi for Z = log(prod_j exp(iX_j)) and
/// sum_j ||X_j|| <= 0.95 pi, over every configured gauge.
SuiteReport suite_thompson(const TrialConfig& cfg);

/// Broken geodesics through 1-4 random intermediate points never beat the
/// geodesic action, for every configured Lagrangian.
SuiteReport suite_minimality(const TrialConfig& cfg);

/// Minimizes the action of two-segment paths over their midpoint and checks
/// that the minimizer lies on the geodesic. Uses the configured Lagrangians
/// that are strictly convex or nondegenerate (energy if there are none).
SuiteReport suite_uniqueness_descent(const TrialConfig& cfg);

/// Degenerate Lagrangians (schatten:1 if none is configured): a trial passes
/// when it exhibits a midpoint off the geodesic whose path has the geodesic
/// action within the configured tolerance.
SuiteReport suite_uniqueness_control(const TrialConfig& cfg);

/// Principal-angle metric vs the induced psi distance, the spectrum of the
/// direct rotation, d(S_P, S_Q) = 2 d(P, Q) and Q = e^{iX} P e^{-iX}.
SuiteReport suite_grassmann(const TrialConfig& cfg);

const std::vector<std::string>& suite_names();

/// Runs one suite by name; throws InvalidConfig for an unknown name.
SuiteReport run_suite(std::string_view name, const TrialConfig& cfg);

/// Every suite in suite_names() order.
std::vector<SuiteReport> run_all(const TrialConfig& cfg);

}  // namespace unigeo
