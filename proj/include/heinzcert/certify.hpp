#pragma once

// Certification runs over the three case registries: exhaustive scalar
// grids, seeded randomized matrix trials, single-trial replay from a digest,
// and slack profiles along a nu grid.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "heinzcert/random_gen.hpp"
#include "heinzcert/report.hpp"

namespace heinzcert {

/// Unknown case ids, malformed digests and similar caller mistakes.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Group { kScalar, kOperator, kNorm };

std::string to_string(Group g);
/// "scalar", "op" or "hs".
Group parse_group(std::string_view s);

struct CaseInfo {
  std::string id;
  Group group;
  std::string citation;
  std::string domain;
};

std::vector<CaseInfo> list_cases(std::optional<Group> group = std::nullopt);
std::optional<Group> group_of(std::string_view id);

/// Expands "all" (restricted to `allowed`, when given) and checks every id;
/// unknown ids raise UsageError listing the valid ones. Order is preserved,
/// duplicates dropped.
std::vector<std::string> resolve_cases(const std::vector<std::string>& requested,
                                       const std::vector<Group>& allowed);

/// {2^k : k = -6..6}.
std::vector<double> default_ab_grid();
/// {j / den : j = 0..den}.
std::vector<double> uniform_nu_grid(int den);

// ---------------------------------------------------------------- scalar

struct ScalarSweepConfig {
  std::vector<std::string> cases{"all"};
  std::vector<double> ab_grid = default_ab_grid();
  std::vector<double> nu_grid = uniform_nu_grid(64);
  double tol = kScalarTol;
  std::size_t max_failures = 50;
};

/// Points where the slack of new-2.1 is smaller (tighter) or larger (looser)
/// than the slack of the second zw inequality applicable at that nu.
struct NonDominance {
  struct Point {
    double a, b, nu;
    double new_slack, zw_slack;
    std::string zw_case;
  };
  std::optional<Point> tighter;  // largest margin in each direction
  std::optional<Point> looser;
  std::size_t tighter_count = 0;
  std::size_t looser_count = 0;
  std::size_t compared = 0;

  nlohmann::json to_json() const;
};

NonDominance find_non_dominance(const std::vector<double>& ab_grid, const std::vector<double>& nu_grid);

/// Evaluates every in-domain grid point of every case. Extras carry the
/// non-dominance witnesses when new-2.1 and a zw case are both swept.
CertificationReport scalar_sweep(const ScalarSweepConfig& cfg);

// ---------------------------------------------------------------- matrix

struct VerifyConfig {
  std::vector<std::string> cases{"all"};
  std::vector<std::size_t> dims{1, 2, 3, 5, 8};
  std::size_t trials = 10000;
  std::uint64_t seed = 42;
  std::optional<double> tol;  // default: kOperatorTol / kNormTol per group
  std::vector<double> nu_grid = uniform_nu_grid(32);
  /// Fixed law for every trial; otherwise trials rotate through
  /// default_laws().
  std::optional<gen::SpectrumLaw> law;
  /// Overrides the per-case structure (ordered pairs stay ordered).
  std::optional<gen::Structure> structure;
  gen::Field field = gen::Field::kReal;
  bool lenient_x = false;
  unsigned threads = 1;  // not echoed: reports must not depend on it
  std::size_t max_failures = 50;

  nlohmann::json to_json() const;
};

/// log-uniform(1e-3, 1e3), log-uniform(0.5, 2), clustered(1, 1e-3).
const std::vector<gen::SpectrumLaw>& default_laws();

/// Everything needed to regenerate and re-certify one trial.
struct TrialInput {
  std::string case_id;
  gen::GenSpec spec;  // spec.seed is the run seed
  std::uint64_t trial = 0;
  double nu = 0.0;
  double tol = 0.0;
  bool lenient_x = false;
  // scalar trials only
  double a = 0.0;
  double b = 0.0;
};

TrialInput plan_trial(const VerifyConfig& cfg, const std::string& case_id, std::uint64_t trial);

/// Generated inputs of a matrix trial.
struct TrialData {
  HermitianMatrix a;
  HermitianMatrix b;
  std::optional<GeneralMatrix> x;
  std::uint64_t fingerprint = 0;
};

TrialData generate(const TrialInput& in);

/// Generates, certifies and stamps the digest. Exceptions raised while
/// certifying become a failing report with diagnostics.error.
TrialReport run_trial(const TrialInput& in);

std::string encode_digest(const TrialInput& in, std::uint64_t fingerprint);
/// Throws UsageError on malformed digests.
TrialInput decode_digest(std::string_view digest, std::uint64_t* fingerprint = nullptr);

CertificationReport matrix_verify(const VerifyConfig& cfg);

struct ReplayResult {
  TrialReport report;
  std::uint64_t expected_fingerprint = 0;
  std::uint64_t actual_fingerprint = 0;
  bool fingerprint_match() const { return expected_fingerprint == actual_fingerprint; }
};

/// Re-runs one trial. `tol` overrides the tolerance stored in the digest.
ReplayResult replay(std::string_view digest, std::optional<double> tol = std::nullopt);

// ---------------------------------------------------------------- profile

struct GapProfileConfig {
  std::vector<std::string> cases;
  std::vector<double> nu_grid = uniform_nu_grid(32);
  double a = 4.0;  // scalar cases
  double b = 1.0;
  gen::GenSpec spec{};  // matrix cases; structure picked per case
};

struct GapProfile {
  std::vector<std::string> columns;  // "nu", then "<case>:<link>"
  std::vector<std::vector<std::optional<double>>> rows;
  /// nu values where new-2.1 and the zw second link trade places.
  std::vector<double> crossings;

  std::string to_csv() const;
};

GapProfile gap_profile(const GapProfileConfig& cfg);

}  // namespace heinzcert
