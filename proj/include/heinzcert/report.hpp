#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heinzcert/kernel.hpp"

namespace heinzcert {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;

/// Outcome of one "lhs <= rhs" claim. Scalar and norm links carry both
/// sides; Loewner links carry lambda_min of (rhs - lhs) as the slack.
struct LinkOutcome {
  std::string label;
  std::optional<double> lhs;
  std::optional<double> rhs;
  double slack = 0.0;
  double scale = 1.0;
  bool pass = false;

  double relative_slack() const { return slack / scale; }
};

/// Where the worst link of a trial is localised: an eigenvector of the
/// Loewner gap, or an eigenbasis cell (i, j) for norm inequalities.
struct Witness {
  std::size_t link = 0;
  std::vector<Complex> vector;
  std::optional<std::size_t> cell_i;
  std::optional<std::size_t> cell_j;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> cell_slack;
};

struct TrialReport {
  std::string case_id;
  std::string digest;  // empty for direct library calls
  double nu = 0.0;
  bool vacuous = false;
  std::string vacuous_reason;
  std::vector<LinkOutcome> links;
  bool pass = true;
  std::optional<Witness> witness;
  nlohmann::json diagnostics = nlohmann::json::object();

  /// Smallest slack/scale over links; +inf when there are no links.
  double min_relative_slack() const;
  /// Index of the link attaining min_relative_slack, if any.
  std::optional<std::size_t> worst_link() const;
};

/// Sets pass flags from the links (pass <=> slack >= -tol * scale).
void finalize(TrialReport& report, double tol);

nlohmann::json to_json(const LinkOutcome& l);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const TrialReport& r);

struct CaseSummary {
  std::string case_id;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::size_t vacuous = 0;
  double min_relative_slack = 0.0;  // +inf if every trial was vacuous
  std::string argmin_digest;
  std::optional<TrialReport> worst;
  std::vector<TrialReport> failures;  // ordered by trial index, capped
  std::size_t failures_omitted = 0;

  bool pass() const { return passes == trials; }
};

struct CertificationReport {
  std::string kind;  // "scalar-sweep" | "matrix-verify"
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  std::vector<CaseSummary> cases;
  nlohmann::json extras = nlohmann::json::object();
  double wall_time_s = 0.0;

  bool pass() const;
};

nlohmann::json to_json(const CaseSummary& s);
nlohmann::json to_json(const CertificationReport& r);

/// Structural validation of an emitted report against the versioned schema.
/// Returns the list of problems found (empty when valid).
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Incrementally folds trial reports into a CaseSummary; trials must be
/// added in trial-index order.
class CaseAccumulator {
 public:
  CaseAccumulator(std::string case_id, std::size_t max_failures);
  void add(TrialReport trial);
  CaseSummary finish() &&;

 private:
  CaseSummary s_;
  std::size_t max_failures_;
  double best_ = 0.0;
  bool have_ = false;
};

}  // namespace heinzcert
