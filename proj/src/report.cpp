#include "heinzcert/report.hpp"

#include <cmath>
#include <limits>

namespace heinzcert {

using nlohmann::json;

namespace {

// JSON has no infinity; non-finite numbers are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

double TrialReport::min_relative_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& l : links) m = std::min(m, l.relative_slack());
  return m;
}

std::optional<std::size_t> TrialReport::worst_link() const {
  std::optional<std::size_t> idx;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < links.size(); ++i) {
    const double r = links[i].relative_slack();
    if (!idx || r < m) {
      m = r;
      idx = i;
    }
  }
  return idx;
}

void finalize(TrialReport& report, double tol) {
  report.pass = true;
  for (auto& l : report.links) {
    l.pass = std::isfinite(l.slack) && l.slack >= -tol * l.scale;
    report.pass = report.pass && l.pass;
  }
}

json to_json(const LinkOutcome& l) {
  json j;
  j["label"] = l.label;
  if (l.lhs) j["lhs"] = number(*l.lhs);
  if (l.rhs) j["rhs"] = number(*l.rhs);
  j["slack"] = number(l.slack);
  j["scale"] = number(l.scale);
  j["relative_slack"] = number(l.relative_slack());
  j["pass"] = l.pass;
  return j;
}

json to_json(const Witness& w) {
  json j;
  j["link"] = w.link;
  if (!w.vector.empty()) {
    json re = json::array(), im = json::array();
    for (const auto& c : w.vector) {
      re.push_back(number(c.real()));
      im.push_back(number(c.imag()));
    }
    j["vector_re"] = re;
    j["vector_im"] = im;
  }
  if (w.cell_i) j["cell"] = {*w.cell_i, *w.cell_j};
  if (w.lambda) j["lambda"] = number(*w.lambda);
  if (w.mu) j["mu"] = number(*w.mu);
  if (w.cell_slack) j["cell_slack"] = number(*w.cell_slack);
  return j;
}

json to_json(const TrialReport& r) {
  json j;
  j["case_id"] = r.case_id;
  j["digest"] = r.digest;
  j["nu"] = r.nu;
  j["vacuous"] = r.vacuous;
  if (r.vacuous) j["vacuous_reason"] = r.vacuous_reason;
  json links = json::array();
  for (const auto& l : r.links) links.push_back(to_json(l));
  j["links"] = links;
  j["pass"] = r.pass;
  j["min_relative_slack"] = number(r.min_relative_slack());
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

bool CertificationReport::pass() const {
  for (const auto& c : cases)
    if (!c.pass()) return false;
  return true;
}

json to_json(const CaseSummary& s) {
  json j;
  j["case_id"] = s.case_id;
  j["trials"] = s.trials;
  j["passes"] = s.passes;
  j["vacuous"] = s.vacuous;
  j["pass"] = s.pass();
  j["min_relative_slack"] = number(s.min_relative_slack);
  j["argmin_digest"] = s.argmin_digest;
  if (s.worst) j["worst"] = to_json(*s.worst);
  json f = json::array();
  for (const auto& t : s.failures) f.push_back(to_json(t));
  j["failures"] = f;
  j["failures_omitted"] = s.failures_omitted;
  return j;
}

json to_json(const CertificationReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["kind"] = r.kind;
  j["config"] = r.config;
  j["tolerances"] = r.tolerances;
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  j["cases"] = cases;
  j["pass"] = r.pass();
  j["extras"] = r.extras;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

namespace {

void expect(std::vector<std::string>& errs, const json& j, const std::string& key,
            json::value_t type, const std::string& where) {
  if (!j.contains(key)) {
    errs.push_back(where + ": missing '" + key + "'");
    return;
  }
  const auto t = j.at(key).type();
  const bool numeric_ok = type == json::value_t::number_float &&
                          (t == json::value_t::number_integer ||
                           t == json::value_t::number_unsigned || t == json::value_t::null);
  const bool unsigned_ok = type == json::value_t::number_unsigned && t == json::value_t::number_integer &&
                           j.at(key).get<long long>() >= 0;
  if (t != type && !numeric_ok && !unsigned_ok) {
    errs.push_back(where + ": '" + key + "' has type " + j.at(key).type_name());
  }
}

void validate_trial(std::vector<std::string>& errs, const json& t, const std::string& where) {
  using vt = json::value_t;
  if (!t.is_object()) {
    errs.push_back(where + ": trial is not an object");
    return;
  }
  expect(errs, t, "case_id", vt::string, where);
  expect(errs, t, "digest", vt::string, where);
  expect(errs, t, "nu", vt::number_float, where);
  expect(errs, t, "vacuous", vt::boolean, where);
  expect(errs, t, "links", vt::array, where);
  expect(errs, t, "pass", vt::boolean, where);
  if (t.contains("links") && t["links"].is_array()) {
    bool all = true;
    for (std::size_t i = 0; i < t["links"].size(); ++i) {
      const auto& l = t["links"][i];
      const std::string w = where + ".links[" + std::to_string(i) + "]";
      expect(errs, l, "label", vt::string, w);
      expect(errs, l, "slack", vt::number_float, w);
      expect(errs, l, "scale", vt::number_float, w);
      expect(errs, l, "pass", vt::boolean, w);
      if (l.contains("pass") && l["pass"].is_boolean()) all = all && l["pass"].get<bool>();
    }
    if (t.contains("pass") && t["pass"].is_boolean() && t["pass"].get<bool>() != all) {
      errs.push_back(where + ": pass flag disagrees with link flags");
    }
  }
}

}  // namespace

std::vector<std::string> validate_report(const json& r) {
  using vt = json::value_t;
  std::vector<std::string> errs;
  if (!r.is_object()) return {"report is not a JSON object"};
  expect(errs, r, "schema_version", vt::number_unsigned, "report");
  if (r.contains("schema_version") && r["schema_version"].is_number_integer() &&
      r["schema_version"].get<int>() != kReportSchemaVersion) {
    errs.push_back("report: unsupported schema_version");
  }
  expect(errs, r, "tool_version", vt::string, "report");
  expect(errs, r, "kind", vt::string, "report");
  expect(errs, r, "config", vt::object, "report");
  expect(errs, r, "tolerances", vt::object, "report");
  expect(errs, r, "cases", vt::array, "report");
  expect(errs, r, "pass", vt::boolean, "report");
  expect(errs, r, "extras", vt::object, "report");
  expect(errs, r, "wall_time_s", vt::number_float, "report");
  if (!errs.empty()) return errs;

  bool all = true;
  for (std::size_t i = 0; i < r["cases"].size(); ++i) {
    const auto& c = r["cases"][i];
    const std::string w = "cases[" + std::to_string(i) + "]";
    expect(errs, c, "case_id", vt::string, w);
    expect(errs, c, "trials", vt::number_unsigned, w);
    expect(errs, c, "passes", vt::number_unsigned, w);
    expect(errs, c, "vacuous", vt::number_unsigned, w);
    expect(errs, c, "pass", vt::boolean, w);
    expect(errs, c, "min_relative_slack", vt::number_float, w);
    expect(errs, c, "argmin_digest", vt::string, w);
    expect(errs, c, "failures", vt::array, w);
    if (!errs.empty()) continue;
    const bool cp = c["passes"].get<std::size_t>() == c["trials"].get<std::size_t>();
    if (c["pass"].get<bool>() != cp) errs.push_back(w + ": pass flag disagrees with counts");
    all = all && cp;
    if (c.contains("worst")) validate_trial(errs, c["worst"], w + ".worst");
    for (std::size_t k = 0; k < c["failures"].size(); ++k) {
      validate_trial(errs, c["failures"][k], w + ".failures[" + std::to_string(k) + "]");
    }
  }
  if (errs.empty() && r["pass"].get<bool>() != all) {
    errs.push_back("report: global pass flag disagrees with case flags");
  }
  return errs;
}

CaseAccumulator::CaseAccumulator(std::string case_id, std::size_t max_failures)
    : max_failures_(max_failures) {
  s_.case_id = std::move(case_id);
  s_.min_relative_slack = std::numeric_limits<double>::infinity();
}

void CaseAccumulator::add(TrialReport trial) {
  ++s_.trials;
  if (trial.pass) ++s_.passes;
  if (trial.vacuous) ++s_.vacuous;
  const double r = trial.min_relative_slack();
  if (!trial.vacuous && (!have_ || r < best_)) {
    have_ = true;
    best_ = r;
    s_.min_relative_slack = r;
    s_.argmin_digest = trial.digest;
    s_.worst = trial;
  }
  if (!trial.pass) {
    if (s_.failures.size() < max_failures_) {
      s_.failures.push_back(std::move(trial));
    } else {
      ++s_.failures_omitted;
    }
  }
}

CaseSummary CaseAccumulator::finish() && { return std::move(s_); }

}  // namespace heinzcert
