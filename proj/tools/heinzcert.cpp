// heinzcert: command-line front end for the inequality certifier.
//
// Exit codes: 0 every trial passed, 1 some certification failed,
// 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "heinzcert/certify.hpp"

namespace {

using namespace heinzcert;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Accepts "0.25" as well as "1/4".
double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return gen::parse_number(s);
    return gen::parse_number(s.substr(0, slash)) / gen::parse_number(s.substr(slash + 1));
  } catch (const gen::SpecError&) {
    throw UsageError("not a number or fraction: '" + s + "'");
  }
}

std::vector<double> parse_nus(const std::vector<std::string>& in) {
  std::vector<double> out;
  for (const auto& s : in) {
    const double v = parse_fraction(s);
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError("--nu " + s + " is outside [0, 1]");
    out.push_back(v);
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void print_summary(const CertificationReport& r, std::ostream& os) {
  for (const auto& c : r.cases) {
    os << (c.pass() ? "PASS " : "FAIL ") << c.case_id << "  trials=" << c.trials << " passes=" << c.passes
       << " vacuous=" << c.vacuous << " min_rel_slack=" << fmt(c.min_relative_slack) << '\n';
    if (!c.pass() && !c.argmin_digest.empty()) os << "     worst: " << c.argmin_digest << '\n';
  }
  if (r.extras.contains("non_dominance")) {
    const auto& nd = r.extras["non_dominance"];
    os << "non-dominance: tighter=" << nd["tighter_count"] << " looser=" << nd["looser_count"] << '\n';
  }
  os << (r.pass() ? "PASS" : "FAIL") << "  " << r.cases.size() << " case(s), " << fmt(r.wall_time_s) << " s\n";
}

// JSON to --out (or stdout); with --format text the summary goes to stdout.
int finish_report(const CertificationReport& r, const std::string& format, const std::string& out) {
  const std::string body = to_json(r).dump(2) + "\n";
  if (format == "text") {
    if (!out.empty()) emit(body, out);
    print_summary(r, std::cout);
  } else {
    emit(body, out);
    if (!out.empty()) print_summary(r, std::cerr);
  }
  return r.pass() ? kExitPass : kExitFail;
}

struct Options {
  std::string format = "text";
  std::string group;
  std::vector<std::string> cases{"all"};
  std::vector<std::size_t> dims;
  std::size_t trials = 10000;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::vector<std::string> nus;
  std::string out;
  std::string law;
  std::string structure;
  std::string field = "real";
  bool lenient_x = false;
  unsigned threads = 1;
  std::size_t max_failures = 50;
  std::string digest;
  double a = 4.0;
  double b = 1.0;
};

void add_case_flag(CLI::App* sc, Options& o) {
  sc->add_option("--case,-c", o.cases, "Case ids, or 'all'")->delimiter(',');
}

void add_output_flags(CLI::App* sc, Options& o, const char* default_format) {
  o.format = default_format;
  sc->add_option("--format,-f", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sc->add_option("--out,-o", o.out, "Write the JSON report here ('-' for stdout)");
}

void add_matrix_flags(CLI::App* sc, Options& o) {
  sc->add_option("--dim,-d", o.dims, "Matrix dimensions, cycled over trials (default 1,2,3,5,8)")->delimiter(',');
  sc->add_option("--seed,-s", o.seed, "Run seed");
  sc->add_option("--law", o.law,
                 "Spectrum law: log-uniform(lo,hi), clustered(center,jitter) or explicit(v1,...); "
                 "default rotates through three laws");
  sc->add_option("--structure", o.structure, "general-pd, diagonal, ordered-pair or commuting-pair");
  sc->add_option("--field", o.field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
}

int run_list(const Options& o) {
  std::optional<Group> g;
  if (!o.group.empty()) g = parse_group(o.group);
  const auto cases = list_cases(g);
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& c : cases)
      arr.push_back({{"id", c.id}, {"eq", c.citation}, {"domain", c.domain}, {"group", to_string(c.group)}});
    std::cout << arr.dump(2) << '\n';
    return kExitPass;
  }
  for (const auto& c : cases) {
    std::printf("%-14s %-6s %s\n%21s domain: %s\n", c.id.c_str(), to_string(c.group).c_str(),
                c.citation.c_str(), "", c.domain.c_str());
  }
  return kExitPass;
}

int run_scalar_sweep(const Options& o) {
  ScalarSweepConfig cfg;
  cfg.cases = o.cases;
  if (!o.nus.empty()) cfg.nu_grid = parse_nus(o.nus);
  if (o.tol) cfg.tol = *o.tol;
  cfg.max_failures = o.max_failures;
  return finish_report(scalar_sweep(cfg), o.format, o.out);
}

VerifyConfig verify_config(const Options& o) {
  VerifyConfig cfg;
  cfg.cases = o.cases;
  if (!o.dims.empty()) cfg.dims = o.dims;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  if (!o.nus.empty()) cfg.nu_grid = parse_nus(o.nus);
  if (!o.law.empty()) cfg.law = gen::SpectrumLaw::parse(o.law);
  if (!o.structure.empty()) cfg.structure = gen::parse_structure(o.structure);
  cfg.field = gen::parse_field(o.field);
  cfg.lenient_x = o.lenient_x;
  cfg.threads = o.threads;
  cfg.max_failures = o.max_failures;
  return cfg;
}

int run_matrix_verify(const Options& o) {
  return finish_report(matrix_verify(verify_config(o)), o.format, o.out);
}

int run_replay(const Options& o) {
  const ReplayResult r = replay(o.digest, o.tol);
  const bool match = r.fingerprint_match();
  if (o.format == "json") {
    json j = to_json(r.report);
    j["fingerprint_match"] = match;
    emit(j.dump(2) + "\n", o.out);
  } else {
    const auto& t = r.report;
    std::cout << (t.pass ? "PASS " : "FAIL ") << t.case_id << " nu=" << t.nu
              << (t.vacuous ? " (vacuous: " + t.vacuous_reason + ")" : "") << '\n';
    for (const auto& l : t.links) {
      std::cout << "  " << l.label << ": slack=" << fmt(l.slack) << " scale=" << fmt(l.scale)
                << (l.pass ? "" : "  VIOLATED") << '\n';
    }
    if (t.diagnostics.contains("error")) std::cout << "  error: " << t.diagnostics["error"].get<std::string>() << '\n';
    if (!o.out.empty()) emit(to_json(t).dump(2) + "\n", o.out);
  }
  if (!match) {
    std::cerr << "digest mismatch: inputs regenerate to fingerprint " << std::hex << r.actual_fingerprint
              << ", digest records " << r.expected_fingerprint << std::dec << '\n';
    return kExitFail;
  }
  return r.report.pass ? kExitPass : kExitFail;
}

int run_gap_profile(const Options& o) {
  GapProfileConfig cfg;
  cfg.cases = o.cases;
  if (!o.nus.empty()) cfg.nu_grid = parse_nus(o.nus);
  cfg.a = o.a;
  cfg.b = o.b;
  cfg.spec.dim = o.dims.empty() ? 3 : o.dims.front();
  cfg.spec.seed = o.seed;
  cfg.spec.field = gen::parse_field(o.field);
  if (!o.law.empty()) cfg.spec.spectrum = gen::SpectrumLaw::parse(o.law);
  if (!o.structure.empty()) cfg.spec.structure = gen::parse_structure(o.structure);
  const GapProfile p = gap_profile(cfg);
  emit(p.to_csv(), o.out);
  for (double c : p.crossings) std::cerr << "crossing near nu=" << c << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify weighted mean inequalities for scalars, operators and Hilbert-Schmidt norms"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.set_config("--config", "", "TOML/INI file mirroring the flags; flags win");
  app.require_subcommand(1);
  Options o;

  auto* list = app.add_subcommand("list", "List inequality cases");
  list->add_option("--format,-f", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  list->add_option("--group,-g", o.group, "scalar, op or hs")->check(CLI::IsMember({"scalar", "op", "hs"}));

  auto* sweep = app.add_subcommand("scalar-sweep", "Exhaustive grid over (a, b, nu) for scalar cases");
  add_case_flag(sweep, o);
  add_output_flags(sweep, o, "text");
  sweep->add_option("--nu", o.nus, "nu values (default j/64); fractions allowed")->delimiter(',');
  sweep->add_option("--tol", o.tol, "Relative tolerance");
  sweep->add_option("--max-failures", o.max_failures, "Failing trials kept per case");

  auto* verify = app.add_subcommand("matrix-verify", "Seeded randomized certification of matrix cases");
  add_case_flag(verify, o);
  add_output_flags(verify, o, "text");
  add_matrix_flags(verify, o);
  verify->add_option("--trials,-n", o.trials, "Trials per case");
  verify->add_option("--tol", o.tol, "Relative tolerance (default per group)");
  verify->add_option("--nu", o.nus, "nu grid (default k/32)")->delimiter(',');
  verify->add_flag("--lenient-x", o.lenient_x, "Draw X without the positivity hypothesis");
  verify->add_option("--threads,-j", o.threads, "Worker threads; the report does not depend on it");
  verify->add_option("--max-failures", o.max_failures, "Failing trials kept per case");

  auto* rep = app.add_subcommand("replay", "Re-run one trial from its digest");
  rep->add_option("digest", o.digest, "Digest string from a report")->required();
  add_output_flags(rep, o, "text");
  rep->add_option("--tol", o.tol, "Override the recorded tolerance");

  auto* prof = app.add_subcommand("gap-profile", "CSV of per-link slack along a nu grid");
  prof->add_option("--case,-c", o.cases, "Case ids")->delimiter(',')->required();
  prof->add_option("--out,-o", o.out, "CSV path (default stdout)");
  prof->add_option("--nu", o.nus, "nu grid (default k/32)")->delimiter(',');
  prof->add_option("--a", o.a, "Scalar input a");
  prof->add_option("--b", o.b, "Scalar input b");
  add_matrix_flags(prof, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*list) return run_list(o);
    if (*sweep) return run_scalar_sweep(o);
    if (*verify) return run_matrix_verify(o);
    if (*rep) return run_replay(o);
    if (*prof) return run_gap_profile(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gen::SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
