#include "heinzcert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "heinzcert/hs_inequalities.hpp"
#include "heinzcert/operator_means.hpp"
#include "heinzcert/scalar.hpp"

namespace heinzcert {

using nlohmann::json;

namespace {

constexpr const char* kDigestVersion = "v1";

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string to_string(Group g) {
  switch (g) {
    case Group::kScalar: return "scalar";
    case Group::kOperator: return "op";
    case Group::kNorm: return "hs";
  }
  return {};
}

Group parse_group(std::string_view s) {
  if (s == "scalar") return Group::kScalar;
  if (s == "op") return Group::kOperator;
  if (s == "hs") return Group::kNorm;
  throw UsageError("unknown group '" + std::string(s) + "'; expected scalar, op or hs");
}

std::vector<CaseInfo> list_cases(std::optional<Group> group) {
  std::vector<CaseInfo> out;
  if (!group || *group == Group::kScalar)
    for (const auto& c : scalar::registry()) out.push_back({c.id, Group::kScalar, c.citation, c.domain_text});
  if (!group || *group == Group::kOperator)
    for (const auto& c : op::op_registry()) out.push_back({c.id, Group::kOperator, c.citation, c.domain_text});
  if (!group || *group == Group::kNorm)
    for (const auto& c : hs::hs_registry()) out.push_back({c.id, Group::kNorm, c.citation, c.domain_text});
  return out;
}

std::optional<Group> group_of(std::string_view id) {
  for (const auto& c : list_cases())
    if (c.id == id) return c.group;
  return std::nullopt;
}

std::vector<std::string> resolve_cases(const std::vector<std::string>& requested,
                                       const std::vector<Group>& allowed) {
  const auto all = list_cases();
  auto permitted = [&](Group g) {
    return allowed.empty() || std::find(allowed.begin(), allowed.end(), g) != allowed.end();
  };
  std::vector<std::string> out;
  auto push = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& r : requested) {
    if (r == "all") {
      for (const auto& c : all)
        if (permitted(c.group)) push(c.id);
      continue;
    }
    const auto g = group_of(r);
    if (!g || !permitted(*g)) {
      std::string valid;
      for (const auto& c : all)
        if (permitted(c.group)) valid += (valid.empty() ? "" : ", ") + c.id;
      throw UsageError("unknown case '" + r + "'; valid ids: " + valid);
    }
    push(r);
  }
  if (out.empty()) throw UsageError("no cases selected");
  return out;
}

std::vector<double> default_ab_grid() {
  std::vector<double> g;
  for (int k = -6; k <= 6; ++k) g.push_back(std::ldexp(1.0, k));
  return g;
}

std::vector<double> uniform_nu_grid(int den) {
  std::vector<double> g;
  for (int j = 0; j <= den; ++j) g.push_back(static_cast<double>(j) / den);
  return g;
}

// ---------------------------------------------------------------- scalar

json NonDominance::to_json() const {
  auto point = [](const std::optional<Point>& p) -> json {
    if (!p) return nullptr;
    return {{"a", p->a},
            {"b", p->b},
            {"nu", p->nu},
            {"new_2_1_slack", number(p->new_slack)},
            {"zw_case", p->zw_case},
            {"zw_slack", number(p->zw_slack)}};
  };
  return {{"compared", compared},
          {"tighter", point(tighter)},
          {"tighter_count", tighter_count},
          {"looser", point(looser)},
          {"looser_count", looser_count},
          {"found_both", tighter.has_value() && looser.has_value()}};
}

namespace {

std::optional<double> link_slack(const scalar::ScalarIneqCase& c, double a, double b, double nu,
                                 std::size_t link) {
  if (!c.domain(a, b, nu).is_inside()) return std::nullopt;
  const auto links = c.links(a, b, nu);
  if (link >= links.size()) return std::nullopt;
  return links[link].rhs - links[link].lhs;
}

}  // namespace

NonDominance find_non_dominance(const std::vector<double>& ab_grid, const std::vector<double>& nu_grid) {
  const auto& fresh = scalar::find_case("new-2.1");
  const auto& zw5 = scalar::find_case("zw-1.5");
  const auto& zw6 = scalar::find_case("zw-1.6");
  NonDominance nd;
  double best_t = 0.0, best_l = 0.0;
  for (double nu : nu_grid)
    for (double a : ab_grid)
      for (double b : ab_grid) {
        const auto s_new = link_slack(fresh, a, b, nu, 0);
        if (!s_new) continue;
        const bool first = zw5.domain(a, b, nu).is_inside();
        const auto& zw = first ? zw5 : zw6;
        const auto s_zw = link_slack(zw, a, b, nu, 1);
        if (!s_zw) continue;
        ++nd.compared;
        // Differences at rounding level are ties, not witnesses.
        const double margin = *s_zw - *s_new;
        const double noise = 1e-12 * std::max({1.0, a, b});
        NonDominance::Point p{a, b, nu, *s_new, *s_zw, zw.id};
        if (margin > noise) {
          ++nd.tighter_count;
          if (margin > best_t) best_t = margin, nd.tighter = p;
        } else if (margin < -noise) {
          ++nd.looser_count;
          if (-margin > best_l) best_l = -margin, nd.looser = p;
        }
      }
  return nd;
}

CertificationReport scalar_sweep(const ScalarSweepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ids = resolve_cases(cfg.cases, {Group::kScalar});
  CertificationReport rep;
  rep.kind = "scalar-sweep";
  rep.config = {{"cases", ids}, {"ab_grid", cfg.ab_grid}, {"nu_grid", cfg.nu_grid},
                {"max_failures", cfg.max_failures}};
  rep.tolerances = {{"scalar", cfg.tol}};
  for (const auto& id : ids) {
    const auto& c = scalar::find_case(id);
    CaseAccumulator acc(id, cfg.max_failures);
    std::uint64_t index = 0;
    std::size_t outside = 0;
    for (double nu : cfg.nu_grid)
      for (double a : cfg.ab_grid)
        for (double b : cfg.ab_grid) {
          if (c.domain(a, b, nu).is_outside()) {
            ++outside;
            continue;
          }
          TrialInput in;
          in.case_id = id;
          in.trial = index++;
          in.a = a;
          in.b = b;
          in.nu = nu;
          in.tol = cfg.tol;
          acc.add(run_trial(in));
        }
    rep.extras["outside_domain_points"][id] = outside;
    rep.cases.push_back(std::move(acc).finish());
  }
  const bool has_new = std::find(ids.begin(), ids.end(), "new-2.1") != ids.end();
  const bool has_zw = std::find(ids.begin(), ids.end(), "zw-1.5") != ids.end() ||
                      std::find(ids.begin(), ids.end(), "zw-1.6") != ids.end();
  if (has_new && has_zw) rep.extras["non_dominance"] = find_non_dominance(cfg.ab_grid, cfg.nu_grid).to_json();
  rep.wall_time_s = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------- matrix

json VerifyConfig::to_json() const {
  json j = {{"cases", cases},
            {"dims", dims},
            {"trials", trials},
            {"seed", seed},
            {"nu_grid", nu_grid},
            {"law", law ? json(law->to_string()) : json("rotation")},
            {"field", gen::to_string(field)},
            {"lenient_x", lenient_x},
            {"max_failures", max_failures}};
  if (structure) j["structure"] = gen::to_string(*structure);
  return j;
}

const std::vector<gen::SpectrumLaw>& default_laws() {
  static const std::vector<gen::SpectrumLaw> laws = {
      gen::SpectrumLaw::log_uniform(1e-3, 1e3),
      gen::SpectrumLaw::log_uniform(0.5, 2.0),
      gen::SpectrumLaw::clustered(1.0, 1e-3),
  };
  return laws;
}

namespace {

double default_tol(Group g) { return g == Group::kNorm ? kNormTol : kOperatorTol; }

bool wants_ordered(const std::string& id) {
  return group_of(id) == Group::kOperator && op::find_case(id).wants_ordered_pair;
}

}  // namespace

TrialInput plan_trial(const VerifyConfig& cfg, const std::string& case_id, std::uint64_t trial) {
  const auto g = group_of(case_id);
  if (!g || *g == Group::kScalar) throw UsageError("not a matrix case: '" + case_id + "'");
  if (cfg.dims.empty() || cfg.nu_grid.empty()) throw UsageError("empty dim or nu grid");
  const std::uint64_t nd = cfg.dims.size(), nn = cfg.nu_grid.size();

  TrialInput in;
  in.case_id = case_id;
  in.trial = trial;
  in.tol = cfg.tol.value_or(default_tol(*g));
  in.lenient_x = cfg.lenient_x;
  in.nu = cfg.nu_grid[(trial / nd) % nn];
  auto& s = in.spec;
  s.dim = cfg.dims[trial % nd];
  s.seed = cfg.seed;
  s.field = cfg.field;
  const auto& laws = default_laws();
  s.spectrum = cfg.law ? *cfg.law : laws[(trial / (nd * nn)) % laws.size()];
  if (cfg.structure) s.structure = *cfg.structure;
  if (wants_ordered(case_id)) {
    // Diagonal stays diagonal so commuting oracles still apply.
    if (s.structure != gen::Structure::kDiagonal) s.structure = gen::Structure::kOrderedPair;
    // Every other nu cycle uses a rank-deficient W (W = 0 when dim = 1).
    if ((trial / nd) % 2 == 1) s.aux_rank = s.dim / 2;
  }
  return in;
}

TrialData generate(const TrialInput& in) {
  const auto g = group_of(in.case_id);
  if (!g || *g == Group::kScalar) throw UsageError("not a matrix case: '" + in.case_id + "'");
  gen::Rng rng(in.spec.seed, in.trial);
  op::OperatorPair pair = wants_ordered(in.case_id) ? gen::gen_ordered_pair(in.spec, rng) : gen::gen_pair(in.spec, rng);
  TrialData d{pair.a, pair.b, std::nullopt, 0};
  if (*g == Group::kNorm) {
    const auto& c = hs::find_case(in.case_id);
    if (c.requires_positive_x && !in.lenient_x) {
      d.x = gen::gen_pd(in.spec, rng).general();
    } else {
      d.x = gen::gen_general(in.spec, rng);
    }
  }
  std::uint64_t h = gen::fingerprint(d.a.data());
  h = gen::fingerprint(d.b.data(), h);
  if (d.x) h = gen::fingerprint(d.x->data(), h);
  d.fingerprint = gen::fingerprint(in.nu, h);
  return d;
}

namespace {

std::uint64_t scalar_fingerprint(const TrialInput& in) {
  return gen::fingerprint(in.nu, gen::fingerprint(in.b, gen::fingerprint(in.a)));
}

double condition_number(const HermitianMatrix& m) {
  const auto ev = eigh(m).eigenvalues;
  return ev(ev.size() - 1) / ev(0);
}

TrialReport error_report(const TrialInput& in, const std::string& what) {
  TrialReport r;
  r.case_id = in.case_id;
  r.nu = in.nu;
  r.pass = false;
  r.diagnostics["error"] = what;
  return r;
}

TrialReport run_trial_impl(const TrialInput& in, std::uint64_t* fp_out) {
  const auto g = group_of(in.case_id);
  if (!g) throw UsageError("unknown case '" + in.case_id + "'");
  if (*g == Group::kScalar) {
    const std::uint64_t fp = scalar_fingerprint(in);
    if (fp_out) *fp_out = fp;
    TrialReport r;
    try {
      r = scalar::evaluate(scalar::find_case(in.case_id), in.a, in.b, in.nu, in.tol);
    } catch (const std::exception& e) {
      r = error_report(in, e.what());
    }
    r.digest = encode_digest(in, fp);
    return r;
  }

  TrialData d = generate(in);
  if (fp_out) *fp_out = d.fingerprint;
  TrialReport r;
  try {
    if (*g == Group::kOperator) {
      const auto& c = op::find_case(in.case_id);
      auto pair = c.wants_ordered_pair ? op::OperatorPair::make_ordered(d.a, d.b) : op::OperatorPair::make(d.a, d.b);
      r = op::certify_operator(c, pair, in.nu, in.tol);
    } else {
      hs::CertifyOptions opts;
      opts.tol = in.tol;
      opts.lenient_x = in.lenient_x;
      r = hs::certify_hs(hs::find_case(in.case_id), hs::NormTriple{d.a, d.b, *d.x}, in.nu, opts);
    }
    r.diagnostics["condition_number"] = number(std::max(condition_number(d.a), condition_number(d.b)));
  } catch (const std::exception& e) {
    r = error_report(in, e.what());
  }
  r.digest = encode_digest(in, d.fingerprint);
  return r;
}

}  // namespace

TrialReport run_trial(const TrialInput& in) { return run_trial_impl(in, nullptr); }

std::string encode_digest(const TrialInput& in, std::uint64_t fingerprint) {
  using gen::exact_number;
  std::string s = std::string(kDigestVersion) + ";case=" + in.case_id;
  if (group_of(in.case_id) == Group::kScalar) {
    s += ";a=" + exact_number(in.a) + ";b=" + exact_number(in.b);
  } else {
    const auto& sp = in.spec;
    s += ";dim=" + std::to_string(sp.dim) + ";law=" + sp.spectrum.to_string() +
         ";structure=" + gen::to_string(sp.structure) + ";field=" + gen::to_string(sp.field);
    if (sp.aux_spectrum) s += ";aux_law=" + sp.aux_spectrum->to_string();
    if (sp.aux_rank) s += ";aux_rank=" + std::to_string(*sp.aux_rank);
    s += ";seed=" + std::to_string(sp.seed) + ";trial=" + std::to_string(in.trial);
    if (in.lenient_x) s += ";lenient_x=1";
  }
  s += ";nu=" + exact_number(in.nu) + ";tol=" + exact_number(in.tol) + ";fp=" + hex64(fingerprint);
  return s;
}

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& v, int base = 10) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used, base);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size() || v[0] == '-') throw UsageError("malformed digest field " + key + "='" + v + "'");
  return out;
}

}  // namespace

TrialInput decode_digest(std::string_view digest, std::uint64_t* fingerprint) {
  std::map<std::string, std::string> kv;
  std::size_t start = 0;
  bool first = true;
  while (start <= digest.size()) {
    auto end = digest.find(';', start);
    if (end == std::string_view::npos) end = digest.size();
    const std::string part(digest.substr(start, end - start));
    start = end + 1;
    if (first) {
      if (part != kDigestVersion) throw UsageError("malformed digest: expected prefix '" + std::string(kDigestVersion) + "'");
      first = false;
      continue;
    }
    // Spectrum laws contain commas and parentheses but never ';' or '='.
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("malformed digest field '" + part + "'");
    if (!kv.emplace(part.substr(0, eq), part.substr(eq + 1)).second)
      throw UsageError("malformed digest: duplicate field '" + part.substr(0, eq) + "'");
    if (end == digest.size()) break;
  }
  auto take = [&](const std::string& k) -> std::string {
    auto it = kv.find(k);
    if (it == kv.end()) throw UsageError("malformed digest: missing field '" + k + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto num = [&](const std::string& k) {
    const std::string v = take(k);
    try {
      return gen::parse_number(v);
    } catch (const gen::SpecError&) {
      throw UsageError("malformed digest field " + k + "='" + v + "'");
    }
  };

  TrialInput in;
  in.case_id = take("case");
  const auto g = group_of(in.case_id);
  if (!g) throw UsageError("malformed digest: unknown case '" + in.case_id + "'");
  try {
    if (*g == Group::kScalar) {
      in.a = num("a");
      in.b = num("b");
    } else {
      in.spec.dim = parse_u64("dim", take("dim"));
      in.spec.spectrum = gen::SpectrumLaw::parse(take("law"));
      in.spec.structure = gen::parse_structure(take("structure"));
      in.spec.field = gen::parse_field(take("field"));
      if (kv.count("aux_law")) in.spec.aux_spectrum = gen::SpectrumLaw::parse(take("aux_law"));
      if (kv.count("aux_rank")) in.spec.aux_rank = parse_u64("aux_rank", take("aux_rank"));
      in.spec.seed = parse_u64("seed", take("seed"));
      in.trial = parse_u64("trial", take("trial"));
      if (kv.count("lenient_x")) in.lenient_x = take("lenient_x") == "1";
      in.spec.validate();
    }
  } catch (const gen::SpecError& e) {
    throw UsageError(std::string("malformed digest: ") + e.what());
  }
  in.nu = num("nu");
  in.tol = num("tol");
  const std::uint64_t fp = parse_u64("fp", take("fp"), 16);
  if (!kv.empty()) throw UsageError("malformed digest: unexpected field '" + kv.begin()->first + "'");
  if (fingerprint) *fingerprint = fp;
  return in;
}

CertificationReport matrix_verify(const VerifyConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ids = resolve_cases(cfg.cases, {Group::kOperator, Group::kNorm});
  if (cfg.trials == 0) throw UsageError("--trials must be >= 1");
  for (auto d : cfg.dims)
    if (d == 0) throw UsageError("--dim must be >= 1");
  if (cfg.law) cfg.law->validate(cfg.dims.front());
  for (double nu : cfg.nu_grid)
    if (!(nu >= 0.0 && nu <= 1.0)) throw UsageError("--nu values must lie in [0, 1]");

  CertificationReport rep;
  rep.kind = "matrix-verify";
  VerifyConfig echo = cfg;
  echo.cases = ids;
  rep.config = echo.to_json();
  rep.tolerances = {{"operator", cfg.tol.value_or(kOperatorTol)},
                    {"norm", cfg.tol.value_or(kNormTol)},
                    {"psd_input", kPsdTol},
                    {"eigenbasis_agreement", kEigenbasisTol}};

  const unsigned threads = std::max(1u, cfg.threads);
  for (const auto& id : ids) {
    std::vector<TrialReport> results(cfg.trials);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < cfg.trials;) results[i] = run_trial(plan_trial(cfg, id, i));
    };
    if (threads == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    double max_cond = 0.0, max_eig_diff = 0.0;
    std::size_t errors = 0;
    CaseAccumulator acc(id, cfg.max_failures);
    for (auto& r : results) {
      const auto& dg = r.diagnostics;
      if (dg.contains("condition_number") && dg["condition_number"].is_number())
        max_cond = std::max(max_cond, dg["condition_number"].get<double>());
      if (dg.contains("eigenbasis_max_rel_diff") && dg["eigenbasis_max_rel_diff"].is_number())
        max_eig_diff = std::max(max_eig_diff, dg["eigenbasis_max_rel_diff"].get<double>());
      if (dg.contains("error")) ++errors;
      acc.add(std::move(r));
    }
    json ex = {{"max_condition_number", number(max_cond)}, {"errors", errors}};
    if (group_of(id) == Group::kNorm) {
      ex["max_eigenbasis_rel_diff"] = number(max_eig_diff);
      ex["eigenbasis_agreement"] = max_eig_diff <= kEigenbasisTol;
    }
    rep.extras["cases"][id] = ex;
    rep.cases.push_back(std::move(acc).finish());
  }
  rep.wall_time_s = seconds_since(t0);
  return rep;
}

ReplayResult replay(std::string_view digest, std::optional<double> tol) {
  std::uint64_t expected = 0;
  TrialInput in = decode_digest(digest, &expected);
  if (tol) in.tol = *tol;
  ReplayResult out;
  out.expected_fingerprint = expected;
  out.report = run_trial_impl(in, &out.actual_fingerprint);
  return out;
}

// ---------------------------------------------------------------- profile

std::string GapProfile::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i] && std::isfinite(*row[i])) {
        std::snprintf(buf, sizeof buf, "%.17g", *row[i]);
        os << buf;
      }
    }
    os << '\n';
  }
  return os.str();
}

GapProfile gap_profile(const GapProfileConfig& cfg) {
  const auto ids = resolve_cases(cfg.cases, {});
  if (cfg.nu_grid.empty()) throw UsageError("empty nu grid");

  // One evaluation per (case, nu); columns are discovered from link labels.
  std::vector<std::map<std::string, double>> per_nu(cfg.nu_grid.size());
  std::vector<std::string> columns{"nu"};
  auto add_column = [&](const std::string& c) {
    if (std::find(columns.begin(), columns.end(), c) == columns.end()) columns.push_back(c);
  };

  for (const auto& id : ids) {
    const Group g = *group_of(id);
    std::optional<TrialData> data;
    if (g != Group::kScalar) {
      TrialInput in;
      in.case_id = id;
      in.spec = cfg.spec;
      if (wants_ordered(id) && in.spec.structure != gen::Structure::kDiagonal)
        in.spec.structure = gen::Structure::kOrderedPair;
      in.spec.validate();
      data = generate(in);
    }
    for (std::size_t k = 0; k < cfg.nu_grid.size(); ++k) {
      const double nu = cfg.nu_grid[k];
      std::vector<std::pair<std::string, double>> slacks;
      if (g == Group::kScalar) {
        const auto& c = scalar::find_case(id);
        if (c.domain(cfg.a, cfg.b, nu).is_inside())
          for (const auto& l : c.links(cfg.a, cfg.b, nu)) slacks.emplace_back(l.label, l.rhs - l.lhs);
      } else {
        TrialReport r;
        if (g == Group::kOperator) {
          const auto& c = op::find_case(id);
          auto pair = c.wants_ordered_pair ? op::OperatorPair::make_ordered(data->a, data->b)
                                           : op::OperatorPair::make(data->a, data->b);
          r = op::certify_operator(c, pair, nu);
        } else {
          hs::CertifyOptions opts;
          opts.diagnostics = false;
          r = hs::certify_hs(hs::find_case(id), hs::NormTriple{data->a, data->b, *data->x}, nu, opts);
        }
        for (const auto& l : r.links) slacks.emplace_back(l.label, l.slack);
      }
      for (const auto& [label, s] : slacks) {
        add_column(id + ":" + label);
        per_nu[k][id + ":" + label] = s;
      }
    }
  }

  GapProfile prof;
  const bool compare = std::find(ids.begin(), ids.end(), "new-2.1") != ids.end() &&
                       (std::find(ids.begin(), ids.end(), "zw-1.5") != ids.end() ||
                        std::find(ids.begin(), ids.end(), "zw-1.6") != ids.end());
  if (compare) columns.push_back("new-2.1-minus-zw:L2");
  prof.columns = columns;
  std::optional<double> prev_delta;
  double prev_nu = 0.0;
  for (std::size_t k = 0; k < cfg.nu_grid.size(); ++k) {
    std::vector<std::optional<double>> row{cfg.nu_grid[k]};
    auto& m = per_nu[k];
    for (std::size_t c = 1; c < columns.size(); ++c) {
      auto it = m.find(columns[c]);
      row.push_back(it == m.end() ? std::nullopt : std::optional<double>(it->second));
    }
    if (compare) {
      std::optional<double> delta;
      auto n = m.find("new-2.1:L1");
      auto z = m.count("zw-1.5:L2") ? m.find("zw-1.5:L2") : m.find("zw-1.6:L2");
      if (n != m.end() && z != m.end()) delta = n->second - z->second;
      row.back() = delta;
      if (delta && prev_delta && ((*delta > 0) != (*prev_delta > 0)))
        prof.crossings.push_back(0.5 * (prev_nu + cfg.nu_grid[k]));
      if (delta) prev_delta = delta, prev_nu = cfg.nu_grid[k];
    }
    prof.rows.push_back(std::move(row));
  }
  return prof;
}

}  // namespace heinzcert
