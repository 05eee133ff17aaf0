#include "heinzcert/scalar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heinzcert::scalar {

Weight::Weight(double nu) : nu_(nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    std::ostringstream os;
    os << "weight nu must lie in [0, 1], got " << nu;
    throw DomainError(os.str());
  }
}

double pow0(double base, double exp) {
  if (exp == 0.0) return 1.0;
  return std::pow(base, exp);
}

double weighted_arith(double a, double b, double nu) { return nu * a + (1.0 - nu) * b; }

double weighted_geom(double a, double b, double nu) { return pow0(a, nu) * pow0(b, 1.0 - nu); }

double heinz(double a, double b, double nu) {
  const double mu = 1.0 - nu;
  return (pow0(a, nu) * pow0(b, mu) + pow0(a, mu) * pow0(b, nu)) / 2.0;
}

double heron(double a, double b, double alpha) {
  return (1.0 - alpha) * std::sqrt(a * b) + alpha * (a + b) / 2.0;
}

double alpha_of_nu(double nu) { return 1.0 - 4.0 * (nu - nu * nu); }

std::vector<Link> chain(std::span<const double> sides) {
  std::vector<Link> out;
  for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
    out.push_back({"L" + std::to_string(i + 1), sides[i], sides[i + 1]});
  }
  return out;
}

namespace {

double sq(double x) { return x * x; }
// (sqrt(a) - sqrt(b))^2
double root_gap(double a, double b) { return sq(std::sqrt(a) - std::sqrt(b)); }
double quartic_mean(double a, double b) { return std::sqrt(std::sqrt(a * b)); }

std::vector<Link> chain_of(std::initializer_list<double> s) {
  const std::vector<double> v(s);
  return chain(v);
}

DomainStatus positive_pair(double a, double b, double nu) {
  if (!(a > 0.0) || !std::isfinite(a)) return DomainStatus::outside("requires a > 0");
  if (!(b > 0.0) || !std::isfinite(b)) return DomainStatus::outside("requires b > 0");
  if (!(nu >= 0.0 && nu <= 1.0)) return DomainStatus::outside("requires 0 <= nu <= 1");
  return DomainStatus::inside();
}

using Pred = bool (*)(double);

std::function<DomainStatus(double, double, double)> nu_domain(Pred pred, std::string text) {
  return [pred, text = std::move(text)](double a, double b, double nu) {
    auto base = positive_pair(a, b, nu);
    if (!base.is_inside()) return base;
    if (!pred(nu)) return DomainStatus::outside("requires " + text);
    return DomainStatus::inside();
  };
}

std::function<DomainStatus(double, double, double)> any_nu() {
  return [](double a, double b, double nu) { return positive_pair(a, b, nu); };
}

std::vector<ScalarIneqCase> build_registry() {
  std::vector<ScalarIneqCase> r;

  r.push_back({"young-1.1", "Young's inequality", "a,b > 0; 0 <= nu <= 1", any_nu(),
               [](double a, double b, double nu) {
                 return chain_of({weighted_geom(a, b, nu), weighted_arith(a, b, nu)});
               }});

  r.push_back({"km-1.3", "Kittaneh-Manasrah refinement: a^nu b^(1-nu) + r0 (sqrt a - sqrt b)^2 <= nu a + (1-nu) b",
               "a,b > 0; 0 <= nu <= 1", any_nu(), [](double a, double b, double nu) {
                 const Weight w(nu);
                 return chain_of({weighted_geom(a, b, nu) + w.r0() * root_gap(a, b),
                                  weighted_arith(a, b, nu)});
               }});

  r.push_back({"km-1.4", "Kittaneh-Manasrah reverse: nu a + (1-nu) b <= a^nu b^(1-nu) + R0 (sqrt a - sqrt b)^2",
               "a,b > 0; 0 <= nu <= 1", any_nu(), [](double a, double b, double nu) {
                 const Weight w(nu);
                 return chain_of({weighted_arith(a, b, nu),
                                  weighted_geom(a, b, nu) + w.R0() * root_gap(a, b)});
               }});

  // Zhao-Wu chains. The printed weights are a^(1-nu) b^nu against
  // (1-nu) a + nu b; their r0 is min(2nu, 1-2nu) on (0, 1/2] and
  // min(2nu-1, 2-2nu) on (1/2, 1).
  r.push_back({"zw-1.5", "Zhao-Wu refinement and reverse (nu <= 1/2), r0 = min(2nu, 1-2nu)",
               "a,b > 0; 0 < nu <= 1/2",
               nu_domain([](double nu) { return nu > 0.0 && nu <= 0.5; }, "0 < nu <= 1/2"),
               [](double a, double b, double nu) {
                 const double r0 = std::min(2.0 * nu, 1.0 - 2.0 * nu);
                 const double g = pow0(a, 1.0 - nu) * pow0(b, nu);
                 const double q = quartic_mean(a, b);
                 return chain_of({g + nu * root_gap(a, b) + r0 * sq(q - std::sqrt(a)),
                                  (1.0 - nu) * a + nu * b,
                                  g + (1.0 - nu) * root_gap(a, b) - r0 * sq(q - std::sqrt(b))});
               }});

  r.push_back({"zw-1.6", "Zhao-Wu refinement and reverse (nu > 1/2), r0 = min(2nu-1, 2-2nu)",
               "a,b > 0; 1/2 < nu < 1",
               nu_domain([](double nu) { return nu > 0.5 && nu < 1.0; }, "1/2 < nu < 1"),
               [](double a, double b, double nu) {
                 const double r0 = std::min(2.0 * nu - 1.0, 2.0 - 2.0 * nu);
                 const double g = pow0(a, 1.0 - nu) * pow0(b, nu);
                 const double q = quartic_mean(a, b);
                 return chain_of({g + (1.0 - nu) * root_gap(a, b) + r0 * sq(q - std::sqrt(b)),
                                  (1.0 - nu) * a + nu * b,
                                  g + nu * root_gap(a, b) - r0 * sq(q - std::sqrt(a))});
               }});

  r.push_back({"kai-1.9", "Kai: (nu^2 a)^nu b^(1-nu) + nu^2 (sqrt a - sqrt b)^2 <= nu^2 a + (1-nu)^2 b",
               "a,b > 0; 0 <= nu <= 1/2",
               nu_domain([](double nu) { return nu <= 0.5; }, "0 <= nu <= 1/2"),
               [](double a, double b, double nu) {
                 return chain_of({pow0(nu * nu * a, nu) * pow0(b, 1.0 - nu) + nu * nu * root_gap(a, b),
                                  nu * nu * a + sq(1.0 - nu) * b});
               }});

  r.push_back({"kai-1.10", "Kai: a^nu ((1-nu)^2 b)^(1-nu) + (1-nu)^2 (sqrt a - sqrt b)^2 <= nu^2 a + (1-nu)^2 b",
               "a,b > 0; 1/2 <= nu <= 1",
               nu_domain([](double nu) { return nu >= 0.5; }, "1/2 <= nu <= 1"),
               [](double a, double b, double nu) {
                 const double m = 1.0 - nu;
                 return chain_of({pow0(a, nu) * pow0(m * m * b, m) + m * m * root_gap(a, b),
                                  nu * nu * a + m * m * b});
               }});

  r.push_back({"bk-1.11", "Burqan-Khandaqji reverse: nu^2 a + (1-nu)^2 b <= nu^2 (sqrt a - sqrt b)^2 + (a nu^2)^nu b^(1-nu)",
               "a,b > 0; 1/2 <= nu <= 1",
               nu_domain([](double nu) { return nu >= 0.5; }, "1/2 <= nu <= 1"),
               [](double a, double b, double nu) {
                 return chain_of({nu * nu * a + sq(1.0 - nu) * b,
                                  nu * nu * root_gap(a, b) + pow0(a * nu * nu, nu) * pow0(b, 1.0 - nu)});
               }});

  r.push_back({"bk-1.12", "Burqan-Khandaqji reverse: nu^2 a + (1-nu)^2 b <= (1-nu)^2 (sqrt a - sqrt b)^2 + a^nu ((1-nu)^2)^(1-nu) b^(1-nu)",
               "a,b > 0; 0 <= nu <= 1/2",
               nu_domain([](double nu) { return nu <= 0.5; }, "0 <= nu <= 1/2"),
               [](double a, double b, double nu) {
                 const double m = 1.0 - nu;
                 return chain_of({nu * nu * a + m * m * b,
                                  m * m * root_gap(a, b) + pow0(a, nu) * pow0(m * m, m) * pow0(b, m)});
               }});

  r.push_back({"cf-1.13", "Cartwright-Field: a^nu b^(1-nu) + nu(1-nu)(a-b)^2/(2M) <= nu a + (1-nu) b <= a^nu b^(1-nu) + nu(1-nu)(a-b)^2/(2m)",
               "a,b > 0; 0 <= nu <= 1; m = min(a,b), M = max(a,b)", any_nu(),
               [](double a, double b, double nu) {
                 const double lo = std::min(a, b), hi = std::max(a, b);
                 const double g = weighted_geom(a, b, nu);
                 const double c = nu * (1.0 - nu) * sq(a - b) / 2.0;
                 return chain_of({g + c / hi, weighted_arith(a, b, nu), g + c / lo});
               }});

  r.push_back({"heinz-1.14", "Heinz interpolation: sqrt(ab) <= H_nu(a,b) <= (a+b)/2", "a,b > 0; 0 <= nu <= 1",
               any_nu(), [](double a, double b, double nu) {
                 return chain_of({std::sqrt(a * b), heinz(a, b, nu), (a + b) / 2.0});
               }});

  r.push_back({"heron-1.15", "Heron interpolation: sqrt(ab) <= F_nu(a,b) <= (a+b)/2", "a,b > 0; 0 <= nu <= 1",
               any_nu(), [](double a, double b, double nu) {
                 return chain_of({std::sqrt(a * b), heron(a, b, nu), (a + b) / 2.0});
               }});

  r.push_back({"km-heinz-1.16", "Kittaneh-Manasrah Heinz refinement: H_nu(a,b) + r0 (sqrt a - sqrt b)^2 <= (a+b)/2",
               "a,b > 0; 0 <= nu <= 1", any_nu(), [](double a, double b, double nu) {
                 const Weight w(nu);
                 return chain_of({heinz(a, b, nu) + w.r0() * root_gap(a, b), (a + b) / 2.0});
               }});

  // Both branches are evaluated where their intervals meet (nu = 1/4, 3/4).
  r.push_back({"zj-1.17", "Zou-Jiang piecewise bound on phi(nu) = H_nu(a,b) (Theorem 1)",
               "a,b > 0; 0 <= nu <= 1; outer branch on [0,1/4]u[3/4,1], inner on [1/4,3/4]", any_nu(),
               [](double a, double b, double nu) {
                 const double r0 = Weight(nu).r0();
                 const auto phi = [a, b](double t) { return heinz(a, b, t); };
                 std::vector<Link> out;
                 const double v = phi(nu);
                 if (nu <= 0.25 || nu >= 0.75) {
                   out.push_back({"outer", v, (1.0 - 4.0 * r0) * phi(0.0) + 4.0 * r0 * phi(0.25)});
                 }
                 if (nu >= 0.25 && nu <= 0.75) {
                   out.push_back({"inner", v, (4.0 * r0 - 1.0) * phi(0.5) + 2.0 * (1.0 - 2.0 * r0) * phi(0.25)});
                 }
                 return out;
               }});

  r.push_back({"bhatia-heron", "Bhatia: H_nu(a,b) <= F_alpha(nu)(a,b), alpha(nu) = 1 - 4(nu - nu^2)",
               "a,b > 0; 0 <= nu <= 1", any_nu(), [](double a, double b, double nu) {
                 return chain_of({heinz(a, b, nu), heron(a, b, alpha_of_nu(nu))});
               }});

  r.push_back({"new-2.1", "Theorem 2: (1-nu^2+nu^3) a + (1-nu^2) b <= nu^(nu-2) a^nu b^(1-nu) + (sqrt a - sqrt b)^2",
               "a,b > 0; 0 < nu <= 1 (nu = 0 vacuous: right side diverges)",
               [](double a, double b, double nu) {
                 auto base = positive_pair(a, b, nu);
                 if (!base.is_inside()) return base;
                 if (nu == 0.0) return DomainStatus::vacuous("nu^(nu-2) diverges at nu = 0");
                 return DomainStatus::inside();
               },
               [](double a, double b, double nu) {
                 return chain_of({(1.0 - nu * nu + nu * nu * nu) * a + (1.0 - nu * nu) * b,
                                  std::pow(nu, nu - 2.0) * weighted_geom(a, b, nu) + root_gap(a, b)});
               }});

  r.push_back({"comb-2.11", "r^(2r) a^nu b^(1-nu) + r^2 (sqrt a - sqrt b)^2 <= nu^2 a + (1-nu)^2 b <= R^(2R) a^nu b^(1-nu) + R^2 (sqrt a - sqrt b)^2",
               "a,b > 0; 0 <= nu <= 1; r = min(nu,1-nu), R = max(nu,1-nu)", any_nu(),
               [](double a, double b, double nu) {
                 const Weight w(nu);
                 const double r = w.r0(), R = w.R0();
                 const double g = weighted_geom(a, b, nu), s = root_gap(a, b);
                 return chain_of({pow0(r, 2.0 * r) * g + r * r * s, nu * nu * a + sq(1.0 - nu) * b,
                                  pow0(R, 2.0 * R) * g + R * R * s});
               }});

  r.push_back({"comb-2.12", "r^(2r) H_nu + (2r-1)(a+b)/2 <= 2r^2 sqrt(ab) <= 2R^2 sqrt(ab) <= R^(2R) H_nu + (2R-1)(a+b)/2",
               "a,b > 0; 0 <= nu <= 1; r = min(nu,1-nu), R = max(nu,1-nu)", any_nu(),
               [](double a, double b, double nu) {
                 const Weight w(nu);
                 const double r = w.r0(), R = w.R0();
                 const double h = heinz(a, b, nu), g = std::sqrt(a * b), m = (a + b) / 2.0;
                 return chain_of({pow0(r, 2.0 * r) * h + (2.0 * r - 1.0) * m, 2.0 * r * r * g,
                                  2.0 * R * R * g, pow0(R, 2.0 * R) * h + (2.0 * R - 1.0) * m});
               }});

  return r;
}

}  // namespace

const std::vector<ScalarIneqCase>& registry() {
  static const std::vector<ScalarIneqCase> r = build_registry();
  return r;
}

const ScalarIneqCase& find_case(std::string_view id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  std::string valid;
  for (const auto& c : registry()) valid += (valid.empty() ? "" : ", ") + c.id;
  throw std::out_of_range("unknown scalar case '" + std::string(id) + "'; valid ids: " + valid);
}

TrialReport evaluate(const ScalarIneqCase& c, double a, double b, double nu, double tol) {
  const auto dom = c.domain(a, b, nu);
  if (dom.is_outside()) throw DomainError(c.id + ": " + dom.reason());
  TrialReport rep;
  rep.case_id = c.id;
  rep.nu = nu;
  if (dom.is_vacuous()) {
    rep.vacuous = true;
    rep.vacuous_reason = dom.reason();
    rep.pass = true;
    return rep;
  }
  for (const auto& l : c.links(a, b, nu)) {
    LinkOutcome o;
    o.label = l.label;
    o.lhs = l.lhs;
    o.rhs = l.rhs;
    o.slack = l.rhs - l.lhs;
    o.scale = std::max({1.0, std::abs(l.lhs), std::abs(l.rhs)});
    rep.links.push_back(o);
  }
  finalize(rep, tol);
  if (const auto w = rep.worst_link()) {
    Witness wit;
    wit.link = *w;
    rep.witness = wit;
  }
  return rep;
}

}  // namespace heinzcert::scalar
