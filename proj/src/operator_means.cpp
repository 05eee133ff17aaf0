#include "heinzcert/operator_means.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include "heinzcert/scalar.hpp"

namespace heinzcert::op {

namespace {

double lambda_min(const HermitianMatrix& m) { return eigh(m).eigenvalues(0); }

void require_conforming(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("operator pair dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
}

void require_pd(const HermitianMatrix& m, const char* name) {
  const double lm = lambda_min(m);
  if (!(lm > 0.0)) {
    std::ostringstream os;
    os << "requires " << name << " positive definite (lambda_min = " << lm << ")";
    throw DomainError(os.str());
  }
}

double max_norm(std::initializer_list<const HermitianMatrix*> terms) {
  double s = 1.0;
  for (const auto* t : terms) s = std::max(s, spectral_norm(*t));
  return s;
}

DomainStatus check_nu(double nu, bool open_at_zero) {
  if (!(nu >= 0.0 && nu <= 1.0)) return DomainStatus::outside("requires 0 <= nu <= 1");
  if (open_at_zero && nu == 0.0) return DomainStatus::vacuous("nu^(nu-2) diverges at nu = 0");
  return DomainStatus::inside();
}

DomainStatus check_ordered(const OperatorPair& p) {
  if (p.ordered) return DomainStatus::inside();
  const double scale = std::max(spectral_norm(p.a), spectral_norm(p.b));
  if (!is_psd(p.b - p.a, kPsdTol, scale).psd) return DomainStatus::outside("requires A <= B");
  return DomainStatus::inside();
}

// Quantities shared by every case at one (pair, nu).
struct MeanSet {
  GeometricMeanPath path;
  HermitianMatrix nab;    // A nabla B
  HermitianMatrix sharp;  // A # B
  MeanSet(const OperatorPair& p)
      : path(p.a, p.b), nab(nabla(p.a, p.b, 0.5)), sharp(path.at(0.5)) {}
  HermitianMatrix heinz(double nu) const {
    const double lo = std::min(nu, 1.0 - nu), hi = 1.0 - lo;
    return 0.5 * (path.at(lo) + path.at(hi));
  }
};

std::vector<OperatorIneqCase> build_registry() {
  std::vector<OperatorIneqCase> r;

  r.push_back({"op-2.3", "Theorem 3: nu^2(nu-2) A nabla B + 2 (A # B) <= nu^(nu-2) H_nu(A,B)",
               "A,B > 0; 0 < nu <= 1 (nu = 0 vacuous)", false,
               [](const OperatorPair&, double nu) { return check_nu(nu, true); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix rhs = std::pow(nu, nu - 2.0) * m.heinz(nu);
                 const HermitianMatrix t1 = nu * nu * (nu - 2.0) * m.nab;
                 const HermitianMatrix t2 = 2.0 * m.sharp;
                 return std::vector<GapLink>{{"L1", rhs - t1 - t2, max_norm({&rhs, &t1, &t2})}};
               }});

  r.push_back({"op-2.5", "(1-nu^2+nu^3) A + (1-nu^2) B <= nu^(nu-2) (A #_(1-nu) B) + (A + B - 2 (A # B))",
               "A,B > 0; 0 < nu <= 1 (nu = 0 vacuous)", false,
               [](const OperatorPair&, double nu) { return check_nu(nu, true); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix lhs = (1.0 - nu * nu + nu * nu * nu) * p.a + (1.0 - nu * nu) * p.b;
                 const HermitianMatrix g = std::pow(nu, nu - 2.0) * m.path.at(1.0 - nu);
                 const HermitianMatrix s2 = 2.0 * m.sharp;
                 const HermitianMatrix rhs = g + (p.a + p.b - s2);
                 return std::vector<GapLink>{
                     {"L1", rhs - lhs, max_norm({&lhs, &g, &s2, &p.a, &p.b})}};
               }});

  r.push_back({"op-2.6", "(1-nu^2+nu^3) B + (1-nu^2) A <= nu^(nu-2) (A #_nu B) + (A + B - 2 (A # B))",
               "A,B > 0; 0 < nu <= 1 (nu = 0 vacuous)", false,
               [](const OperatorPair&, double nu) { return check_nu(nu, true); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix lhs = (1.0 - nu * nu + nu * nu * nu) * p.b + (1.0 - nu * nu) * p.a;
                 const HermitianMatrix g = std::pow(nu, nu - 2.0) * m.path.at(nu);
                 const HermitianMatrix s2 = 2.0 * m.sharp;
                 const HermitianMatrix rhs = g + (p.a + p.b - s2);
                 return std::vector<GapLink>{
                     {"L1", rhs - lhs, max_norm({&lhs, &g, &s2, &p.a, &p.b})}};
               }});

  r.push_back({"op-2.7-left", "Theorem 4: H_nu(A,B) + nu(1-nu)/2 (B - 2A + A B^-1 A) <= A nabla B",
               "A,B > 0; A <= B; 0 <= nu <= 1", true,
               [](const OperatorPair& p, double nu) {
                 auto s = check_nu(nu, false);
                 return s.is_inside() ? check_ordered(p) : s;
               },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix h = m.heinz(nu);
                 const HermitianMatrix aba = congruence(p.a.general(), mat_pow(p.b, -1.0));
                 const HermitianMatrix corr = (nu * (1.0 - nu) / 2.0) * (p.b - 2.0 * p.a + aba);
                 return std::vector<GapLink>{
                     {"L1", m.nab - h - corr, max_norm({&m.nab, &h, &corr, &p.b, &aba})}};
               }});

  r.push_back({"op-2.7-right", "Theorem 4: A nabla B <= H_nu(A,B) + nu(1-nu)/2 (A - 2B + B A^-1 B)",
               "A,B > 0; A <= B; 0 <= nu <= 1", true,
               [](const OperatorPair& p, double nu) {
                 auto s = check_nu(nu, false);
                 return s.is_inside() ? check_ordered(p) : s;
               },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix h = m.heinz(nu);
                 const HermitianMatrix bab = congruence(p.b.general(), mat_pow(p.a, -1.0));
                 const HermitianMatrix corr = (nu * (1.0 - nu) / 2.0) * (p.a - 2.0 * p.b + bab);
                 return std::vector<GapLink>{
                     {"L1", h + corr - m.nab, max_norm({&m.nab, &h, &corr, &p.b, &bab})}};
               }});

  // 2A <= B + A B^-1 A holds for any positive definite pair; together with
  // the left inequality it yields the operator Heinz inequality.
  r.push_back({"op-2.7-refine", "A B^-1 A + B - 2A >= 0, hence H_nu(A,B) <= A nabla B",
               "A,B > 0; 0 <= nu <= 1", true,
               [](const OperatorPair&, double nu) { return check_nu(nu, false); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const HermitianMatrix aba = congruence(p.a.general(), mat_pow(p.b, -1.0));
                 const HermitianMatrix two_a = 2.0 * p.a;
                 const HermitianMatrix h = m.heinz(nu);
                 return std::vector<GapLink>{
                     {"correction", aba + p.b - two_a, max_norm({&aba, &p.b, &two_a})},
                     {"heinz", m.nab - h, max_norm({&m.nab, &h})}};
               }});

  r.push_back({"op-2.10",
               "Theorem 5: r^(2r) H_nu + (2r-1) A nabla B <= 2r^2 A # B <= 2R^2 A # B <= R^(2R) H_nu + (2R-1) A nabla B",
               "A,B > 0; 0 <= nu <= 1; r = min(nu,1-nu), R = max(nu,1-nu)", false,
               [](const OperatorPair&, double nu) { return check_nu(nu, false); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const scalar::Weight w(nu);
                 const double r = w.r0(), R = w.R0();
                 const HermitianMatrix h = m.heinz(nu);
                 const HermitianMatrix hr = scalar::pow0(r, 2.0 * r) * h, hR = scalar::pow0(R, 2.0 * R) * h;
                 const HermitianMatrix nr = (2.0 * r - 1.0) * m.nab, nR = (2.0 * R - 1.0) * m.nab;
                 const HermitianMatrix s1 = hr + nr;
                 const HermitianMatrix s2 = (2.0 * r * r) * m.sharp;
                 const HermitianMatrix s3 = (2.0 * R * R) * m.sharp;
                 const HermitianMatrix s4 = hR + nR;
                 return std::vector<GapLink>{{"L1", s2 - s1, max_norm({&hr, &nr, &s2})},
                                             {"L2", s3 - s2, max_norm({&s2, &s3})},
                                             {"L3", s4 - s3, max_norm({&hR, &nR, &s3})}};
               }});

  r.push_back({"op-heron-zhao", "Zhao et al.: H_nu(A,B) <= F_alpha(nu)(A,B), alpha(nu) = 1 - 4(nu - nu^2)",
               "A,B > 0; 0 <= nu <= 1", false,
               [](const OperatorPair&, double nu) { return check_nu(nu, false); },
               [](const OperatorPair& p, double nu) {
                 const MeanSet m(p);
                 const double al = scalar::alpha_of_nu(nu);
                 const HermitianMatrix f = (1.0 - al) * m.sharp + al * m.nab;
                 const HermitianMatrix h = m.heinz(nu);
                 return std::vector<GapLink>{{"L1", f - h, max_norm({&f, &h, &m.sharp, &m.nab})}};
               }});

  return r;
}

}  // namespace

OperatorPair OperatorPair::make(HermitianMatrix a, HermitianMatrix b) {
  require_conforming(a, b);
  require_pd(a, "A");
  require_pd(b, "B");
  return OperatorPair{std::move(a), std::move(b), false};
}

OperatorPair OperatorPair::make_ordered(HermitianMatrix a, HermitianMatrix b, double psd_tol) {
  auto p = make(std::move(a), std::move(b));
  const double scale = std::max(spectral_norm(p.a), spectral_norm(p.b));
  if (!is_psd(p.b - p.a, psd_tol, scale).psd) throw DomainError("requires A <= B");
  p.ordered = true;
  return p;
}

GeometricMeanPath::GeometricMeanPath(const HermitianMatrix& a, const HermitianMatrix& b)
    : a_(a), b_(b) {
  require_conforming(a, b);
  using LComplex = std::complex<long double>;
  const Eigen::SelfAdjointEigenSolver<LMatrix> ea(a.data().cast<LComplex>());
  const LVector& la = ea.eigenvalues();
  if (!(la(0) > 0.0L)) {
    std::ostringstream os;
    os << "geometric mean requires A invertible (lambda_min = " << static_cast<double>(la(0)) << ")";
    throw DomainError(os.str());
  }
  const LMatrix& v = ea.eigenvectors();
  const LVector s = la.cwiseSqrt();
  a_half_ = v * s.cast<LComplex>().asDiagonal() * v.adjoint();
  const LMatrix a_inv_half = v * s.cwiseInverse().cast<LComplex>().asDiagonal() * v.adjoint();
  LMatrix c = a_inv_half * b.data().cast<LComplex>() * a_inv_half;
  c = (c + c.adjoint()).eval() / 2.0L;
  const Eigen::SelfAdjointEigenSolver<LMatrix> ec(c);
  inner_vectors_ = ec.eigenvectors();
  // Clamp rounding noise; the inner matrix is positive definite.
  inner_values_ = ec.eigenvalues().cwiseMax(0.0L);
}

HermitianMatrix GeometricMeanPath::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "geometric mean weight must lie in [0, 1], got " << t;
    throw DomainError(os.str());
  }
  if (t == 0.0) return a_;
  if (t == 1.0) return b_;
  const long double lt = t;
  const LVector p = inner_values_.unaryExpr([lt](long double x) { return std::pow(x, lt); });
  const LMatrix m = a_half_ * inner_vectors_ * p.cast<std::complex<long double>>().asDiagonal() *
                    inner_vectors_.adjoint() * a_half_;
  return HermitianMatrix::symmetrized(m.cast<Complex>());
}

HermitianMatrix nabla(const HermitianMatrix& a, const HermitianMatrix& b, double nu) {
  require_conforming(a, b);
  return (1.0 - nu) * a + nu * b;
}

HermitianMatrix geom(const HermitianMatrix& a, const HermitianMatrix& b, double nu) {
  return GeometricMeanPath(a, b).at(nu);
}

HermitianMatrix harmonic(const HermitianMatrix& a, const HermitianMatrix& b, double nu) {
  require_conforming(a, b);
  return mat_pow((1.0 - nu) * mat_pow(a, -1.0) + nu * mat_pow(b, -1.0), -1.0);
}

HermitianMatrix heinz_op(const HermitianMatrix& a, const HermitianMatrix& b, double nu) {
  const GeometricMeanPath path(a, b);
  const double lo = std::min(nu, 1.0 - nu), hi = 1.0 - lo;
  return 0.5 * (path.at(lo) + path.at(hi));
}

HermitianMatrix heron_op(const HermitianMatrix& a, const HermitianMatrix& b, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "Heron weight alpha must lie in [0, 1], got " << alpha;
    throw DomainError(os.str());
  }
  return (1.0 - alpha) * geom(a, b, 0.5) + alpha * nabla(a, b, 0.5);
}

const std::vector<OperatorIneqCase>& op_registry() {
  static const std::vector<OperatorIneqCase> r = build_registry();
  return r;
}

const OperatorIneqCase& find_case(std::string_view id) {
  for (const auto& c : op_registry())
    if (c.id == id) return c;
  std::string valid;
  for (const auto& c : op_registry()) valid += (valid.empty() ? "" : ", ") + c.id;
  throw std::out_of_range("unknown operator case '" + std::string(id) + "'; valid ids: " + valid);
}

TrialReport certify_operator(const OperatorIneqCase& c, const OperatorPair& pair, double nu, double tol) {
  const auto dom = c.domain(pair, nu);
  if (dom.is_outside()) throw DomainError(c.id + ": " + dom.reason());
  TrialReport rep;
  rep.case_id = c.id;
  rep.nu = nu;
  if (dom.is_vacuous()) {
    rep.vacuous = true;
    rep.vacuous_reason = dom.reason();
    return rep;
  }
  std::vector<CVector> witnesses;
  for (const auto& g : c.gaps(pair, nu)) {
    const auto chk = is_psd(g.gap, tol, g.scale);
    LinkOutcome o;
    o.label = g.label;
    o.slack = chk.lambda_min;
    o.scale = chk.scale;
    rep.links.push_back(o);
    witnesses.push_back(chk.witness);
  }
  finalize(rep, tol);
  if (const auto w = rep.worst_link()) {
    Witness wit;
    wit.link = *w;
    wit.vector.assign(witnesses[*w].data(), witnesses[*w].data() + witnesses[*w].size());
    rep.witness = std::move(wit);
  }
  return rep;
}

}  // namespace heinzcert::op
