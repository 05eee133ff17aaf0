#include "heinzcert/hs_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "heinzcert/scalar.hpp"

namespace heinzcert::hs {

using scalar::pow0;

namespace {

// Powers of A and B needed by one evaluation, from a single factorization
// of each.
class PowerCache {
 public:
  PowerCache(const HermitianMatrix& a, const HermitianMatrix& b) : ea_(eigh(a)), eb_(eigh(b)) {}
  HermitianMatrix a(double p) const { return mat_pow(ea_, p); }
  HermitianMatrix b(double p) const { return mat_pow(eb_, p); }

 private:
  EigenDecomposition ea_, eb_;
};

struct Blocks {
  GeneralMatrix heinz;  // A^nu X B^(1-nu) + A^(1-nu) X B^nu
  GeneralMatrix sum;    // AX + XB
  GeneralMatrix mid;    // A^(1/2) X B^(1/2)
};

Blocks blocks(const NormTriple& t, double nu) {
  const PowerCache pc(t.a, t.b);
  const double mu = 1.0 - nu;
  return {pc.a(nu) * t.x * pc.b(mu) + pc.a(mu) * t.x * pc.b(nu), t.a * t.x + t.x * t.b,
          pc.a(0.5) * t.x * pc.b(0.5)};
}

// A^2 X + X B^2 - 2 A X B
GeneralMatrix young_defect(const NormTriple& t) {
  const GeneralMatrix ax = t.a * t.x;
  return t.a * ax + (t.x * t.b) * t.b - 2.0 * (ax * t.b);
}

double alpha_direct(const NormTriple& t) {
  return std::min(1.0 / spectral_norm(t.a), 1.0 / spectral_norm(t.b));
}

double heinz_cell(double l, double m, double nu) {
  const double mu = 1.0 - nu;
  return pow0(l, nu) * pow0(m, mu) + pow0(l, mu) * pow0(m, nu);
}

SpectralSide block(CellCoefficient c) { return SpectralSide{std::move(c), {}}; }
SpectralSide composite(std::function<double(const SpectralForm&)> f) { return SpectralSide{{}, std::move(f)}; }

DomainStatus check_nu(double nu, bool open_at_zero) {
  if (!(nu >= 0.0 && nu <= 1.0)) return DomainStatus::outside("requires 0 <= nu <= 1");
  if (open_at_zero && nu == 0.0) return DomainStatus::vacuous("nu^(nu-2) diverges at nu = 0");
  return DomainStatus::inside();
}

DomainStatus check_shapes(const NormTriple& t) {
  if (t.x.rows() != t.a.dim() || t.x.cols() != t.b.dim()) {
    return DomainStatus::outside("requires X of shape dim(A) x dim(B)");
  }
  return DomainStatus::inside();
}

DomainStatus check_psd(const HermitianMatrix& m, const char* name) {
  if (!is_psd(m, kPsdTol).psd) return DomainStatus::outside(std::string("requires ") + name + " >= 0");
  return DomainStatus::inside();
}

DomainStatus check_pd(const HermitianMatrix& m, const char* name) {
  if (!(eigh(m).eigenvalues(0) > 0.0)) return DomainStatus::outside(std::string("requires ") + name + " > 0");
  return DomainStatus::inside();
}

DomainStatus check_x_pd(const GeneralMatrix& x) {
  if (x.rows() != x.cols()) return DomainStatus::outside("requires X > 0");
  const CMatrix& d = x.data();
  if ((d - d.adjoint()).norm() > kHermitianTol * std::max(1.0, d.norm())) {
    return DomainStatus::outside("requires X > 0 (X is not Hermitian)");
  }
  return check_pd(HermitianMatrix::symmetrized(d), "X");
}

template <typename... Checks>
DomainStatus first_failure(Checks... checks) {
  for (const DomainStatus& s : {checks...})
    if (!s.is_inside()) return s;
  return DomainStatus::inside();
}

std::vector<NormIneqCase> build_registry() {
  std::vector<NormIneqCase> r;

  // Asserted with the grouping nu^(nu-2) (A^nu X B^(1-nu) + A^(1-nu) X B^nu);
  // the variant scaling only the first block is recorded as a diagnostic.
  r.push_back(NormIneqCase{
      "hs-2.13",
      "Theorem 6: |nu^2(nu-2)(AX+XB)| <= |nu^(nu-2)(A^nu X B^(1-nu) + A^(1-nu) X B^nu) - 4 A^(1/2) X B^(1/2)| "
      "<= nu^(nu-2)|A^nu X B^(1-nu) + A^(1-nu) X B^nu| + 4|A^(1/2) X B^(1/2)|",
      "A,B >= 0; X any; 0 < nu <= 1 (nu = 0 vacuous)", false,
      [](const NormTriple& t, double nu) {
        return first_failure(check_nu(nu, true), check_shapes(t), check_psd(t.a, "A"), check_psd(t.b, "B"));
      },
      [](const NormTriple& t, double nu) {
        const Blocks bl = blocks(t, nu);
        const double k = std::pow(nu, nu - 2.0);
        return std::vector<double>{hs_norm(nu * nu * (nu - 2.0) * bl.sum),
                                   hs_norm(k * bl.heinz - 4.0 * bl.mid),
                                   k * hs_norm(bl.heinz) + 4.0 * hs_norm(bl.mid)};
      },
      [](double nu, double) {
        const double k = std::pow(nu, nu - 2.0);
        return std::vector<SpectralSide>{
            block([nu](double l, double m) { return nu * nu * (nu - 2.0) * (l + m); }),
            block([nu, k](double l, double m) { return k * heinz_cell(l, m, nu) - 4.0 * std::sqrt(l * m); }),
            composite([nu, k](const SpectralForm& f) {
              return k * block_norm(f, [nu](double l, double m) { return heinz_cell(l, m, nu); }) +
                     4.0 * block_norm(f, [](double l, double m) { return std::sqrt(l * m); });
            })};
      },
      [](const NormTriple& t, double nu) {
        const PowerCache pc(t.a, t.b);
        const double mu = 1.0 - nu;
        const GeneralMatrix mid = pc.a(0.5) * t.x * pc.b(0.5);
        const GeneralMatrix v = std::pow(nu, nu - 2.0) * (pc.a(nu) * t.x * pc.b(mu)) +
                                pc.a(mu) * t.x * pc.b(nu) - 4.0 * mid;
        return nlohmann::json{{"first_block_only_grouping_middle_side", hs_norm(v)}};
      }});

  r.push_back(NormIneqCase{
      "hs-2.14",
      "Theorem 7: |A^nu X B^(1-nu) + A^(1-nu) X B^nu + nu(1-nu) alpha (A^2 X + X B^2 - 2AXB)| <= |AX + XB|, "
      "alpha = min(1/|A|, 1/|B|)",
      "A,B,X > 0; 0 <= nu <= 1", true,
      [](const NormTriple& t, double nu) {
        return first_failure(check_nu(nu, false), check_shapes(t), check_pd(t.a, "A"), check_pd(t.b, "B"));
      },
      [](const NormTriple& t, double nu) {
        const Blocks bl = blocks(t, nu);
        const double c = nu * (1.0 - nu) * alpha_direct(t);
        return std::vector<double>{hs_norm(bl.heinz + c * young_defect(t)), hs_norm(bl.sum)};
      },
      [](double nu, double alpha) {
        const double c = nu * (1.0 - nu) * alpha;
        return std::vector<SpectralSide>{
            block([nu, c](double l, double m) { return heinz_cell(l, m, nu) + c * (l - m) * (l - m); }),
            block([](double l, double m) { return l + m; })};
      },
      {}});

  r.push_back(NormIneqCase{
      "hs-cor",
      "Corollary: |Hb| <= (|Hb|^2 + nu^2(1-nu)^2 alpha^2 |A^2 X + X B^2 - 2AXB|^2)^(1/2) "
      "<= |Hb + nu(1-nu) alpha (A^2 X + X B^2 - 2AXB)| <= |AX + XB|, Hb = A^nu X B^(1-nu) + A^(1-nu) X B^nu",
      "A,B,X > 0; 0 <= nu <= 1", true,
      [](const NormTriple& t, double nu) {
        return first_failure(check_nu(nu, false), check_shapes(t), check_pd(t.a, "A"), check_pd(t.b, "B"));
      },
      [](const NormTriple& t, double nu) {
        const Blocks bl = blocks(t, nu);
        const double c = nu * (1.0 - nu) * alpha_direct(t);
        const GeneralMatrix d = young_defect(t);
        const double h = hs_norm(bl.heinz), dn = hs_norm(d);
        return std::vector<double>{h, std::sqrt(h * h + c * c * dn * dn), hs_norm(bl.heinz + c * d),
                                   hs_norm(bl.sum)};
      },
      [](double nu, double alpha) {
        const double c = nu * (1.0 - nu) * alpha;
        return std::vector<SpectralSide>{
            block([nu](double l, double m) { return heinz_cell(l, m, nu); }),
            composite([nu, c](const SpectralForm& f) {
              const double h = block_norm(f, [nu](double l, double m) { return heinz_cell(l, m, nu); });
              const double d = block_norm(f, [](double l, double m) { return (l - m) * (l - m); });
              return std::sqrt(h * h + c * c * d * d);
            }),
            block([nu, c](double l, double m) { return heinz_cell(l, m, nu) + c * (l - m) * (l - m); }),
            block([](double l, double m) { return l + m; })};
      },
      {}});

  r.push_back(NormIneqCase{
      "hs-thm8",
      "Theorem 8: r^(2r)|Hb + (2r-1)(AX+XB)| <= 2r^2 |A^(1/2) X B^(1/2)| <= 2R^2 |A^(1/2) X B^(1/2)| "
      "<= R^(2R)|Hb + (2R-1)(AX+XB)|, Hb = A^nu X B^(1-nu) + A^(1-nu) X B^nu",
      "A,B >= 0; X any; 0 <= nu <= 1; r = min(nu,1-nu), R = max(nu,1-nu)", false,
      [](const NormTriple& t, double nu) {
        return first_failure(check_nu(nu, false), check_shapes(t), check_psd(t.a, "A"), check_psd(t.b, "B"));
      },
      [](const NormTriple& t, double nu) {
        const Blocks bl = blocks(t, nu);
        const scalar::Weight w(nu);
        const double r = w.r0(), R = w.R0();
        const double g = hs_norm(bl.mid);
        return std::vector<double>{pow0(r, 2.0 * r) * hs_norm(bl.heinz + (2.0 * r - 1.0) * bl.sum),
                                   2.0 * r * r * g, 2.0 * R * R * g,
                                   pow0(R, 2.0 * R) * hs_norm(bl.heinz + (2.0 * R - 1.0) * bl.sum)};
      },
      [](double nu, double) {
        const scalar::Weight w(nu);
        const double r = w.r0(), R = w.R0();
        const double kr = pow0(r, 2.0 * r), kR = pow0(R, 2.0 * R);
        return std::vector<SpectralSide>{
            block([nu, r, kr](double l, double m) { return kr * (heinz_cell(l, m, nu) + (2.0 * r - 1.0) * (l + m)); }),
            block([r](double l, double m) { return 2.0 * r * r * std::sqrt(l * m); }),
            block([R](double l, double m) { return 2.0 * R * R * std::sqrt(l * m); }),
            block([nu, R, kR](double l, double m) { return kR * (heinz_cell(l, m, nu) + (2.0 * R - 1.0) * (l + m)); })};
      },
      {}});

  return r;
}

RVector clamped_eigenvalues(const EigenDecomposition& e) {
  RVector v = e.eigenvalues;
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::max(v(i), 0.0);
  return v;
}

}  // namespace

GeneralMatrix heinz_block(const HermitianMatrix& a, const GeneralMatrix& x, const HermitianMatrix& b,
                          double nu) {
  if (x.rows() != a.dim() || x.cols() != b.dim()) {
    throw DomainError("heinz_block shape mismatch: X is " + std::to_string(x.rows()) + "x" +
                      std::to_string(x.cols()));
  }
  return blocks(NormTriple{a, b, x}, nu).heinz;
}

SpectralForm spectral_form(const NormTriple& t) {
  const auto ea = eigh(t.a);
  const auto eb = eigh(t.b);
  return SpectralForm{clamped_eigenvalues(ea), clamped_eigenvalues(eb),
                      ea.eigenvectors.adjoint() * t.x.data() * eb.eigenvectors};
}

double block_norm(const SpectralForm& f, const CellCoefficient& c) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.lambda.size(); ++i) {
    for (Eigen::Index j = 0; j < f.mu.size(); ++j) {
      const double k = c(f.lambda(i), f.mu(j));
      s += k * k * std::norm(f.y(i, j));
    }
  }
  return std::sqrt(s);
}

double SpectralSide::evaluate(const SpectralForm& f) const {
  return coefficient ? block_norm(f, coefficient) : composite(f);
}

const std::vector<NormIneqCase>& hs_registry() {
  static const std::vector<NormIneqCase> r = build_registry();
  return r;
}

const NormIneqCase& find_case(std::string_view id) {
  for (const auto& c : hs_registry())
    if (c.id == id) return c;
  std::string valid;
  for (const auto& c : hs_registry()) valid += (valid.empty() ? "" : ", ") + c.id;
  throw std::out_of_range("unknown norm case '" + std::string(id) + "'; valid ids: " + valid);
}

TrialReport certify_hs(const NormIneqCase& c, const NormTriple& t, double nu, const CertifyOptions& opts) {
  auto dom = c.domain(t, nu);
  bool relaxed = false;
  if (dom.is_inside() && c.requires_positive_x) {
    const auto xs = check_x_pd(t.x);
    if (!xs.is_inside()) {
      if (!opts.lenient_x) dom = xs;
      relaxed = true;
    }
  }
  if (dom.is_outside()) throw DomainError(c.id + ": " + dom.reason());

  TrialReport rep;
  rep.case_id = c.id;
  rep.nu = nu;
  if (relaxed) rep.diagnostics["x_hypothesis_relaxed"] = true;
  if (dom.is_vacuous()) {
    rep.vacuous = true;
    rep.vacuous_reason = dom.reason();
    return rep;
  }

  const std::vector<double> sides = c.sides(t, nu);
  for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
    LinkOutcome o;
    o.label = "L" + std::to_string(i + 1);
    o.lhs = sides[i];
    o.rhs = sides[i + 1];
    o.slack = sides[i + 1] - sides[i];
    o.scale = std::max({1.0, std::abs(sides[i]), std::abs(sides[i + 1])});
    rep.links.push_back(o);
  }
  finalize(rep, opts.tol);
  const auto worst = rep.worst_link();
  if (worst) {
    Witness wit;
    wit.link = *worst;
    rep.witness = wit;
  }

  if (!opts.diagnostics) return rep;

  const SpectralForm f = spectral_form(t);
  const double alpha = std::min(1.0 / f.lambda.maxCoeff(), 1.0 / f.mu.maxCoeff());
  const auto spec = c.spectral(nu, alpha);
  nlohmann::json eb = nlohmann::json::array();
  double max_rel = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double s = spec[i].evaluate(f);
    eb.push_back(s);
    max_rel = std::max(max_rel, std::abs(s - sides[i]) / std::max({1.0, std::abs(s), std::abs(sides[i])}));
  }
  rep.diagnostics["eigenbasis_sides"] = eb;
  rep.diagnostics["eigenbasis_max_rel_diff"] = max_rel;
  if (c.extra_diagnostics) rep.diagnostics["variants"] = c.extra_diagnostics(t, nu);

  // Worst eigenbasis cell of the worst link whose sides are single blocks:
  // the elementwise claim |c_lhs(lambda, mu)| <= |c_rhs(lambda, mu)|.
  std::optional<std::size_t> cell_link;
  for (std::size_t i = 0; i < rep.links.size(); ++i) {
    if (!spec[i].coefficient || !spec[i + 1].coefficient) continue;
    if (!cell_link || rep.links[i].relative_slack() < rep.links[*cell_link].relative_slack()) cell_link = i;
  }
  if (cell_link) {
    const auto& cl = spec[*cell_link].coefficient;
    const auto& cr = spec[*cell_link + 1].coefficient;
    Witness w;
    w.link = *cell_link;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < f.lambda.size(); ++i) {
      for (Eigen::Index j = 0; j < f.mu.size(); ++j) {
        const double l = f.lambda(i), m = f.mu(j);
        const double s = std::abs(cr(l, m)) - std::abs(cl(l, m));
        if (s < best) {
          best = s;
          w.cell_i = static_cast<std::size_t>(i);
          w.cell_j = static_cast<std::size_t>(j);
          w.lambda = l;
          w.mu = m;
          w.cell_slack = s;
        }
      }
    }
    rep.witness = std::move(w);
  }
  return rep;
}

}  // namespace heinzcert::hs
