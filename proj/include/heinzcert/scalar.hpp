#pragma once

// Scalar weighted means and the registry of scalar Young / Heinz / Heron
// inequalities.
//
// Convention: the scalar means weight `a` by nu,
//   weighted_geom(a, b, nu)  = a^nu b^(1-nu)
//   weighted_arith(a, b, nu) = nu a + (1-nu) b,
// whereas the operator means in operator_means.hpp weight B by nu. A scalar
// claim at nu corresponds to the operator claim at 1 - nu.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heinzcert/domain.hpp"
#include "heinzcert/report.hpp"
#include "heinzcert/tolerances.hpp"

namespace heinzcert::scalar {

/// nu in [0, 1] with r0 = min(nu, 1-nu) and R0 = max(nu, 1-nu).
class Weight {
 public:
  explicit Weight(double nu);
  double nu() const { return nu_; }
  double r0() const { return nu_ < 1.0 - nu_ ? nu_ : 1.0 - nu_; }
  double R0() const { return nu_ < 1.0 - nu_ ? 1.0 - nu_ : nu_; }

 private:
  double nu_;
};

/// base^exp with 0^0 = 1.
double pow0(double base, double exp);

double weighted_arith(double a, double b, double nu);
double weighted_geom(double a, double b, double nu);
double heinz(double a, double b, double nu);
double heron(double a, double b, double alpha);
/// 1 - 4(nu - nu^2).
double alpha_of_nu(double nu);

struct Link {
  std::string label;
  double lhs;
  double rhs;
};

/// Adjacent links s[0] <= s[1] <= ... of a chain.
std::vector<Link> chain(std::span<const double> sides);

struct ScalarIneqCase {
  std::string id;
  std::string citation;
  std::string domain_text;
  std::function<DomainStatus(double a, double b, double nu)> domain;
  std::function<std::vector<Link>(double a, double b, double nu)> links;
};

const std::vector<ScalarIneqCase>& registry();
/// Throws std::out_of_range naming the valid ids.
const ScalarIneqCase& find_case(std::string_view id);

/// Evaluates every link of `c`; a link passes iff
/// lhs <= rhs + tol * max(1, |lhs|, |rhs|). Outside-domain input throws
/// DomainError; vacuous input yields a passing report with no links.
TrialReport evaluate(const ScalarIneqCase& c, double a, double b, double nu, double tol = kScalarTol);

}  // namespace heinzcert::scalar
