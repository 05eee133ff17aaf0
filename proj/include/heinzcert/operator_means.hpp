#pragma once

// Operator means of positive definite matrices and the Loewner-order
// inequalities between them, each expressed as a gap (RHS - LHS) that must
// be positive semidefinite.
//
// Convention: operator means weight B by nu,
//   A nabla_nu B = (1-nu) A + nu B,
//   A #_nu B     = A^(1/2) (A^(-1/2) B A^(-1/2))^nu A^(1/2),
// so on commuting inputs A #_nu B has eigenvalues a^(1-nu) b^nu, the scalar
// weighted_geom(a, b, 1 - nu). Unsubscripted nabla and # mean nu = 1/2.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "heinzcert/domain.hpp"
#include "heinzcert/kernel.hpp"
#include "heinzcert/report.hpp"
#include "heinzcert/tolerances.hpp"

namespace heinzcert::op {

/// Two positive definite matrices of equal dimension. `ordered` records a
/// certified A <= B.
struct OperatorPair {
  HermitianMatrix a;
  HermitianMatrix b;
  bool ordered = false;

  /// Throws DomainError unless both are positive definite and conform.
  static OperatorPair make(HermitianMatrix a, HermitianMatrix b);
  /// As make(), and additionally certifies B - A >= 0 within psd_tol.
  static OperatorPair make_ordered(HermitianMatrix a, HermitianMatrix b, double psd_tol = kPsdTol);

  std::size_t dim() const { return a.dim(); }
};

/// t -> A #_t B for a fixed pair, sharing one factorization of
/// A^(-1/2) B A^(-1/2) across all t.
///
/// The factorizations run in long double. With condition numbers near 1e6
/// the inner matrix reaches 1e12, and double precision loses enough
/// digits that A #_nu B and B #_(1-nu) A drift apart by ~1e-7.
class GeometricMeanPath {
 public:
  using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

  GeometricMeanPath(const HermitianMatrix& a, const HermitianMatrix& b);
  HermitianMatrix at(double t) const;

 private:
  HermitianMatrix a_;
  HermitianMatrix b_;
  LMatrix a_half_;
  LMatrix inner_vectors_;
  LVector inner_values_;
};

HermitianMatrix nabla(const HermitianMatrix& a, const HermitianMatrix& b, double nu);
HermitianMatrix geom(const HermitianMatrix& a, const HermitianMatrix& b, double nu);
HermitianMatrix harmonic(const HermitianMatrix& a, const HermitianMatrix& b, double nu);
/// (A #_nu B + A #_(1-nu) B) / 2.
HermitianMatrix heinz_op(const HermitianMatrix& a, const HermitianMatrix& b, double nu);
/// (1-alpha)(A # B) + alpha (A nabla B).
HermitianMatrix heron_op(const HermitianMatrix& a, const HermitianMatrix& b, double alpha);

/// One Loewner claim: `gap` = RHS - LHS must be PSD. `scale` is the largest
/// spectral norm among the terms that make up the gap (at least 1).
struct GapLink {
  std::string label;
  HermitianMatrix gap;
  double scale = 1.0;
};

struct OperatorIneqCase {
  std::string id;
  std::string citation;
  std::string domain_text;
  bool wants_ordered_pair = false;
  std::function<DomainStatus(const OperatorPair&, double nu)> domain;
  std::function<std::vector<GapLink>(const OperatorPair&, double nu)> gaps;
};

const std::vector<OperatorIneqCase>& op_registry();
/// Throws std::out_of_range naming the valid ids.
const OperatorIneqCase& find_case(std::string_view id);

/// Certifies every link: pass iff lambda_min(gap) >= -tol * max(1, |gap|, scale).
/// Records lambda_min per link and the eigenvector of the worst link.
/// Outside-domain input throws DomainError naming the violated hypothesis.
TrialReport certify_operator(const OperatorIneqCase& c, const OperatorPair& pair, double nu,
                             double tol = kOperatorTol);

}  // namespace heinzcert::op
