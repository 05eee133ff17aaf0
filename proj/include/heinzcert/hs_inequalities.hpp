#pragma once

// Hilbert-Schmidt norm inequalities on triples (A, X, B), A and B positive
// (semi)definite, X arbitrary. Every side is evaluated two ways:
//
//  * directly, with matrix powers and products;
//  * in the eigenbases A = U diag(lambda) U*, B = V diag(mu) V*, where a
//    block U (c o Y) V* with Y = U* X V has norm
//    sqrt(sum_ij c(lambda_i, mu_j)^2 |y_ij|^2).
//
// The two routes share nothing beyond the eigendecompositions, so their
// agreement is a check on the direct evaluation.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heinzcert/domain.hpp"
#include "heinzcert/kernel.hpp"
#include "heinzcert/report.hpp"
#include "heinzcert/tolerances.hpp"

namespace heinzcert::hs {

struct NormTriple {
  HermitianMatrix a;
  HermitianMatrix b;
  GeneralMatrix x;
};

/// A^nu X B^(1-nu) + A^(1-nu) X B^nu.
GeneralMatrix heinz_block(const HermitianMatrix& a, const GeneralMatrix& x, const HermitianMatrix& b,
                          double nu);

struct SpectralForm {
  RVector lambda;  // eigenvalues of A, negatives within tolerance clamped to 0
  RVector mu;      // eigenvalues of B, likewise
  CMatrix y;       // U* X V
};

SpectralForm spectral_form(const NormTriple& t);

using CellCoefficient = std::function<double(double lambda, double mu)>;

/// sqrt(sum_ij c(lambda_i, mu_j)^2 |y_ij|^2).
double block_norm(const SpectralForm& f, const CellCoefficient& c);

/// One side in eigenbasis form: either a single block norm with a cell
/// coefficient, or a composite of several block norms.
struct SpectralSide {
  CellCoefficient coefficient;                               // set for single blocks
  std::function<double(const SpectralForm&)> composite;     // set otherwise

  double evaluate(const SpectralForm& f) const;
};

struct NormIneqCase {
  std::string id;
  std::string citation;
  std::string domain_text;
  bool requires_positive_x = false;
  std::function<DomainStatus(const NormTriple&, double nu)> domain;
  /// Direct matrix evaluation of the chain's sides.
  std::function<std::vector<double>(const NormTriple&, double nu)> sides;
  /// Eigenbasis form of the same sides; alpha = min(1/max lambda, 1/max mu).
  std::function<std::vector<SpectralSide>(double nu, double alpha)> spectral;
  /// Extra quantities recorded (never asserted) in diagnostic mode.
  std::function<nlohmann::json(const NormTriple&, double nu)> extra_diagnostics;
};

const std::vector<NormIneqCase>& hs_registry();
/// Throws std::out_of_range naming the valid ids.
const NormIneqCase& find_case(std::string_view id);

struct CertifyOptions {
  double tol = kNormTol;
  /// Accept X that is not positive definite for cases whose hypothesis asks
  /// for it; the outcome is still reported.
  bool lenient_x = false;
  /// Recompute every side in the eigenbases and record the discrepancy and
  /// the worst cell.
  bool diagnostics = true;
};

/// Pass iff side[i] <= side[i+1] + tol * max(1, side[i], side[i+1]) for
/// every adjacent pair. Diagnostics hold "eigenbasis_sides" and
/// "eigenbasis_max_rel_diff"; the witness locates the worst (lambda_i, mu_j)
/// cell of the worst link whose two sides are single blocks.
TrialReport certify_hs(const NormIneqCase& c, const NormTriple& t, double nu,
                       const CertifyOptions& opts = {});

}  // namespace heinzcert::hs
