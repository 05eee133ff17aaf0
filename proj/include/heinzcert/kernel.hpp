#pragma once

// Dense Hermitian linear algebra: eigendecomposition, functional calculus,
// Loewner-order and norm primitives.

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heinzcert/tolerances.hpp"

namespace heinzcert {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised when an input leaves the domain of an operation (a fractional power
/// of a negative eigenvalue, a singular matrix that must be inverted, a
/// violated theorem hypothesis, ...). The message names the offending value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the eigensolver does not converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t dim, double norm);
  std::size_t dim() const { return dim_; }
  double norm() const { return norm_; }

 private:
  std::size_t dim_;
  double norm_;
};

/// Dense rectangular complex matrix with no structural invariant.
class GeneralMatrix {
 public:
  GeneralMatrix() = default;
  explicit GeneralMatrix(CMatrix m) : m_(std::move(m)) {}
  static GeneralMatrix from_real(const RMatrix& m) { return GeneralMatrix(m.cast<Complex>()); }
  static GeneralMatrix zero(std::size_t rows, std::size_t cols);
  static GeneralMatrix identity(std::size_t n);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  const CMatrix& data() const { return m_; }
  bool is_real() const;

 private:
  CMatrix m_;
};

/// Square matrix equal to its conjugate transpose. Construction symmetrizes
/// (M + M*)/2 so the stored entries are exactly Hermitian.
class HermitianMatrix {
 public:
  /// Validates |M - M*| <= tol * max(1, |M|) in the Hilbert-Schmidt norm,
  /// then symmetrizes. Throws DomainError for non-square, empty or
  /// non-finite input, or when the asymmetry exceeds the tolerance.
  static HermitianMatrix from(const CMatrix& m, double tol = kHermitianTol);
  static HermitianMatrix from_real(const RMatrix& m, double tol = kHermitianTol);

  /// Symmetrizes without validation; for results of computations that are
  /// Hermitian in exact arithmetic.
  static HermitianMatrix symmetrized(const CMatrix& m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  static HermitianMatrix diagonal(const RVector& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& data() const { return m_; }
  bool is_real() const;
  GeneralMatrix general() const { return GeneralMatrix(m_); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& m);
  friend HermitianMatrix operator*(const HermitianMatrix& m, double s) { return s * m; }

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// M = V diag(eigenvalues) V*, eigenvalues ascending, V unitary.
struct EigenDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues.size()); }
  HermitianMatrix reconstruct() const;
};

EigenDecomposition eigh(const HermitianMatrix& m);

/// V f(Lambda) V*. f may throw DomainError; a non-finite f(t) is reported
/// as a DomainError naming t.
HermitianMatrix mat_fn(const EigenDecomposition& eig, const std::function<double(double)>& f);
HermitianMatrix mat_fn(const HermitianMatrix& m, const std::function<double(double)>& f);

/// M^p by functional calculus. Integer p needs no positivity (negative p
/// needs a non-singular M). Fractional p clamps eigenvalues in
/// [-psd_tol * max(1, |M|), 0) to zero and rejects anything lower; a
/// negative fractional power additionally rejects zero eigenvalues.
/// p = 0 returns the identity and p = 1 returns M unchanged.
HermitianMatrix mat_pow(const EigenDecomposition& eig, double p, double psd_tol = kPsdTol);
HermitianMatrix mat_pow(const HermitianMatrix& m, double p, double psd_tol = kPsdTol);

struct PsdCheck {
  bool psd = false;
  double lambda_min = 0.0;
  double scale = 1.0;  // tolerance was applied as tol * scale
  CVector witness;     // unit eigenvector for lambda_min
};

/// lambda_min(M) >= -tol * max(1, spectral_norm(M)).
PsdCheck is_psd(const HermitianMatrix& m, double tol = kPsdTol);
/// Same, with the magnitude supplied by the caller:
/// lambda_min(M) >= -tol * max(1, spectral_norm(M), scale).
PsdCheck is_psd(const HermitianMatrix& m, double tol, double scale);

double hs_norm(const GeneralMatrix& m);
double hs_norm(const HermitianMatrix& m);
double hs_norm(const CMatrix& m);

/// max |eigenvalue|.
double spectral_norm(const HermitianMatrix& m);

/// S M S*.
HermitianMatrix congruence(const GeneralMatrix& s, const HermitianMatrix& m);

GeneralMatrix operator*(const GeneralMatrix& a, const GeneralMatrix& b);
GeneralMatrix operator*(const HermitianMatrix& a, const GeneralMatrix& b);
GeneralMatrix operator*(const GeneralMatrix& a, const HermitianMatrix& b);
GeneralMatrix operator+(const GeneralMatrix& a, const GeneralMatrix& b);
GeneralMatrix operator-(const GeneralMatrix& a, const GeneralMatrix& b);
GeneralMatrix operator*(double s, const GeneralMatrix& m);

}  // namespace heinzcert
