#include "heinzcert/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heinzcert {

namespace {

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

bool imag_is_zero(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

}  // namespace

ConvergenceError::ConvergenceError(std::size_t dim, double norm)
    : std::runtime_error("eigensolver did not converge (dim " + std::to_string(dim) +
                         ", norm " + describe(norm) + ")"),
      dim_(dim),
      norm_(norm) {}

GeneralMatrix GeneralMatrix::zero(std::size_t rows, std::size_t cols) {
  return GeneralMatrix(CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

GeneralMatrix GeneralMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return GeneralMatrix(CMatrix::Identity(k, k));
}

bool GeneralMatrix::is_real() const { return imag_is_zero(m_); }

HermitianMatrix HermitianMatrix::from(const CMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DomainError("Hermitian matrix must be square with dim >= 1, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!all_finite(m)) throw DomainError("Hermitian matrix has non-finite entries");
  const double asym = (m - m.adjoint()).norm();
  const double scale = std::max(1.0, m.norm());
  if (asym > tol * scale) {
    throw DomainError("matrix is not Hermitian: |M - M*| = " + describe(asym) +
                      " exceeds " + describe(tol * scale));
  }
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix& m, double tol) {
  return from(m.cast<Complex>(), tol);
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  CMatrix h = (m + m.adjoint()) * 0.5;
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return HermitianMatrix(CMatrix::Identity(k, k));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  return diagonal(RVector(Eigen::Map<const RVector>(d.data(), static_cast<Eigen::Index>(d.size()))));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  if (d.size() == 0) throw DomainError("diagonal matrix needs at least one entry");
  return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
}

bool HermitianMatrix::is_real() const { return imag_is_zero(m_); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ + o.m_);
}
HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ - o.m_);
}
HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(-m_); }
HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  m_ += o.m_;
  return *this;
}
HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  m_ -= o.m_;
  return *this;
}
HermitianMatrix operator*(double s, const HermitianMatrix& m) { return HermitianMatrix(s * m.m_); }

HermitianMatrix EigenDecomposition::reconstruct() const {
  return HermitianMatrix::symmetrized(eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
                                      eigenvectors.adjoint());
}

EigenDecomposition eigh(const HermitianMatrix& m) {
  const CMatrix& a = m.data();
  EigenDecomposition out;
  if (m.is_real()) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(a.real());
    if (solver.info() != Eigen::Success) throw ConvergenceError(m.dim(), a.norm());
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw ConvergenceError(m.dim(), a.norm());
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
  }
  return out;
}

HermitianMatrix mat_fn(const EigenDecomposition& eig, const std::function<double(double)>& f) {
  const auto n = eig.eigenvalues.size();
  RVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = eig.eigenvalues(i);
    const double v = f(t);
    if (!std::isfinite(v)) {
      throw DomainError("function undefined at eigenvalue " + describe(t));
    }
    fv(i) = v;
  }
  return HermitianMatrix::symmetrized(eig.eigenvectors * fv.cast<Complex>().asDiagonal() *
                                      eig.eigenvectors.adjoint());
}

HermitianMatrix mat_fn(const HermitianMatrix& m, const std::function<double(double)>& f) {
  return mat_fn(eigh(m), f);
}

HermitianMatrix mat_pow(const EigenDecomposition& eig, double p, double psd_tol) {
  if (!std::isfinite(p)) throw DomainError("matrix power exponent must be finite");
  if (p == 0.0) return HermitianMatrix::identity(eig.dim());
  if (is_integer(p)) {
    return mat_fn(eig, [p](double t) {
      if (p < 0 && t == 0.0) throw DomainError("negative power of zero eigenvalue");
      return std::pow(t, p);
    });
  }
  double scale = 1.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    scale = std::max(scale, std::abs(eig.eigenvalues(i)));
  const double floor = -psd_tol * scale;
  return mat_fn(eig, [p, floor](double t) {
    if (t < floor) {
      throw DomainError("fractional power " + describe(p) + " of negative eigenvalue " +
                        describe(t));
    }
    if (t <= 0.0) {
      if (p < 0) {
        throw DomainError("negative fractional power " + describe(p) +
                          " of non-positive eigenvalue " + describe(t));
      }
      return 0.0;
    }
    return std::pow(t, p);
  });
}

HermitianMatrix mat_pow(const HermitianMatrix& m, double p, double psd_tol) {
  if (p == 1.0) return m;
  if (p == 0.0) return HermitianMatrix::identity(m.dim());
  return mat_pow(eigh(m), p, psd_tol);
}

PsdCheck is_psd(const HermitianMatrix& m, double tol) { return is_psd(m, tol, 1.0); }

PsdCheck is_psd(const HermitianMatrix& m, double tol, double scale) {
  const auto eig = eigh(m);
  const auto n = eig.eigenvalues.size();
  const double norm = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1)));
  PsdCheck out;
  out.lambda_min = eig.eigenvalues(0);
  out.scale = std::max({1.0, norm, scale});
  out.psd = out.lambda_min >= -tol * out.scale;
  out.witness = eig.eigenvectors.col(0);
  return out;
}

double hs_norm(const CMatrix& m) { return m.norm(); }
double hs_norm(const GeneralMatrix& m) { return m.data().norm(); }
double hs_norm(const HermitianMatrix& m) { return m.data().norm(); }

double spectral_norm(const HermitianMatrix& m) {
  const auto eig = eigh(m);
  const auto n = eig.eigenvalues.size();
  return std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1)));
}

HermitianMatrix congruence(const GeneralMatrix& s, const HermitianMatrix& m) {
  if (s.cols() != m.dim()) {
    throw DomainError("congruence shape mismatch: S is " + std::to_string(s.rows()) + "x" +
                      std::to_string(s.cols()) + ", M is " + std::to_string(m.dim()) + "x" +
                      std::to_string(m.dim()));
  }
  return HermitianMatrix::symmetrized(s.data() * m.data() * s.data().adjoint());
}

namespace {
void require_product(std::size_t lc, std::size_t rr) {
  if (lc != rr) {
    throw DomainError("matrix product shape mismatch: " + std::to_string(lc) + " vs " +
                      std::to_string(rr));
  }
}
void require_same(const GeneralMatrix& a, const GeneralMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sum shape mismatch");
}
}  // namespace

GeneralMatrix operator*(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_product(a.cols(), b.rows());
  return GeneralMatrix(a.data() * b.data());
}
GeneralMatrix operator*(const HermitianMatrix& a, const GeneralMatrix& b) {
  require_product(a.dim(), b.rows());
  return GeneralMatrix(a.data() * b.data());
}
GeneralMatrix operator*(const GeneralMatrix& a, const HermitianMatrix& b) {
  require_product(a.cols(), b.dim());
  return GeneralMatrix(a.data() * b.data());
}
GeneralMatrix operator+(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_same(a, b);
  return GeneralMatrix(a.data() + b.data());
}
GeneralMatrix operator-(const GeneralMatrix& a, const GeneralMatrix& b) {
  require_same(a, b);
  return GeneralMatrix(a.data() - b.data());
}
GeneralMatrix operator*(double s, const GeneralMatrix& m) { return GeneralMatrix(s * m.data()); }

}  // namespace heinzcert
