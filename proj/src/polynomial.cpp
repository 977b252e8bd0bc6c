#include "mmp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mmp/errors.hpp"

namespace mmp {

MatrixPolynomial::MatrixPolynomial(std::vector<CMatrix> coefficients)
    : rows_(coefficients.empty() ? 0 : coefficients.front().rows()),
      cols_(coefficients.empty() ? 0 : coefficients.front().cols()),
      coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_)
    if (c.rows() != rows_ || c.cols() != cols_)
      throw InputError("matrix polynomial coefficients have mixed shapes");
}

MatrixPolynomial MatrixPolynomial::constant(const CMatrix& c) {
  return MatrixPolynomial(std::vector<CMatrix>{c});
}

MatrixPolynomial MatrixPolynomial::scalar(std::vector<cplx> coefficients) {
  std::vector<CMatrix> cs;
  for (cplx c : coefficients) cs.push_back(CMatrix::Constant(1, 1, c));
  MatrixPolynomial p(1, 1);
  p.coeffs_ = std::move(cs);
  return p;
}

CMatrix MatrixPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return CMatrix::Zero(rows_, cols_);
  return coeffs_[static_cast<std::size_t>(k)];
}

CMatrix MatrixPolynomial::operator()(cplx z) const {
  CMatrix acc = CMatrix::Zero(rows_, cols_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc * z + *it).eval();
  return acc;
}

cplx MatrixPolynomial::scalar_at(cplx z) const {
  if (rows_ != 1 || cols_ != 1) throw InputError("scalar_at on a non-scalar polynomial");
  return (*this)(z)(0, 0);
}

MatrixPolynomial MatrixPolynomial::block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr,
                                         Eigen::Index nc) const {
  MatrixPolynomial out(nr, nc);
  for (const auto& c : coeffs_) out.coeffs_.push_back(c.block(r0, c0, nr, nc));
  return out;
}

MatrixPolynomial MatrixPolynomial::trimmed(double rel_tol) const {
  double top = 0.0;
  for (const auto& c : coeffs_) top = std::max(top, max_abs(c));
  MatrixPolynomial out = *this;
  while (!out.coeffs_.empty() && max_abs(out.coeffs_.back()) <= rel_tol * top)
    out.coeffs_.pop_back();
  return out;
}

MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("polynomial shape mismatch in +");
  MatrixPolynomial out(a.rows_, a.cols_);
  const int deg = std::max(a.degree(), b.degree());
  for (int k = 0; k <= deg; ++k) out.coeffs_.push_back(a.coefficient(k) + b.coefficient(k));
  return out;
}

MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  return a + cplx(-1.0) * b;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  const bool a_scalar = a.rows_ == 1 && a.cols_ == 1;
  const bool b_scalar = b.rows_ == 1 && b.cols_ == 1;
  Eigen::Index rows = a.rows_, cols = b.cols_;
  if (a_scalar && !b_scalar) {
    rows = b.rows_;
  } else if (b_scalar && !a_scalar) {
    cols = a.cols_;
  } else if (a.cols_ != b.rows_) {
    throw InputError("polynomial shape mismatch in *");
  }
  MatrixPolynomial out(rows, cols);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return out;
  out.coeffs_.assign(static_cast<std::size_t>(a.degree() + b.degree() + 1),
                     CMatrix::Zero(rows, cols));
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) {
      const auto& ca = a.coeffs_[static_cast<std::size_t>(i)];
      const auto& cb = b.coeffs_[static_cast<std::size_t>(j)];
      auto& dst = out.coeffs_[static_cast<std::size_t>(i + j)];
      if (a_scalar && !b_scalar)
        dst += ca(0, 0) * cb;
      else if (b_scalar && !a_scalar)
        dst += ca * cb(0, 0);
      else
        dst += ca * cb;
    }
  }
  return out;
}

MatrixPolynomial operator*(const CMatrix& a, const MatrixPolynomial& b) {
  return MatrixPolynomial::constant(a) * b;
}

MatrixPolynomial operator*(const MatrixPolynomial& a, const CMatrix& b) {
  return a * MatrixPolynomial::constant(b);
}

MatrixPolynomial operator*(cplx a, const MatrixPolynomial& b) {
  MatrixPolynomial out = b;
  for (auto& c : out.coeffs_) c *= a;
  return out;
}

MatrixPolynomial linear(cplx a, cplx b) { return MatrixPolynomial::scalar({a, b}); }

MatrixPolynomial interpolate(const std::function<CMatrix(cplx)>& f, int degree,
                             Eigen::Index rows, Eigen::Index cols) {
  if (degree < 0) return MatrixPolynomial(rows, cols);
  const int m = degree + 1;
  std::vector<CMatrix> samples;
  samples.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    CMatrix v = f(w);
    if (v.rows() != rows || v.cols() != cols) throw InputError("interpolation sample has wrong shape");
    samples.push_back(std::move(v));
  }
  std::vector<CMatrix> coeffs;
  for (int j = 0; j < m; ++j) {
    CMatrix c = CMatrix::Zero(rows, cols);
    for (int k = 0; k < m; ++k)
      c += std::polar(1.0, -2.0 * std::numbers::pi * j * k / m) * samples[static_cast<std::size_t>(k)];
    coeffs.push_back(c / static_cast<double>(m));
  }
  MatrixPolynomial p(rows, cols);
  p = MatrixPolynomial(std::move(coeffs));
  return p;
}

}  // namespace mmp
