#ifndef MMP_POLYNOMIAL_HPP
#define MMP_POLYNOMIAL_HPP

#include <functional>
#include <vector>

#include "mmp/linalg.hpp"

namespace mmp {

/// Polynomial with complex rows x cols matrix coefficients, lowest degree
/// first. The zero polynomial has no coefficients and degree -1.
class MatrixPolynomial {
 public:
  MatrixPolynomial(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}
  explicit MatrixPolynomial(std::vector<CMatrix> coefficients);

  static MatrixPolynomial constant(const CMatrix& c);
  /// Scalar (1 x 1) polynomial from coefficients c_0, c_1, ...
  static MatrixPolynomial scalar(std::vector<cplx> coefficients);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<CMatrix>& coefficients() const { return coeffs_; }
  /// Coefficient of z^k; zero beyond the degree.
  CMatrix coefficient(int k) const;

  CMatrix operator()(cplx z) const;
  /// Value of a 1 x 1 polynomial.
  cplx scalar_at(cplx z) const;

  MatrixPolynomial block(Eigen::Index r0, Eigen::Index c0, Eigen::Index nr, Eigen::Index nc) const;

  /// Drops trailing coefficients with max|c_k| <= rel_tol * max_k max|c_k|.
  MatrixPolynomial trimmed(double rel_tol = 1e-13) const;

  friend MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b);
  /// Matrix product; a 1 x 1 operand acts as a scalar factor.
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(const CMatrix& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const CMatrix& b);
  friend MatrixPolynomial operator*(cplx a, const MatrixPolynomial& b);

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<CMatrix> coeffs_;
};

/// Linear polynomial a + b z (1 x 1).
MatrixPolynomial linear(cplx a, cplx b);

/// Recovers the polynomial of degree at most `degree` whose values are
/// f(z) by sampling on the roots of unity and applying the inverse DFT.
MatrixPolynomial interpolate(const std::function<CMatrix(cplx)>& f, int degree,
                             Eigen::Index rows, Eigen::Index cols);

}  // namespace mmp

#endif  // MMP_POLYNOMIAL_HPP
