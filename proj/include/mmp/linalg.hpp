#ifndef MMP_LINALG_HPP
#define MMP_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace mmp {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Largest absolute value of an entry; 0 for an empty matrix.
double max_abs(const CMatrix& m);

/// (M + M^*) / 2.
CMatrix hermitian_part(const CMatrix& m);

/// Matrix of inner products ((cols_k, rows_j))_{j,k} = rows^* cols.
///
/// The inner product is (f, g) = g^* f, linear in the first argument, so
/// entry (j, k) of the result is (cols.col(k), rows.col(j)).
CMatrix gram(const CMatrix& cols, const CMatrix& rows);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns, orthonormal
};

/// Eigendecomposition of the Hermitian part of `m`.
HermitianEigen eigh(const CMatrix& m);

double smallest_singular_value(const CMatrix& m);
double largest_singular_value(const CMatrix& m);

/// Orthonormal basis of the numerical null space: right singular vectors
/// whose singular value is at most `tol`.
CMatrix null_space(const CMatrix& m, double tol);

/// Determinant via LU; well defined for singular input.
cplx determinant(const CMatrix& m);

/// Classical adjugate computed from cofactors, so it stays accurate when
/// `m` is singular or nearly so.
CMatrix adjugate(const CMatrix& m);

}  // namespace mmp

#endif  // MMP_LINALG_HPP
