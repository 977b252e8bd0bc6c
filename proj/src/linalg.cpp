#include "mmp/linalg.hpp"

#include "mmp/errors.hpp"

#include <sstream>

namespace mmp {

SingularPivotError::SingularPivotError(std::complex<double> z, double sigma_min)
    : DomainError([&] {
        std::ostringstream os;
        os.precision(17);
        os << "singular pivot matrix at z=(" << z.real() << "," << z.imag()
           << "), smallest singular value " << sigma_min;
        return os.str();
      }()),
      z_(z),
      sigma_min_(sigma_min) {}

FixedPointError::FixedPointError(double distance)
    : DomainError([&] {
        std::ostringstream os;
        os << "extension has fixed points; parameter rejected (|mu-1|=" << distance << ")";
        return os.str();
      }()),
      distance_(distance) {}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

CMatrix gram(const CMatrix& cols, const CMatrix& rows) {
  return rows.adjoint() * cols;
}

HermitianEigen eigh(const CMatrix& m) {
  if (m.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

double smallest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double largest_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().maxCoeff();
}

CMatrix null_space(const CMatrix& m, double tol) {
  const auto n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  // Columns of V beyond rank(m) span the kernel; so do those with small s.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sj = j < s.size() ? s(j) : 0.0;
    if (sj <= tol) keep.push_back(j);
  }
  CMatrix out(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(keep[c]);
  return out;
}

cplx determinant(const CMatrix& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

CMatrix adjugate(const CMatrix& m) {
  const auto n = m.rows();
  CMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  CMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // minor with row i and column j removed
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * determinant(minor);
    }
  }
  return adj;
}

}  // namespace mmp
