#ifndef MMP_TESTS_EXAMPLE_CLOSED_FORMS_HPP
#define MMP_TESTS_EXAMPLE_CLOSED_FORMS_HPP

#include <cmath>

#include "mmp/linalg.hpp"

// Closed-form coefficients of the worked two-by-two example (moments
// diag(1/3, 1), diag(1/2, 1), identity).
namespace closed_form {

using mmp::CMatrix;
using mmp::cplx;
using mmp::kI;

inline cplx q(cplx z) { return cplx(0.5, -0.75) * z + cplx(-0.75, 1.5); }
inline cplx p(cplx z) { return cplx(-0.5, -0.75) * z + cplx(0.75, 1.5); }

inline CMatrix w() {
  CMatrix m = CMatrix::Zero(2, 1);
  m(0, 0) = std::sqrt(3.0) / 4.0 * kI;
  return m;
}
inline cplx t() { return {0.5, -0.75}; }
inline CMatrix k() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 2.0 / std::sqrt(3.0);
  m(1, 1) = 2.0 / std::sqrt(2.0);
  return m;
}
inline CMatrix c_hat() { return w().transpose(); }
inline cplx k_z(cplx z) { return cplx(1, -1) * q(z) * (z - 1.0); }
inline CMatrix a0_adj(cplx z) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = cplx(1, -1) * (z - 1.0);
  m(1, 1) = q(z);
  return m;
}
inline CMatrix b(cplx z) {
  CMatrix m = CMatrix::Zero(2, 1);
  m(0, 0) = -0.5 * cplx(1, 1) * (z * z + 1.0) * (z - 1.0);
  return m;
}
inline cplx c(cplx z) { return cplx(1, -1) * (z - 1.0) * (-z + kI) * p(z); }
inline CMatrix d(cplx z) {
  CMatrix m = CMatrix::Zero(1, 2);
  m(0, 0) = -0.5 * cplx(1, 1) * (z - 1.0) * (z - kI);
  return m;
}
inline CMatrix a(cplx z) {
  const cplx a11 = cplx(1, -1) / 3.0 * (z - 1.0) *
                   (8.0 * kI - q(z) * (z * z + cplx(1.5, -1) * z + cplx(4, -1.5)));
  const cplx a22 = q(z) * (4.0 * kI + cplx(-1, 1) * (z - 1.0) * (z * z + cplx(1, -1) * z + cplx(2, -1)));
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = (z + kI) / (2.0 * kI) * a11;
  m(1, 1) = (z + kI) / (2.0 * kI) * a22;
  return m;
}

/// Simplified transform of the solution for a constant scalar parameter f,
/// obtained by substituting the coefficient closed forms above.
inline CMatrix transform(cplx z, cplx f) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = -(z - cplx(9, -32) / 26.0) / 3.0 / ((z + kI) * (z - 3.0 * cplx(8, -1) / 13.0));
  m(1, 1) = 1.0 / (1.0 - z);
  const cplx zq = (z + kI) * q(z);
  m(0, 0) += f / (2.0 * kI * zq * (zq + (-z + kI) * p(z) * f));
  return m;
}

inline cplx xi() { return {5.0 / 13.0, 12.0 / 13.0}; }

}  // namespace closed_form

#endif  // MMP_TESTS_EXAMPLE_CLOSED_FORMS_HPP
