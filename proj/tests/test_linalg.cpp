#include <doctest.h>

#include <random>

#include "mmp/linalg.hpp"
#include "mmp/polynomial.hpp"
#include "oracles.hpp"

using namespace mmp;

TEST_CASE("gram uses (f, g) = g^* f") {
  CMatrix a(2, 1), b(2, 1);
  a << cplx(1, 1), 2.0;
  b << kI, 1.0;
  const CMatrix g = gram(a, b);
  // (a, b) = conj(b_0) a_0 + conj(b_1) a_1 = -i (1+i) + 2 = 3 - i
  CHECK(std::abs(g(0, 0) - cplx(3, -1)) < 1e-15);
}

TEST_CASE("adjugate matches det times inverse and survives singular input") {
  std::mt19937_64 rng(7);
  const CMatrix m = oracle::random_complex(4, 4, rng);
  CHECK(max_abs(adjugate(m) - determinant(m) * m.inverse()) < 1e-12 * max_abs(adjugate(m)));
  CMatrix s = m;
  s.col(3) = s.col(0) + s.col(1);
  CHECK(max_abs(adjugate(s) * s) < 1e-12);
  CHECK(max_abs(adjugate(s)) > 1e-3);
  CMatrix one(1, 1);
  one << 5.0;
  CHECK(adjugate(one)(0, 0) == cplx(1.0));
}

TEST_CASE("null space and singular values") {
  CMatrix m(2, 3);
  m << 1, 0, 0, 0, 1, 0;
  const CMatrix ns = null_space(m, 1e-12);
  REQUIRE(ns.cols() == 1);
  CHECK(std::abs(std::abs(ns(2, 0)) - 1.0) < 1e-14);
  CHECK(null_space(CMatrix::Identity(3, 3), 1e-12).cols() == 0);
  CHECK(smallest_singular_value(CMatrix::Identity(2, 2) * 3.0) == doctest::Approx(3.0));
}

TEST_CASE("eigh sorts ascending and uses the Hermitian part") {
  CMatrix m(2, 2);
  m << 2, 1, 1, 2;
  const HermitianEigen e = eigh(m);
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(3.0));
}

TEST_CASE("matrix polynomial arithmetic and evaluation") {
  const MatrixPolynomial p = linear(1.0, 2.0);  // 1 + 2z
  const MatrixPolynomial q = linear(-kI, 1.0);  // z - i
  const MatrixPolynomial pq = p * q;
  CHECK(pq.degree() == 2);
  const cplx z(0.3, -1.7);
  CHECK(std::abs(pq.scalar_at(z) - (1.0 + 2.0 * z) * (z - kI)) < 1e-14);
  CHECK(std::abs((p + q).scalar_at(z) - (1.0 + 3.0 * z - kI)) < 1e-14);
  CHECK((p - p).trimmed().degree() == -1);

  CMatrix c(2, 2);
  c << 1, 2, 3, 4;
  const MatrixPolynomial cp = q * MatrixPolynomial::constant(c);
  CHECK(max_abs(cp(z) - (z - kI) * c) < 1e-14);
  CHECK(max_abs((c * cp)(z) - (z - kI) * c * c) < 1e-13);
  CHECK(max_abs(cp.block(1, 0, 1, 2)(z) - (z - kI) * c.row(1)) < 1e-14);
  CHECK(cp.coefficient(5).isZero());
}

TEST_CASE("interpolation recovers polynomial coefficients") {
  std::mt19937_64 rng(11);
  std::vector<CMatrix> coeffs;
  for (int k = 0; k <= 4; ++k) coeffs.push_back(oracle::random_complex(2, 3, rng));
  const MatrixPolynomial p(coeffs);
  const MatrixPolynomial r = interpolate([&](cplx z) { return p(z); }, 4, 2, 3);
  REQUIRE(r.degree() == 4);
  for (int k = 0; k <= 4; ++k) CHECK(max_abs(r.coefficient(k) - coeffs[k]) < 1e-13);
  const MatrixPolynomial det = interpolate(
      [](cplx z) { return CMatrix::Constant(1, 1, (z - 1.0) * (z + 2.0)); }, 3, 1, 1).trimmed();
  CHECK(det.degree() == 2);
}
