#include <doctest.h>

#include "mmp/errors.hpp"
#include "mmp/nevanlinna.hpp"
#include "oracles.hpp"

using namespace mmp;

TEST_CASE("inversion of a known atomic transform") {
  CMatrix w0(2, 2), w1(2, 2);
  w0 << 0.3, kI * 0.1, -kI * 0.1, 0.2;
  w1 << 0.7, 0, 0, 0.4;
  const std::vector<double> t{-1.0, 0.5};
  const std::vector<CMatrix> w{w0, w1};
  const auto transform = [&](cplx z) { return oracle::transform_of(t, w, z); };
  const std::vector<double> grid{-2.0, 0.0, 2.0};
  const InversionResult res = invert_transform(transform, grid);
  REQUIRE(res.distribution.size() == 3);
  CHECK(res.distribution[0].isZero());
  CHECK(max_abs(res.distribution[1] - w0) < 1e-5);
  CHECK(max_abs(res.distribution[2] - (w0 + w1)) < 1e-5);
  CHECK(res.raw_mass.size() == 3);
  CHECK_FALSE(res.non_monotone);
  // The raw value at the largest epsilon is visibly biased.
  CHECK(max_abs(res.raw_mass[0] - (w0 + w1)) > 1e-4);
}

TEST_CASE("inversion input checks") {
  const auto transform = [](cplx z) { return CMatrix::Constant(1, 1, 1.0 / (0.0 - z)); };
  const std::vector<double> one{0.0};
  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(invert_transform(transform, one), InputError);
  CHECK_THROWS_AS(invert_transform(transform, unsorted), InputError);
  const std::vector<double> grid{-1.0, 1.0};
  const std::vector<double> bad_eps{0.0};
  CHECK_THROWS_AS(invert_transform(transform, grid, bad_eps), InputError);
}
