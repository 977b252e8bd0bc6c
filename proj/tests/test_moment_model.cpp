#include <doctest.h>

#include <sstream>

#include "mmp/errors.hpp"
#include "mmp/moment_model.hpp"
#include "oracles.hpp"

using namespace mmp;

TEST_CASE("moment sequence validation") {
  CMatrix s(2, 2);
  s << 1, 0, 0, 1;
  CHECK_THROWS_AS(MomentSequence(2, 1, {s, s}), InputError);
  CHECK_THROWS_AS(MomentSequence(2, 0, {s}), InputError);
  CMatrix bad(2, 2);
  bad << 1, 1, 0, 1;
  try {
    MomentSequence(2, 1, {s, bad, s});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("not Hermitian at n=1") != std::string::npos);
  }
  CMatrix tiny(2, 2);
  tiny << 1, cplx(0, 1e-13), cplx(0, 0), 1;
  const MomentSequence ok(2, 1, {s, tiny, s});
  CHECK(max_abs(ok[1] - ok[1].adjoint()) == 0.0);
  CMatrix wrong(3, 3);
  wrong.setIdentity();
  CHECK_THROWS_AS(MomentSequence(2, 1, {s, wrong, s}), InputError);
}

TEST_CASE("zero moment sequence") {
  const MomentSequence z = MomentSequence::zero(3, 2);
  CHECK(z.moments().size() == 5);
  CHECK(z[4].isZero());
}

TEST_CASE("atomic measure merges, sorts and integrates") {
  CMatrix w(1, 1);
  w << 2.0;
  const AtomicMeasure m(1, {{1.0, w}, {-1.0, w}, {1.0, w}});
  REQUIRE(m.size() == 2);
  CHECK(m.atoms()[0].t == -1.0);
  CHECK(m.atoms()[1].weight(0, 0).real() == 4.0);
  CHECK(m.moment(1)(0, 0).real() == doctest::Approx(2.0));
  CHECK(m.total_mass()(0, 0).real() == doctest::Approx(6.0));
  CHECK(m.distribution(1.0)(0, 0).real() == doctest::Approx(2.0));
  CHECK(m.distribution(1.0 + 1e-12)(0, 0).real() == doctest::Approx(6.0));
  CMatrix neg(1, 1);
  neg << -1.0;
  CHECK_THROWS_AS(AtomicMeasure(1, {{0.0, neg}}), InputError);
}

TEST_CASE("gap spec parsing") {
  const GapSpec g = GapSpec::parse("(-1,1), (3,inf)");
  REQUIRE(g.intervals().size() == 2);
  CHECK(g.contains(0.0));
  CHECK_FALSE(g.contains(1.0));
  CHECK(g.contains(1e300));
  CHECK_FALSE(g.intervals()[1].bounded());
  CHECK(GapSpec::parse("(-inf,+inf)").contains(-5.0));
  CHECK(GapSpec::parse("").empty());
  CHECK_THROWS_AS(GapSpec::parse("(1,-1)"), InputError);
  CHECK_THROWS_AS(GapSpec::parse("(0,2),(1,3)"), InputError);
  CHECK_THROWS_AS(GapSpec::parse("[0,1]"), InputError);
  CHECK_THROWS_AS(GapSpec::parse("(0,x)"), InputError);
  CHECK(GapSpec::parse("(-0.5,0.5)").subset_of(GapSpec::parse("(-1,1)")));
  CHECK_FALSE(GapSpec::parse("(-0.5,2)").subset_of(GapSpec::parse("(-1,1)")));
}

TEST_CASE("moment JSON round trip") {
  const MomentSequence ms = oracle::two_by_two();
  std::stringstream ss(to_json(ms).dump());
  const MomentSequence back = parse_moments(ss);
  for (int k = 0; k < 3; ++k) CHECK(max_abs(back[k] - ms[k]) == 0.0);

  CHECK_THROWS_AS(parse_moments(nlohmann::json::parse(R"({"N":1,"d":1})")), InputError);
  CHECK_THROWS_AS(parse_moments(nlohmann::json::parse(R"({"N":1,"d":1,"moments":[[[1]]]})")),
                  InputError);
  std::stringstream broken("{not json");
  CHECK_THROWS_AS(parse_moments(broken), InputError);

  const auto complex_entries = nlohmann::json::parse(
      R"({"N":2,"d":1,"moments":[[[1,[0,1]],[[0,-1],2]],[[0,0],[0,0]],[[1,0],[0,1]]]})");
  const MomentSequence c = parse_moments(complex_entries);
  CHECK(c[0](0, 1) == cplx(0, 1));
}

TEST_CASE("measure JSON round trip and verification") {
  CMatrix w(1, 1);
  w << 0.5;
  const AtomicMeasure m(1, {{-1.0, w}, {1.0, w}});
  const AtomicMeasure back = measure_from_json(to_json(m), 1);
  REQUIRE(back.size() == 2);
  CHECK(back.atoms()[1].t == 1.0);

  CMatrix s0(1, 1), s1(1, 1), s2(1, 1);
  s0 << 1.0;
  s1 << 0.0;
  s2 << 1.0;
  const MomentSequence ms(1, 1, {s0, s1, s2});
  CHECK(verify_moments(m, ms, 1e-12).pass);
  s1 << 0.1;
  const MomentReport bad = verify_moments(m, MomentSequence(1, 1, {s0, s1, s2}), 1e-12);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_deviation == doctest::Approx(0.1));
}

TEST_CASE("distribution CSV") {
  CMatrix w(1, 1);
  w << 1.0;
  const AtomicMeasure m(1, {{0.0, w}});
  std::ostringstream os;
  const std::vector<double> grid = default_distribution_grid(m);
  write_distribution_csv(os, m, grid);
  const std::string text = os.str();
  CHECK(text.rfind("lambda,m_0_0_re,m_0_0_im\n", 0) == 0);
  CHECK(text.find("\n1,1,0\n") != std::string::npos);
}
