#include <doctest.h>

#include <random>

#include "fekete_dyn/errors.hpp"
#include "fekete_dyn/observables.hpp"
#include "fekete_dyn/potential.hpp"

using namespace fekete_dyn;

TEST_SUITE("observables") {

TEST_CASE("point literals") {
  CHECK(parse_point("inf").is_infinity());
  CHECK(parse_point("1/3").to_affine() == Complex(1.0 / 3.0, 0.0));
  CHECK(parse_point("-0.25").to_affine() == Complex(-0.25, 0.0));
  CHECK(parse_point("0.5-0.25i").to_affine() == Complex(0.5, -0.25));
  CHECK(parse_point("-i").to_affine() == Complex(0.0, -1.0));
  CHECK(parse_point("2i").to_affine() == Complex(0.0, 2.0));
  CHECK(parse_point("1e-3+1e-2i").to_affine() == Complex(1e-3, 1e-2));
  CHECK_THROWS_AS(parse_point("abc"), Error);
  CHECK_THROWS_AS(parse_point("1/0"), Error);
}

TEST_CASE("observable lists keep parenthesized commas") {
  const auto v = split_observable_list("re_chordal, dist_to(1/3),potential");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == "dist_to(1/3)");
}

TEST_CASE("registry entries honour their Lipschitz constants") {
  std::mt19937_64 rng(19);
  for (const char* name : {"re_chordal", "im_chordal", "dist_to(0.5+0.5i)", "dist_to(inf)"}) {
    const Observable phi = make_observable(name);
    CHECK(phi.lipschitz_certified);
    double worst = 0.0;
    for (int t = 0; t < 5000; ++t) {
      const ProjPoint x = uniform_sphere_point(rng), y = uniform_sphere_point(rng);
      worst = std::max(worst, std::abs(phi(x) - phi(y)) / spherical_dist(x, y));
    }
    CHECK(worst <= phi.lipschitz + 1e-12);
  }
}

TEST_CASE("chordal coordinates") {
  const Observable re = make_observable("re_chordal"), im = make_observable("im_chordal");
  CHECK(re(ProjPoint::affine(1.0)) == doctest::Approx(0.5));
  CHECK(std::abs(re(ProjPoint::infinity())) < 1e-15);
  CHECK(im(ProjPoint::affine({0.0, 1.0})) == doctest::Approx(0.5));
  CHECK(make_observable("one")(ProjPoint::affine(3.0)) == 1.0);
}

TEST_CASE("potential observable needs an evaluator") {
  CHECK_THROWS_AS(make_observable("potential"), Error);
  const RationalMapLift f(HomPolyC::from_descending({1.0, 0.0, 0.0}), HomPolyC::from_descending({0.0, 0.0, 1.0}));
  const GreenEvaluator ev(f);
  const Observable g = make_observable("potential", &ev, 3);
  CHECK_FALSE(g.lipschitz_certified);
  CHECK(g.lipschitz > 0.0);
  CHECK(g(ProjPoint::affine(1.0)) == doctest::Approx(-0.5 * std::log(2.0)));
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(make_observable("banana"), Error);
  CHECK_THROWS_AS(make_observable("dist_to()"), Error);
}

}  // TEST_SUITE
