#include <doctest.h>

#include <numbers>
#include <random>

#include "fekete_dyn/core_geometry.hpp"
#include "fekete_dyn/errors.hpp"

using namespace fekete_dyn;

namespace {

RationalMapLift quad(Complex a, Complex b, Complex c, Complex e = 0.0, Complex f = 0.0, Complex g = 1.0) {
  // (aX^2 + bXY + cY^2, eX^2 + fXY + gY^2)
  return RationalMapLift(HomPolyC::from_descending({a, b, c}), HomPolyC::from_descending({e, f, g}));
}

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

}  // namespace

TEST_SUITE("core_geometry") {

TEST_CASE("wedge of explicit lifts") {
  CHECK(wedge(Lift{0.0, 1.0}, Lift{1.0, 1.0}) == Complex(-1.0));
  CHECK(wedge(Lift{1.0, 0.0}, Lift{1.0, 0.0}) == Complex(0.0));
  const Complex w = wedge(Lift{kOmega, 1.0}, Lift{std::conj(kOmega), 1.0});
  CHECK(w.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("spherical distance fixtures") {
  CHECK(spherical_dist(ProjPoint::affine(0.0), ProjPoint::infinity()) == doctest::Approx(1.0));
  CHECK(spherical_dist(ProjPoint::affine(0.0), ProjPoint::affine(1.0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  const ProjPoint z = ProjPoint::affine({0.3, -2.0});
  CHECK(spherical_dist(z, z) == 0.0);
}

TEST_CASE("stored lift is max-normalized and projective") {
  const ProjPoint big(Complex(8.0, 0.0), Complex(2.0, 0.0));
  CHECK(std::abs(big.x1()) == doctest::Approx(1.0));
  CHECK(big.to_affine().real() == doctest::Approx(4.0));
  const ProjPoint scaled(Complex(0.0, 16.0), Complex(0.0, 4.0));
  CHECK(projectively_equal(big, scaled, 1e-14));
  CHECK(ProjPoint::infinity().is_infinity());
  CHECK_THROWS_AS(ProjPoint(Complex(0.0), Complex(0.0)), Error);
}

TEST_CASE("spherical distance is a bounded symmetric metric") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const ProjPoint x = uniform_sphere_point(rng), y = uniform_sphere_point(rng), z = uniform_sphere_point(rng);
    const double xy = spherical_dist(x, y);
    CHECK(xy >= 0.0);
    CHECK(xy <= 1.0 + 1e-15);
    CHECK(xy == doctest::Approx(spherical_dist(y, x)).epsilon(1e-14));
    CHECK(xy <= spherical_dist(x, z) + spherical_dist(z, y) + 1e-14);
  }
}

TEST_CASE("isometry_from_origin preserves distances and sends 0 to z") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const ProjPoint z = uniform_sphere_point(rng), a = uniform_sphere_point(rng), b = uniform_sphere_point(rng);
    const Mat2 u = isometry_from_origin(z);
    const ProjPoint ua(act(u, a.lift())), ub(act(u, b.lift()));
    CHECK(spherical_dist(ua, ub) == doctest::Approx(spherical_dist(a, b)).epsilon(1e-12));
    CHECK(spherical_dist(ProjPoint(act(u, Lift{0.0, 1.0})), z) < 1e-14);
  }
}

TEST_CASE("point_at_distance_from_origin lands at the requested distance") {
  for (double delta : {1e-6, 0.01, 0.5, 0.999}) {
    const ProjPoint q = point_at_distance_from_origin(delta, 1.1);
    CHECK(spherical_dist(q, ProjPoint::affine(0.0)) == doctest::Approx(delta).epsilon(1e-12));
  }
}

TEST_CASE("resultant fixtures") {
  CHECK(std::abs(quad(1, 0, 0).resultant() - 1.0) < 1e-14);
  CHECK(std::abs(quad(2, 0, 0, 0, 0, 2).resultant() - 16.0) < 1e-13);
  for (double c : {-2.0, -1.0, 0.25, 3.0 / 7.0, 5.0}) CHECK(std::abs(quad(1, 0, c).resultant() - 1.0) < 1e-13);
  CHECK(std::abs(quad(2, 0, 0, 0, 0, 3).resultant() - 36.0) < 1e-12);
  CHECK_THROWS_AS(quad(0, 1, 0, 0, 0, 1), Error);
}

TEST_CASE("resultant scales as c^(2d)") {
  const RationalMapLift f = quad({1.0, 0.5}, -0.3, 2.0, 0.2, 1.0, {0.0, -1.0});
  const Complex c(0.7, -1.3);
  const Complex expected = std::pow(c, 4) * f.resultant();
  CHECK(std::abs(f.scaled(c).resultant() - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("good lift normalization") {
  const RationalMapLift f = normalize_good_lift(quad(2, 0, 0, 0, 0, 2));
  CHECK(std::abs(std::abs(f.f1()[2]) - 1.0) < 1e-14);
  CHECK(f.normalized());
  CHECK(std::abs(f.resultant() - 1.0) < 1e-13);
  const RationalMapLift g = normalize_good_lift(quad(1, 0, 0.25));
  CHECK(std::abs(g.f1()[0] - 0.25) < 1e-15);
  CHECK(std::abs(g.f1()[2] - 1.0) < 1e-15);
}

TEST_CASE("iterate composes forms") {
  const auto sq = iterate(quad(1, 0, 0), 2);
  CHECK(sq.first.degree() == 4);
  CHECK(std::abs(sq.first[4] - 1.0) < 1e-15);
  CHECK(std::abs(sq.second[0] - 1.0) < 1e-15);
  // (X^2 + Y^2)^2 + Y^4 = X^4 + 2X^2Y^2 + 2Y^4
  const auto g = iterate(quad(1, 0, 1), 2);
  const std::vector<Complex> expected{2.0, 0.0, 2.0, 0.0, 1.0};
  for (int j = 0; j <= 4; ++j) CHECK(std::abs(g.first[j] - expected[j]) < 1e-15);
  const auto one = iterate(quad(1, 0, 1), 1);
  CHECK(std::abs(one.first[0] - 1.0) < 1e-15);
  CHECK_THROWS_AS(iterate(quad(1, 0, 1), 13), Error);
}

TEST_CASE("map action agrees with affine evaluation") {
  const RationalMapLift f = quad(1, 0, {0.0, 0.25});
  const Complex z(0.4, -0.9);
  CHECK(std::abs(f(ProjPoint::affine(z)).to_affine() - (z * z + Complex(0.0, 0.25))) < 1e-14);
  CHECK(f(ProjPoint::infinity()).is_infinity());
}

}  // TEST_SUITE
