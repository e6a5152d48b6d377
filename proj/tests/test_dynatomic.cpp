#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "fekete_dyn/dynatomic.hpp"
#include "fekete_dyn/errors.hpp"
#include "oracles.hpp"

using namespace fekete_dyn;

namespace {

RationalMapLift quadratic(Complex c) {
  return RationalMapLift(HomPolyC::from_descending({1.0, 0.0, c}), HomPolyC::from_descending({0.0, 0.0, 1.0}));
}

bool contains(const Configuration& cfg, const ProjPoint& p, double tol) {
  return std::any_of(cfg.points.begin(), cfg.points.end(),
                     [&](const ProjPoint& q) { return spherical_dist(p, q) < tol; });
}

}  // namespace

TEST_SUITE("dynatomic") {

TEST_CASE("moebius against factorization") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  for (long n = 1; n <= 500; ++n) CHECK(moebius(n) == oracle::moebius(n));
}

TEST_CASE("dynatomic degree against inclusion-exclusion") {
  CHECK(dynatomic_degree(2, 1) == 3);
  CHECK(dynatomic_degree(2, 2) == 2);
  CHECK(dynatomic_degree(2, 4) == 12);
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 12; ++n) CHECK(dynatomic_degree(d, n) == oracle::exact_period_count(d, n));
  }
}

TEST_CASE("dynatomic forms of z^2") {
  const RationalMapLift f = quadratic(0.0);
  const HomPolyC psi1 = dynatomic_poly(f, 1).poly;
  // X^2 Y - X Y^2: ascending in powers of X.
  const std::vector<Complex> e1{0.0, -1.0, 1.0, 0.0};
  for (int j = 0; j <= 3; ++j) CHECK(std::abs(psi1[j] - e1[j]) < 1e-14);
  const HomPolyC psi2 = dynatomic_poly(f, 2).poly;
  REQUIRE(psi2.degree() == 2);
  for (int j = 0; j <= 2; ++j) CHECK(std::abs(psi2[j] - 1.0) < 1e-14);
  CHECK(dynatomic_poly(f, 3).poly.degree() == 6);
}

TEST_CASE("pointwise evaluation matches the expanded form") {
  std::mt19937_64 rng(99);
  const RationalMapLift f = quadratic({-0.4, 0.6});
  for (int n = 1; n <= 5; ++n) {
    const HomPolyC psi = dynatomic_poly(f, n).poly;
    for (int t = 0; t < 10; ++t) {
      const ProjPoint z = uniform_sphere_point(rng);
      const Complex direct = psi.evaluate(z.x1(), z.x2());
      const PsiJet jet = evaluate_psi(f, n, z.lift());
      CHECK(jet.log_abs == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-9));
      CHECK(std::abs(std::polar(1.0, jet.arg) - direct / std::abs(direct)) < 1e-8);
    }
  }
}

TEST_CASE("fixed points of z^2") {
  const Configuration cfg = periodic_points(quadratic(0.0), 1);
  REQUIRE(cfg.size() == 3);
  CHECK(cfg.total_multiplicity() == 3);
  CHECK(contains(cfg, ProjPoint::affine(0.0), 1e-12));
  CHECK(contains(cfg, ProjPoint::affine(1.0), 1e-12));
  CHECK(contains(cfg, ProjPoint::infinity(), 1e-12));
  CHECK(cfg.all_converged());
  for (int m : cfg.multiplicities) CHECK(m == 1);
}

TEST_CASE("period two of z^2 is the pair of primitive cube roots of unity") {
  const Configuration cfg = periodic_points(quadratic(0.0), 2);
  REQUIRE(cfg.size() == 2);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  CHECK(contains(cfg, ProjPoint::affine(w), 1e-12));
  CHECK(contains(cfg, ProjPoint::affine(std::conj(w)), 1e-12));
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    CHECK(cfg.exact_periods[i] == 2);
    CHECK(std::abs(cfg.multipliers[i] - 4.0) < 1e-10);
  }
}

TEST_CASE("parabolic fixed point of z^2 + 1/4 is found with multiplicity two") {
  const Configuration cfg = periodic_points(quadratic(0.25), 1);
  REQUIRE(cfg.size() == 2);
  CHECK(cfg.total_multiplicity() == 3);
  const auto it = std::find(cfg.multiplicities.begin(), cfg.multiplicities.end(), 2);
  REQUIRE(it != cfg.multiplicities.end());
  const std::size_t k = std::size_t(it - cfg.multiplicities.begin());
  CHECK(spherical_dist(cfg.points[k], ProjPoint::affine(0.5)) < 1e-10);
  CHECK(std::abs(cfg.multipliers[k] - 1.0) < 1e-8);
  CHECK(contains(cfg, ProjPoint::infinity(), 1e-12));
}

TEST_CASE("a formal period-two root of lower exact period") {
  // z^2 - 3/4: the fixed point -1/2 has multiplier -1 and is a double root of Psi_2.
  const Configuration cfg = periodic_points(quadratic(-0.75), 2);
  REQUIRE(cfg.size() == 1);
  CHECK(cfg.multiplicities[0] == 2);
  CHECK(cfg.exact_periods[0] == 1);
  CHECK(std::abs(cfg.multipliers[0] + 1.0) < 1e-8);
  CHECK(spherical_dist(cfg.points[0], ProjPoint::affine(-0.5)) < 1e-10);
  CHECK(std::any_of(cfg.warnings.begin(), cfg.warnings.end(),
                    [](const std::string& w) { return w.rfind("LowerPeriod", 0) == 0; }));
}

TEST_CASE("every root is periodic with the right count") {
  for (Complex c : {Complex(0.0), Complex(-1.0), Complex(0.0, 0.25), Complex(-0.12, 0.75)}) {
    const RationalMapLift f = quadratic(c);
    for (int n = 1; n <= 6; ++n) {
      const Configuration cfg = periodic_points(f, n);
      CHECK(cfg.total_multiplicity() == dynatomic_degree(2, n));
      for (std::size_t i = 0; i < cfg.size(); ++i) {
        CHECK(cfg.residuals[i] <= 1e-9);
        ProjPoint z = cfg.points[i];
        for (int k = 0; k < n; ++k) z = f(z);
        CHECK(spherical_dist(z, cfg.points[i]) < 1e-8);
      }
    }
  }
}

TEST_CASE("configurations are deterministic for a fixed seed") {
  const RationalMapLift f = quadratic({0.3, -0.5});
  const Configuration a = periodic_points(f, 7), b = periodic_points(f, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points[i].lift() == b.points[i].lift());
}

TEST_CASE("discriminant fixtures") {
  const RationalMapLift f = quadratic(0.0);
  const DiscValue d1 = disc(dynatomic_poly(f, 1), periodic_points(f, 1));
  CHECK(std::abs(d1.value + 1.0) < 1e-12);
  const DiscValue d2 = disc(dynatomic_poly(f, 2), periodic_points(f, 2));
  CHECK(std::abs(d2.value - 3.0) < 1e-12);
  const RationalMapLift g = quadratic(0.25);
  const DiscValue d3 = disc(dynatomic_poly(g, 1), periodic_points(g, 1));
  CHECK(d3.zero);
  CHECK(d3.value == Complex(0.0));
}

TEST_CASE("discriminant depends only on the points") {
  const RationalMapLift f = quadratic(-1.0);
  const DynatomicPoly psi = dynatomic_poly(f, 3);
  Configuration cfg = periodic_points(f, 3);
  const DiscValue a = disc(psi, cfg);
  for (auto& p : cfg.points) p = ProjPoint(p.x1() * Complex(3.0, 1.0), p.x2() * Complex(3.0, 1.0));
  const DiscValue b = disc(psi, cfg);
  CHECK(a.log_abs == doctest::Approx(b.log_abs).epsilon(1e-12));
  CHECK(a.log_abs == doctest::Approx(std::log(9747.0)).epsilon(1e-10));
}

TEST_CASE("incomplete root lists are rejected") {
  const RationalMapLift f = quadratic(0.0);
  Configuration cfg = periodic_points(f, 2);
  cfg.points.pop_back();
  cfg.multiplicities.pop_back();
  CHECK_THROWS_AS(disc(dynatomic_poly(f, 2), cfg), Error);
}

}  // TEST_SUITE
