#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fekete_dyn/dynatomic.hpp"
#include "fekete_dyn/equilibrium.hpp"
#include "fekete_dyn/errors.hpp"
#include "fekete_dyn/parallel.hpp"
#include "fekete_dyn/potential.hpp"
#include "oracles.hpp"

using namespace fekete_dyn;

namespace {

RationalMapLift quadratic(Complex c) {
  return RationalMapLift(HomPolyC::from_descending({1.0, 0.0, c}), HomPolyC::from_descending({0.0, 0.0, 1.0}));
}

double within(const MCEstimate& e, double expected) { return std::abs(e.mean - expected) / e.std_error; }

}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("z^2 samples lie on the unit circle") {
  const MeasureSampler s(quadratic(0.0), 4, 40, ProjPoint::affine({0.6, 0.3}));
  for (const auto& z : s.sample(500)) CHECK(std::abs(std::abs(z.to_affine()) - 1.0) < 1e-9);
}

TEST_CASE("Chebyshev samples lie on the segment [-2, 2]") {
  const MeasureSampler s(quadratic(-2.0), 4, 40);
  for (const auto& z : s.sample(500)) {
    const Complex w = z.to_affine();
    CHECK(std::abs(w.imag()) < 1e-6);
    CHECK(std::abs(w.real()) <= 2.0 + 1e-6);
  }
}

TEST_CASE("empty requests and empty integrals") {
  const MeasureSampler s(quadratic(0.0), 4);
  CHECK(sample_mu(s, 0).empty());
  CHECK_THROWS_AS(integrate([](const ProjPoint&) { return 1.0; }, {}), Error);
}

TEST_CASE("exceptional start points are replaced") {
  const MeasureSampler s(quadratic(0.0), 4, 40, ProjPoint::affine(0.0));
  CHECK(spherical_dist(s.start_point(), ProjPoint::affine(0.0)) > 1e-6);
  CHECK(spherical_dist(s.start_point(), ProjPoint::infinity()) > 1e-6);
}

TEST_CASE("preimages are checked preimages") {
  const MeasureSampler s(quadratic({-0.1, 0.65}), 4);
  const ProjPoint w = ProjPoint::affine({0.3, -1.1});
  const auto pre = s.preimages(w);
  REQUIRE(pre.size() == 2);
  for (const auto& z : pre) CHECK(spherical_dist(s.map()(z), w) < 1e-12);
}

TEST_CASE("sampling is reproducible and prefix-stable") {
  const MeasureSampler s(quadratic(-1.0), 77);
  const auto a = s.sample(300), b = s.sample(300);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].lift() == b[i].lift());
  const auto prefix = s.sample(100);
  for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(prefix[i].lift() == a[i].lift());
}

TEST_CASE("integrals of simple observables") {
  const MeasureSampler s(quadratic(0.0), 9);
  const auto pts = s.sample(20000);
  const MCEstimate one = integrate([](const ProjPoint&) { return 1.0; }, pts);
  CHECK(one.mean == 1.0);
  CHECK(one.std_error == 0.0);
  const MCEstimate re = integrate([](const ProjPoint& z) { return z.to_affine().real(); }, pts);
  CHECK(within(re, 0.0) < 4.0);
}

TEST_CASE("mean of the good potential of z^2 against circle quadrature") {
  const GreenEvaluator ev(quadratic(0.0));
  const auto pts = MeasureSampler(quadratic(0.0), 12).sample(20000);
  const MCEstimate g = integrate([&](const ProjPoint& z) { return ev.good_potential(z); }, pts);
  const double quad = oracle::circle_average(oracle::z2_potential);
  CHECK(quad == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(g.mean - quad) <= 3.0 * g.std_error + 1e-12);
}

TEST_CASE("equilibrium of z^2 - 2 is the arcsine law") {
  const auto pts = MeasureSampler(quadratic(-2.0), 5).sample(20000);
  const MCEstimate sq = integrate([](const ProjPoint& z) { return std::norm(z.to_affine()); }, pts);
  CHECK(oracle::arcsine_average([](double x) { return x * x; }) == doctest::Approx(2.0));
  CHECK(within(sq, 2.0) < 4.0);
}

TEST_CASE("mutual energy of the circle measure with itself is log 2") {
  const auto x = MeasureSampler(quadratic(0.0), 31).sample(20000);
  const auto y = MeasureSampler(quadratic(0.0), 32).sample(20000);
  const MCEstimate e = mutual_energy_mc(x, y, Pairing::Independent);
  CHECK(within(e, std::log(2.0)) < 3.0);
}

TEST_CASE("mutual energy of a shrinking cluster diverges") {
  double previous = -1e300;
  for (double r : {1e-2, 1e-4, 1e-6}) {
    std::vector<ProjPoint> cluster;
    for (int k = 0; k < 6; ++k) cluster.push_back(ProjPoint::affine(std::polar(r, k * 1.0)));
    const double e = mutual_energy_mc(cluster, cluster, Pairing::Atoms).mean;
    CHECK(e > previous + 1.0);
    previous = e;
  }
}

TEST_CASE("mutual energy against the fixed points of z^2") {
  const GreenEvaluator ev(quadratic(0.0));
  const auto mu = MeasureSampler(quadratic(0.0), 41).sample(20000);
  const Configuration per1 = periodic_points(quadratic(0.0), 1);
  const MCEstimate e = mutual_energy_mc(mu, per1.points, Pairing::AgainstAtoms);
  double direct = 0.0;
  for (const auto& z : per1.points) direct -= ev.good_potential(z) / 3.0;
  direct += 0.5 * std::log(2.0);
  CHECK(direct == doctest::Approx(2.0 / 3.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(within(e, direct) < 3.0);
}

TEST_CASE("bound A formula") {
  CHECK(frl_bound_A({2, 0.0, 1.0, 0.0}) == doctest::Approx(2.0 * std::log(2.0)));
  const double s = 0.9;
  CHECK(frl_bound_A({2, std::log(3.0), 1.0, s}) ==
        doctest::Approx(-0.5 * std::log(3.0) + (s + 2.0) * std::log(2.0)));
  CHECK(frl_bound_A({100000, -50.0, 1.0, 1.0}) < 0.01);
  CHECK_THROWS_AS(frl_bound_A({2, 100.0, 1.0, 0.0}), Error);
  CHECK(regularization_radius(0.25, 16) == doctest::Approx(1.0 / 65536.0));
  CHECK(regularization_radius(1.0, 16) == doctest::Approx(1.0 / 256.0));
}

TEST_CASE("points on circles sit at the requested distance") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const ProjPoint z = uniform_sphere_point(rng);
    CHECK(spherical_dist(point_on_circle(z, 1e-3, 0.1 * t), z) == doctest::Approx(1e-3).epsilon(1e-9));
  }
}

TEST_CASE("regularized energy respects its bound") {
  std::mt19937_64 rng(8);
  std::vector<ProjPoint> atoms;
  for (int k = 0; k < 8; ++k) atoms.push_back(uniform_sphere_point(rng));
  for (double eps : {1e-2, 1e-3}) {
    const MCEstimate e = regularized_energy_mc(atoms, eps, 4000, 13);
    CHECK(e.mean <= regularized_energy_bound(atoms, eps) + 3.0 * e.std_error);
  }
}

TEST_CASE("difference energy of a configuration with itself vanishes") {
  std::mt19937_64 rng(6);
  std::vector<ProjPoint> atoms;
  for (int k = 0; k < 5; ++k) atoms.push_back(uniform_sphere_point(rng));
  const MCEstimate e = smoothed_difference_energy(atoms, atoms, 1e-3, 2000, 3);
  CHECK(std::abs(e.mean) <= 4.0 * e.std_error + 1e-9);
}

TEST_CASE("generator streams") {
  auto a = stream_rng(5, 0), b = stream_rng(5, 0), c = stream_rng(5, 1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

}  // TEST_SUITE
