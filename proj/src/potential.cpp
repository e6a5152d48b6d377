#include "fekete_dyn/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "fekete_dyn/parallel.hpp"

namespace fekete_dyn {

std::pair<double, double> image_norm_bounds(const RationalMapLift& f) {
  const int d = f.degree();
  const int size = 2 * d;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k <= d; ++k) {
      s(i, i + k) = f.f1()[d - k];
      s(d + i, i + k) = f.f2()[d - k];
    }
  }
  const double inv_norm = s.inverse().norm();
  // max(|W1|, |W2|)^{2d-1} >= 2^{-(2d-1)/2} on unit lifts, and each monomial
  // is A F1 + B F2 with |A(W)| + |B(W)| <= sqrt(2d) ||S^{-1}||_F.
  const double lower = std::pow(2.0, -0.5 * (2 * d - 1)) / (std::sqrt(2.0 * d) * inv_norm);
  return {lower, f.coefficient_l1()};
}

GreenEvaluator::GreenEvaluator(RationalMapLift f, double target_tol) : f_(std::move(f)), target_tol_(target_tol) {
  if (!(target_tol_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "target tolerance must be positive");
  const auto [lower, upper] = image_norm_bounds(f_);
  per_step_bound_ = std::max(std::abs(std::log(upper)), std::abs(std::log(lower)));
  const double d = f_.degree();
  const double ratio = per_step_bound_ / ((1.0 - 1.0 / d) * target_tol_);
  iteration_bound_ = static_cast<int>(std::ceil(std::log(std::max(ratio, 1.0)) / std::log(d))) + 5;
}

double GreenEvaluator::series(const Lift& unit) const {
  const double d = f_.degree();
  Lift w = unit;
  double weight = 1.0 / d;
  double sum = 0.0;
  for (int k = 0; k < iteration_bound_; ++k) {
    const Lift v = f_.apply(w);
    const double n = norm(v);
    sum += weight * std::log(n);
    w = {v[0] / n, v[1] / n};
    weight /= d;
  }
  return sum;
}

double GreenEvaluator::green(const Lift& z) const {
  const double n = norm(z);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "the Green function needs a nonzero lift");
  return std::log(n) + series({z[0] / n, z[1] / n});
}

double GreenEvaluator::good_potential(const ProjPoint& z) const {
  if (!f_.normalized()) {
    throw Error(ErrorCode::NotGoodLift, "good potential requires Res(F) = 1; normalize the lift first");
  }
  return series(z.unit_lift());
}

double GreenEvaluator::hsia_kernel(const ProjPoint& x, const ProjPoint& y) const {
  const double dist = spherical_dist(x, y);
  if (dist == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(dist) - (good_potential(x) + good_potential(y));
}

double green(const GreenEvaluator& ev, const Lift& z) { return ev.green(z); }
double good_potential(const GreenEvaluator& ev, const ProjPoint& z) { return ev.good_potential(z); }
double hsia_kernel(const GreenEvaluator& ev, const ProjPoint& x, const ProjPoint& y) { return ev.hsia_kernel(x, y); }

double holder_seminorm_estimate(const PointFunction& g, double alpha, std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Hoelder exponent must lie in (0, 1]");
  std::vector<double> ratio(samples, 0.0);
  parallel_for(samples, [&](std::size_t i) {
    auto rng = stream_rng(seed, i);
    const ProjPoint x = uniform_sphere_point(rng);
    ProjPoint y;
    if (i % 2 == 0) {
      y = uniform_sphere_point(rng);
    } else {
      std::uniform_int_distribution<int> level(1, 20);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      const double delta = std::ldexp(1.0, -level(rng));
      const ProjPoint local = point_at_distance_from_origin(delta, angle(rng));
      y = ProjPoint(act(isometry_from_origin(x), local.lift()));
    }
    const double dist = spherical_dist(x, y);
    if (dist > 0.0) ratio[i] = std::abs(g(x) - g(y)) / std::pow(dist, alpha);
  });
  return ratio.empty() ? 0.0 : *std::max_element(ratio.begin(), ratio.end());
}

double holder_seminorm_estimate(const GreenEvaluator& ev, double alpha, std::size_t samples, std::uint64_t seed) {
  return holder_seminorm_estimate([&ev](const ProjPoint& z) { return ev.good_potential(z); }, alpha, samples, seed);
}

}  // namespace fekete_dyn
