#pragma once

#include <cstdint>
#include <functional>

#include "fekete_dyn/core_geometry.hpp"

namespace fekete_dyn {

/// Escape-rate evaluation of the homogeneous Green function
///   G_F(Z) = lim d^{-n} log ||F^n(Z)||
/// by renormalized iteration. The truncation after k steps is at most
/// M d^{-k} / (1 - 1/d), where M bounds |log ||F(W)||| on the unit sphere.
class GreenEvaluator {
 public:
  explicit GreenEvaluator(RationalMapLift f, double target_tol = 1e-12);

  const RationalMapLift& map() const { return f_; }
  int iteration_bound() const { return iteration_bound_; }
  double per_step_bound() const { return per_step_bound_; }
  double target_tol() const { return target_tol_; }

  double green(const Lift& z) const;

  /// g_f(z) = G_F(Z) - log ||Z||; requires Res(F) = 1.
  double good_potential(const ProjPoint& z) const;

  /// log d(x, y) - g_f(x) - g_f(y); minus infinity on the diagonal.
  double hsia_kernel(const ProjPoint& x, const ProjPoint& y) const;

 private:
  double series(const Lift& unit) const;

  RationalMapLift f_;
  double target_tol_;
  double per_step_bound_ = 0.0;
  int iteration_bound_ = 0;
};

double green(const GreenEvaluator& ev, const Lift& z);
double good_potential(const GreenEvaluator& ev, const ProjPoint& z);
double hsia_kernel(const GreenEvaluator& ev, const ProjPoint& x, const ProjPoint& y);

/// Bounds (lower, upper) for ||F(W)|| over unit lifts W. The upper bound is
/// the coefficient l1 norm; the lower one comes from writing X^{2d-1} and
/// Y^{2d-1} as combinations A F1 + B F2, read off the inverse Sylvester matrix.
std::pair<double, double> image_norm_bounds(const RationalMapLift& f);

using PointFunction = std::function<double(const ProjPoint&)>;

/// Monte-Carlo lower estimate of sup |g(x) - g(y)| / d(x, y)^alpha. Pair i is
/// drawn from its own stream of the seed, so a smaller sample count examines a
/// prefix of the pairs examined by a larger one. Odd pairs sit at dyadic
/// distances 2^{-k}, k <= 20, to probe the near-diagonal regime.
double holder_seminorm_estimate(const PointFunction& g, double alpha, std::size_t samples, std::uint64_t seed);
double holder_seminorm_estimate(const GreenEvaluator& ev, double alpha, std::size_t samples, std::uint64_t seed);

}  // namespace fekete_dyn
