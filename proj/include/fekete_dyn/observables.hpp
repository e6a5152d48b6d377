#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fekete_dyn/core_geometry.hpp"

namespace fekete_dyn {

class GreenEvaluator;

/// A test function on the projective line together with its Lipschitz
/// constant for the spherical distance; the modulus of continuity used in
/// bounds is eta(t) = lipschitz * t.
struct Observable {
  std::string name;
  std::function<double(const ProjPoint&)> fn;
  double lipschitz = 0.0;
  /// False when the constant is an empirical lower estimate.
  bool lipschitz_certified = true;

  double operator()(const ProjPoint& z) const { return fn(z); }
};

/// Parses "inf", "p/q", decimals, and complex literals such as "0.5-0.25i".
ProjPoint parse_point(const std::string& text);

/// Registry lookup: "re_chordal", "im_chordal", "dist_to(p)", "potential",
/// "one". The potential needs a good-lift evaluator; its Lipschitz constant
/// is the empirical Hoelder estimate at alpha = 1 drawn with `seed`.
Observable make_observable(const std::string& name, const GreenEvaluator* ev = nullptr, std::uint64_t seed = 0);

/// Comma-separated list of registry names; parentheses protect commas.
std::vector<std::string> split_observable_list(const std::string& list);

}  // namespace fekete_dyn
