#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fekete_dyn/core_geometry.hpp"

namespace fekete_dyn {

struct AberthOptions {
  /// Iteration budget; zero means 200 * degree.
  int max_iterations = 0;
  /// A root whose spherical correction has stopped shrinking is accepted once
  /// the correction is below this bound (multiple roots stall near sqrt(eps)).
  double stall_tol = 1e-6;
  int stall_window = 8;
};

struct AberthResult {
  std::vector<Complex> roots;
  /// Last Newton correction |N| / (1 + |z|^2), a spherical error estimate.
  std::vector<double> corrections;
  std::vector<bool> converged;
  int iterations = 0;
};

/// Simultaneous Aberth-Ehrlich iteration for a polynomial of exact degree
/// init.size(), given only its Newton ratio p/p'. No deflation.
AberthResult aberth(const std::function<Complex(Complex)>& newton_ratio, std::vector<Complex> init,
                    const AberthOptions& options = {});

/// m points on the circle |z| = radius with a phase offset.
std::vector<Complex> circle_start(int m, double radius, double phase = 0.4);

/// Random element of SU(2): an isometry of the spherical distance.
Mat2 random_unitary(std::uint64_t seed);

/// All projective roots of a binary form, with multiplicity, as unit lifts.
/// Degrees one and two are solved in closed form; higher degrees use Aberth
/// in a randomly rotated chart so that no root sits at the chart's infinity.
std::vector<Lift> roots_of_form(const HomPolyC& p, std::uint64_t seed = 0);

}  // namespace fekete_dyn
