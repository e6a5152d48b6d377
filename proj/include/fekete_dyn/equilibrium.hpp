#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fekete_dyn/core_geometry.hpp"

namespace fekete_dyn {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Backward-orbit sampler for the equilibrium measure: every sample walks
/// burn_in random inverse branches from a fixed, non-exceptional start point.
class MeasureSampler {
 public:
  static constexpr int kDefaultBurnIn = 60;

  MeasureSampler(RationalMapLift f, std::uint64_t seed, int burn_in = kDefaultBurnIn,
                 std::optional<ProjPoint> start = std::nullopt);

  const RationalMapLift& map() const { return f_; }
  int burn_in() const { return burn_in_; }
  std::uint64_t seed() const { return seed_; }
  const ProjPoint& start_point() const { return start_; }

  /// The d preimages of w with multiplicity, checked against f(z) = w.
  std::vector<ProjPoint> preimages(const ProjPoint& w) const;

  /// Sample i uses generator stream i + 1 of the seed, so the output does not
  /// depend on the number of worker threads.
  std::vector<ProjPoint> sample(std::size_t count) const;

 private:
  bool exceptional(const ProjPoint& z) const;

  RationalMapLift f_;
  std::uint64_t seed_;
  int burn_in_;
  ProjPoint start_;
};

std::vector<ProjPoint> sample_mu(const MeasureSampler& s, std::size_t count);

/// Sample mean with std_error = sample standard deviation / sqrt(count).
MCEstimate integrate(const std::function<double(const ProjPoint&)>& phi, std::span<const ProjPoint> samples);

MCEstimate mean_and_error(std::span<const double> values);

enum class Pairing {
  /// Zipped pairs (x_i, y_i) of two independent sample streams.
  Independent,
  /// First argument random samples, second a list of atoms: each sample is
  /// averaged against every atom.
  AgainstAtoms,
  /// Both arguments are atom lists; coincident pairs are skipped. Exact.
  Atoms,
};

/// Estimate of (mu, nu) = -int int log d(x, y) dmu(x) dnu(y). Optional weights
/// apply to the atoms of the second argument.
MCEstimate mutual_energy_mc(std::span<const ProjPoint> mu, std::span<const ProjPoint> nu, Pairing pairing,
                            std::span<const double> nu_weights = {});

struct EnergyBoundInputs {
  std::size_t n = 0;
  double pair_energy_sum = 0.0;
  double alpha = 1.0;
  double holder_seminorm = 0.0;
};

/// A = -Sigma / (n (n-1)) + (2 ||g|| + 2 + max(2, 1/alpha)) log(n) / n.
double frl_bound_A(const EnergyBoundInputs& inp);

/// eta(n^{-max(2, 1/alpha)}) + sqrt(A) * L for an L-Lipschitz observable.
double proposition_bound(double A, double alpha, std::size_t n, double lipschitz);

/// The radius eps = n^{-1/min(alpha, 1/2)} at which the bound is evaluated.
double regularization_radius(double alpha, std::size_t n);

/// Point on the circle of spherical radius eps around z.
ProjPoint point_on_circle(const ProjPoint& z, double eps, double theta);

/// Monte-Carlo estimate of (nu_eps, nu_eps) where nu_eps averages the uniform
/// measures on the spherical circles of radius eps about the atoms.
MCEstimate regularized_energy_mc(std::span<const ProjPoint> atoms, double eps, std::size_t draws, std::uint64_t seed);

/// -2/(n(n-1)) sum_{i<j} log d(z_i, z_j) - log(eps)/n + 2 sqrt(eps).
double regularized_energy_bound(std::span<const ProjPoint> atoms, double eps);

/// (rho, rho) for rho = nu_A - nu_B smoothed on circles of radius eps, with
/// self-pairs of an atom replaced by -log eps.
MCEstimate smoothed_difference_energy(std::span<const ProjPoint> a, std::span<const ProjPoint> b, double eps,
                                      std::size_t draws, std::uint64_t seed);

}  // namespace fekete_dyn
