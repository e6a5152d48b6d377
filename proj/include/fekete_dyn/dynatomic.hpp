#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fekete_dyn/core_geometry.hpp"

namespace fekete_dyn {

int moebius(long n);

/// d_n = sum_{k | n} mu(n/k) (d^k + 1)
long dynatomic_degree(int d, int n);

/// Pairs (l, mu(n/l)) over the divisors l of n with nonzero Moebius value.
std::vector<std::pair<int, int>> moebius_divisors(int n);

/// Psi_{F,n} = prod_{l | n} (F^l wedge id)^{mu(n/l)} for forms over any ring
/// with ScalarTraits; negative exponents are exact divisions.
template <class T>
HomPoly<T> dynatomic_form(const FormPair<T>& f, int n, long degree_cap, double rel_tol) {
  const auto iterates = iterate_all(f, n, degree_cap);
  auto num = HomPoly<T>::monomial(0, 0);
  auto den = HomPoly<T>::monomial(0, 0);
  for (const auto& [l, mu] : moebius_divisors(n)) {
    const auto w = wedge_with_identity(iterates[l - 1]);
    if (mu > 0) {
      num = num * w;
    } else {
      den = den * w;
    }
  }
  return divide_exact(num, den, rel_tol);
}

struct DynatomicPoly {
  RationalMapLift base_map;
  int n = 1;
  HomPolyC poly;
  bool exact = false;
};

DynatomicPoly dynatomic_poly(const RationalMapLift& f, int n, long degree_cap = kDefaultDegreeCap);

/// Value data of Psi_{F,n} at a point Z(t) = z + t dz, computed by iterating
/// the lift pointwise with renormalization at every step (no coefficients).
struct PsiJet {
  Complex log_derivative;  // d/dt log Psi at t = 0
  double log_abs = 0.0;    // log |Psi(z)|
  double arg = 0.0;        // arg Psi(z)
};

PsiJet evaluate_psi(const RationalMapLift& f, int n, const Lift& z, const Lift& dz = {Complex(0.0), Complex(0.0)});

struct Configuration {
  std::vector<ProjPoint> points;
  std::vector<int> multiplicities;
  std::string provenance;
  std::vector<double> residuals;
  std::vector<bool> converged;
  /// Smallest k | n with f^k(z) = z; equals n for roots of exact period n.
  std::vector<int> exact_periods;
  /// Multiplier of f^k along the cycle, k the exact period.
  std::vector<Complex> multipliers;
  std::vector<std::string> warnings;

  std::size_t size() const { return points.size(); }
  long total_multiplicity() const;
  bool all_converged() const;
};

struct PeriodicPointOptions {
  double tol = 1e-9;
  Precision precision{};
  std::uint64_t seed = 0x70657269ULL;
  int max_iterations = 0;
};

/// All d_n roots of Psi_{F,n} on the projective line, clustered into
/// multiplicities. The root search runs in a randomly rotated chart, so roots
/// at infinity are found like any other and then snapped onto (1, 0).
Configuration periodic_points(const RationalMapLift& f, int n, const PeriodicPointOptions& options = {});

/// Configuration from an explicit point list, all multiplicities one.
Configuration make_configuration(std::vector<ProjPoint> points, std::string provenance);

/// Multiplier of f^k at a k-periodic point z, computed chart-free from
/// det D(F^k) and the eigenvalue of F^k along the lift.
Complex cycle_multiplier(const RationalMapLift& f, const ProjPoint& z, int k);

struct DiscValue {
  Complex value;
  double log_abs = 0.0;
  double arg = 0.0;
  bool zero = false;
};

/// prod_{i != j} Z_i wedge Z_j over lifts satisfying Psi = prod (X,Y) wedge Z_j.
DiscValue disc(const HomPolyC& psi, const Configuration& roots);
DiscValue disc(const DynatomicPoly& psi, const Configuration& roots);

}  // namespace fekete_dyn
