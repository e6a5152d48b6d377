#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fekete_dyn/dynatomic.hpp"
#include "fekete_dyn/map_spec.hpp"

namespace fekete_dyn {

using ExactRational = mpq_class;

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool exact = true;
  static double magnitude(const mpq_class& c) { return std::abs(c.get_d()); }
};

using HomPolyQ = HomPoly<mpq_class>;

/// A lift with rational coefficients. Only the nonvanishing of the resultant
/// is required; the lift need not be good.
class ExactMapLift {
 public:
  ExactMapLift(HomPolyQ f1, HomPolyQ f2);
  static ExactMapLift from_spec(const MapSpec& spec);

  int degree() const { return f1_.degree(); }
  const HomPolyQ& f1() const { return f1_; }
  const HomPolyQ& f2() const { return f2_; }
  FormPair<mpq_class> forms() const { return {f1_, f2_}; }
  const mpq_class& resultant() const { return resultant_; }
  bool integral() const;

  RationalMapLift to_float(Precision precision = {}) const;

 private:
  HomPolyQ f1_, f2_;
  mpq_class resultant_;
};

/// Determinant of a rational matrix by fraction-free (Bareiss) elimination.
mpq_class determinant_exact(std::vector<std::vector<mpq_class>> m);

/// Exact 2d x 2d resultant; throws DegenerateLift when it vanishes.
mpq_class resultant_exact(const HomPolyQ& f1, const HomPolyQ& f2);
mpq_class resultant_exact(const ExactMapLift& f);

/// Psi_{F,n} over Q; integer coefficients are asserted when F is integral.
HomPolyQ dynatomic_exact(const ExactMapLift& f, int n, long degree_cap = kDefaultDegreeCap);

/// Resultant of univariate polynomials given by ascending coefficients.
mpq_class univariate_resultant(const std::vector<mpq_class>& p, const std::vector<mpq_class>& q);

/// prod_{i != j} Z_i ^ Z_j for lifts with psi = prod (X,Y) ^ Z_j. After a
/// unimodular change of variables making the X^m coefficient c nonzero this
/// equals Res(p, p') / c with p(z) = psi(z, 1).
mpq_class disc_exact(const HomPolyQ& psi);

/// v_p(q); throws ZeroInput for q = 0.
int valuation(const mpq_class& q, const mpz_class& p);
int valuation(const mpq_class& q, unsigned long p);

struct Factorization {
  /// Primes found by trial division, ascending, with exponents.
  std::vector<std::pair<mpz_class, int>> primes;
  /// Unfactored part (1 when complete).
  mpz_class cofactor = 1;
  bool cofactor_probable_prime = false;
};

/// Trial division up to `bound`, then a probable-prime test on the cofactor.
Factorization factor_integer(const mpz_class& n, unsigned long bound = 1000000);

/// log |x| for an arbitrary-size rational without overflow.
double log_abs(const mpq_class& x);

struct ArithReport {
  int n = 0;
  long degree = 0;
  mpq_class disc_value;
  std::vector<std::string> bad_primes;
  /// prime -> v_p(disc), over all primes found in numerator and denominator.
  std::map<std::string, int> valuations;
  std::string unfactored_numerator = "1";
  std::string unfactored_denominator = "1";
  double archimedean_log = 0.0;
  /// sum_p v_p log p + log(unfactored parts) - log|disc|; zero up to rounding.
  double product_formula_residual = 0.0;
  /// log|disc| rescaled to the good lift: lifts with Res != 1 shift it by
  /// -((d_n - 1) s_n / d) log|Res F| with s_n = sum mu(n/l)(d^l - 1)/(d - 1).
  double good_lift_log = 0.0;
  double numeric_energy = 0.0;
  double match_error = 0.0;
  bool integral = false;
  bool integrality_checked = false;
  bool zero = false;
};

/// Exponent s_n with Psi_{cF,n} = c^{s_n} Psi_{F,n}.
long dynatomic_scaling_exponent(int d, int n);

/// Exact pipeline for one period together with the numeric energy bridge.
ArithReport product_formula_report(const ExactMapLift& f, int n, const PeriodicPointOptions& options = {});

std::vector<mpz_class> prime_divisors(const mpq_class& q, unsigned long bound = 1000000);

}  // namespace fekete_dyn
