#include "fekete_dyn/exact_arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fekete_dyn/fekete_lab.hpp"

namespace fekete_dyn {

namespace {

std::vector<std::vector<mpq_class>> sylvester_rows(const std::vector<mpq_class>& p_desc,
                                                   const std::vector<mpq_class>& q_desc) {
  const std::size_t m = p_desc.size() - 1;
  const std::size_t k = q_desc.size() - 1;
  const std::size_t size = m + k;
  std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, mpq_class(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = p_desc[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= k; ++j) s[k + i][i + j] = q_desc[j];
  }
  return s;
}

double log_abs_z(const mpz_class& z) {
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::abs(mant)) + double(e) * std::log(2.0);
}

void add_primes(const mpz_class& n, unsigned long bound, std::vector<mpz_class>& out) {
  if (n == 0) return;
  const Factorization f = factor_integer(n, bound);
  for (const auto& [p, e] : f.primes) {
    (void)e;
    out.push_back(p);
  }
  if (f.cofactor != 1) out.push_back(f.cofactor);
}

}  // namespace

ExactMapLift::ExactMapLift(HomPolyQ f1, HomPolyQ f2) : f1_(std::move(f1)), f2_(std::move(f2)) {
  if (f1_.degree() != f2_.degree()) throw Error(ErrorCode::InvalidArgument, "forms must have equal degree");
  if (f1_.degree() < 2) throw Error(ErrorCode::InvalidArgument, "map degree must be at least 2");
  resultant_ = resultant_exact(f1_, f2_);
}

ExactMapLift ExactMapLift::from_spec(const MapSpec& spec) {
  if (!spec.all_exact()) {
    throw Error(ErrorCode::InvalidArgument, "the exact pipeline needs rational \"p/q\" coefficients");
  }
  auto form = [](const std::vector<Coefficient>& desc) {
    std::vector<mpq_class> v;
    for (const auto& c : desc) v.push_back(c.rational);
    return HomPolyQ::from_descending(std::move(v));
  };
  return ExactMapLift(form(spec.num), form(spec.den));
}

bool ExactMapLift::integral() const {
  auto integral_form = [](const HomPolyQ& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const mpq_class& c) { return c.get_den() == 1; });
  };
  return integral_form(f1_) && integral_form(f2_);
}

RationalMapLift ExactMapLift::to_float(Precision precision) const {
  auto conv = [](const HomPolyQ& p) {
    std::vector<Complex> v;
    for (const auto& c : p.coeffs()) v.emplace_back(c.get_d(), 0.0);
    return HomPolyC(std::move(v));
  };
  return RationalMapLift(conv(f1_), conv(f2_), precision);
}

mpq_class determinant_exact(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Clear denominators row by row, then eliminate over the integers.
  mpz_class scale = 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (const auto& c : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  mpq_class det(mpz_class(sign * a[n - 1][n - 1]), scale);
  det.canonicalize();
  return det;
}

mpq_class resultant_exact(const HomPolyQ& f1, const HomPolyQ& f2) {
  const int d = f1.degree();
  if (d < 1 || f2.degree() != d) throw Error(ErrorCode::InvalidArgument, "resultant needs equal degrees >= 1");
  const mpq_class r = determinant_exact(sylvester_rows(f1.descending(), f2.descending()));
  if (r == 0) throw Error(ErrorCode::DegenerateLift, "F1 and F2 share a projective zero (Res(F) = 0)");
  return r;
}

mpq_class resultant_exact(const ExactMapLift& f) { return f.resultant(); }

HomPolyQ dynatomic_exact(const ExactMapLift& f, int n, long degree_cap) {
  HomPolyQ psi = dynatomic_form(f.forms(), n, degree_cap, 0.0);
  if (psi.degree() != dynatomic_degree(f.degree(), n)) {
    throw Error(ErrorCode::InexactDivision, "exact dynatomic form has the wrong degree");
  }
  if (f.integral()) {
    for (const auto& c : psi.coeffs()) {
      if (c.get_den() != 1) {
        throw Error(ErrorCode::IntegralityViolation, "integral map produced a non-integral dynatomic coefficient");
      }
    }
  }
  return psi;
}

mpq_class univariate_resultant(const std::vector<mpq_class>& p, const std::vector<mpq_class>& q) {
  if (p.empty() || q.empty() || p.back() == 0 || q.back() == 0) {
    throw Error(ErrorCode::InvalidArgument, "resultant needs polynomials with nonzero leading coefficients");
  }
  std::vector<mpq_class> pd(p.rbegin(), p.rend()), qd(q.rbegin(), q.rend());
  if (pd.size() == 1 && qd.size() == 1) return 1;
  return determinant_exact(sylvester_rows(pd, qd));
}

mpq_class disc_exact(const HomPolyQ& psi) {
  if (psi.is_zero()) throw Error(ErrorCode::ZeroInput, "the zero form has no discriminant");
  const int m = psi.degree();
  if (m < 2) return 1;
  // Y -> Y + sX has determinant one and leaves the wedge discriminant alone;
  // pick the smallest s >= 0 with psi(1, s) != 0 so that no root sits at infinity.
  long s = 0;
  auto at_one = [&](long t) {
    mpq_class v = 0, pw = 1;
    for (int j = m; j >= 0; --j) {
      v += psi[j] * pw;
      pw *= t;
    }
    return v;
  };
  while (at_one(s) == 0) ++s;
  const HomPolyQ shifted =
      substitute(psi, FormPair<mpq_class>{HomPolyQ({mpq_class(0), mpq_class(1)}), HomPolyQ({mpq_class(1), mpq_class(s)})});
  std::vector<mpq_class> p(shifted.coeffs().begin(), shifted.coeffs().end());
  std::vector<mpq_class> dp(m);
  for (int j = 1; j <= m; ++j) dp[j - 1] = p[j] * j;
  mpq_class out = univariate_resultant(p, dp) / p[m];
  out.canonicalize();
  return out;
}

int valuation(const mpq_class& q, const mpz_class& p) {
  if (q == 0) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "valuation needs a prime");
  mpz_class tmp;
  const long up = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num_mpz_t(), p.get_mpz_t()));
  const long down = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t()));
  return static_cast<int>(up - down);
}

int valuation(const mpq_class& q, unsigned long p) { return valuation(q, mpz_class(p)); }

Factorization factor_integer(const mpz_class& n_in, unsigned long bound) {
  if (n_in == 0) throw Error(ErrorCode::ZeroInput, "cannot factor zero");
  Factorization f;
  mpz_class n = abs(n_in);
  auto take = [&](unsigned long p) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) return;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    f.primes.emplace_back(mpz_class(p), e);
  };
  take(2);
  for (unsigned long p = 3; p <= bound && n > 1; p += 2) {
    if (mpz_class(p) * p > n) {
      // Whatever remains has no factor below its square root.
      f.primes.emplace_back(n, 1);
      n = 1;
      break;
    }
    take(p);
  }
  if (n > 1) {
    f.cofactor = n;
    f.cofactor_probable_prime = mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
  }
  std::sort(f.primes.begin(), f.primes.end());
  return f;
}

double log_abs(const mpq_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return log_abs_z(x.get_num()) - log_abs_z(x.get_den());
}

long dynatomic_scaling_exponent(int d, int n) {
  long total = 0;
  for (const auto& [l, mu] : moebius_divisors(n)) {
    long geometric = 0, p = 1;
    for (int k = 0; k < l; ++k) {
      geometric += p;
      p *= d;
    }
    total += mu * geometric;
  }
  return total;
}

std::vector<mpz_class> prime_divisors(const mpq_class& q, unsigned long bound) {
  std::vector<mpz_class> out;
  add_primes(q.get_num(), bound, out);
  add_primes(q.get_den(), bound, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ArithReport product_formula_report(const ExactMapLift& f, int n, const PeriodicPointOptions& options) {
  ArithReport r;
  r.n = n;
  const HomPolyQ psi = dynatomic_exact(f, n);
  r.degree = psi.degree();
  r.disc_value = disc_exact(psi);

  // Bad primes: denominators of the coefficients and the primes of Res(F).
  std::vector<mpz_class> bad = prime_divisors(f.resultant());
  for (const HomPolyQ* form : {&f.f1(), &f.f2()}) {
    for (const auto& c : form->coeffs()) {
      if (c == 0) continue;
      add_primes(c.get_den(), 1000000, bad);
    }
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  for (const auto& p : bad) r.bad_primes.push_back(p.get_str());

  if (r.disc_value == 0) {
    r.zero = true;
    r.archimedean_log = -std::numeric_limits<double>::infinity();
    r.good_lift_log = r.archimedean_log;
    r.numeric_energy = r.archimedean_log;
    return r;
  }

  r.archimedean_log = log_abs(r.disc_value);
  const Factorization num = factor_integer(r.disc_value.get_num());
  const Factorization den = factor_integer(r.disc_value.get_den());
  double place_sum = 0.0;
  for (const auto& [p, e] : num.primes) {
    r.valuations[p.get_str()] += e;
    place_sum += e * log_abs_z(p);
  }
  for (const auto& [p, e] : den.primes) {
    r.valuations[p.get_str()] -= e;
    place_sum -= e * log_abs_z(p);
  }
  r.unfactored_numerator = num.cofactor.get_str();
  r.unfactored_denominator = den.cofactor.get_str();
  place_sum += log_abs_z(num.cofactor) - log_abs_z(den.cofactor);
  r.product_formula_residual = place_sum - r.archimedean_log;

  for (const auto& [p, e] : den.primes) {
    (void)e;
    if (!std::binary_search(bad.begin(), bad.end(), p)) {
      throw Error(ErrorCode::IntegralityViolation,
                  "prime " + p.get_str() + " divides the discriminant denominator but is a good prime");
    }
  }
  if (f.integral() && abs(f.resultant()) == 1) {
    r.integrality_checked = true;
    r.integral = r.disc_value.get_den() == 1 && abs(r.disc_value) >= 1;
    if (!r.integral) {
      throw Error(ErrorCode::IntegralityViolation,
                  "good reduction everywhere but disc = " + r.disc_value.get_str() + " is not an integer of size >= 1");
    }
  } else {
    r.integral = r.disc_value.get_den() == 1;
  }

  const int d = f.degree();
  const double shift = double(r.degree - 1) * double(dynatomic_scaling_exponent(d, n)) / double(d);
  r.good_lift_log = r.archimedean_log - shift * log_abs(f.resultant());

  const RationalMapLift lift = f.to_float();
  const Configuration config = periodic_points(lift, n, options);
  const GreenEvaluator ev(normalize_good_lift(lift));
  r.numeric_energy = config_energy(ev, config).pair_energy_sum;
  r.match_error = std::abs(r.good_lift_log - r.numeric_energy);
  return r;
}

}  // namespace fekete_dyn
