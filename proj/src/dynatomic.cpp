#include "fekete_dyn/dynatomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <tuple>
#include <numbers>
#include <numeric>

#include <boost/multiprecision/float128.hpp>

#include "fekete_dyn/parallel.hpp"
#include "fekete_dyn/root_finding.hpp"

namespace fekete_dyn {

int moebius(long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "moebius needs n >= 1");
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::pair<int, int>> moebius_divisors(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  std::vector<std::pair<int, int>> out;
  for (int l = 1; l <= n; ++l) {
    if (n % l != 0) continue;
    const int mu = moebius(n / l);
    if (mu != 0) out.emplace_back(l, mu);
  }
  return out;
}

long dynatomic_degree(int d, int n) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  constexpr long kLimit = std::numeric_limits<long>::max() / 4;
  long total = 0;
  for (const auto& [l, mu] : moebius_divisors(n)) {
    long p = 1;
    for (int k = 0; k < l; ++k) {
      if (p > kLimit / d) throw Error(ErrorCode::InvalidArgument, "d^n overflows a 64-bit count");
      p *= d;
    }
    total += mu * (p + 1);
  }
  return total;
}

DynatomicPoly dynatomic_poly(const RationalMapLift& f, int n, long degree_cap) {
  const auto forms = f.forms();
  const long expected = dynatomic_degree(f.degree(), n);
  long top = 1;
  for (int k = 0; k < n; ++k) top *= f.degree();
  const double rel_tol = f.precision().tolerance() * static_cast<double>(top + 1);
  DynatomicPoly out{f, n, dynatomic_form(forms, n, degree_cap, rel_tol), false};
  if (out.poly.degree() != expected) {
    throw Error(ErrorCode::InexactDivision, "dynatomic form has the wrong degree");
  }
  return out;
}

namespace {

using boost::multiprecision::float128;

/// Pointwise Psi_{F,n} along a line z + t dz. The lift tuple is rescaled by a
/// positive real after each application of F; the logarithm of the
/// accumulated scale restores absolute values.
template <class R>
class PsiEvaluator {
 public:
  using C = std::complex<R>;
  static constexpr int kMaxDegree = 64;

  PsiEvaluator(const RationalMapLift& f, int n) : d_(f.degree()), n_(n), exps_(n, 0) {
    if (d_ > kMaxDegree) throw Error(ErrorCode::InvalidArgument, "map degree above 64 is unsupported");
    for (int j = 0; j <= d_; ++j) {
      a_[j] = C(R(f.f1()[j].real()), R(f.f1()[j].imag()));
      b_[j] = C(R(f.f2()[j].real()), R(f.f2()[j].imag()));
    }
    for (const auto& [l, mu] : moebius_divisors(n)) exps_[l - 1] = mu;
    degree_ = dynatomic_degree(d_, n);
  }

  struct Jet {
    C log_derivative;
    R log_abs;
    R arg;
  };

  Jet evaluate(std::array<C, 2> z, std::array<C, 2> dz) const {
    using std::abs;
    using std::arg;
    using std::log;
    const R scale = std::max(abs(z[0]), abs(z[1]));
    for (int i = 0; i < 2; ++i) {
      z[i] /= scale;
      dz[i] /= scale;
    }
    Jet out{C(0), R(degree_) * log(scale), R(0)};
    C p = z[0], q = z[1], dp = dz[0], dq = dz[1];
    R logt(0);
    std::array<C, kMaxDegree + 1> px, py;
    for (int l = 1; l <= n_; ++l) {
      px[0] = py[0] = C(1);
      for (int k = 1; k <= d_; ++k) {
        px[k] = px[k - 1] * p;
        py[k] = py[k - 1] * q;
      }
      C v1(0), v2(0), x1(0), x2(0), y1(0), y2(0);
      for (int j = 0; j <= d_; ++j) {
        const C m = px[j] * py[d_ - j];
        v1 += a_[j] * m;
        v2 += b_[j] * m;
        if (j > 0) {
          const C mx = R(j) * px[j - 1] * py[d_ - j];
          x1 += a_[j] * mx;
          x2 += b_[j] * mx;
        }
        if (j < d_) {
          const C my = R(d_ - j) * px[j] * py[d_ - j - 1];
          y1 += a_[j] * my;
          y2 += b_[j] * my;
        }
      }
      C np = v1, nq = v2;
      C ndp = x1 * dp + y1 * dq;
      C ndq = x2 * dp + y2 * dq;
      const R s = std::max(abs(np), abs(nq));
      np /= s;
      nq /= s;
      ndp /= s;
      ndq /= s;
      logt = R(d_) * logt + log(s);
      if (const int e = exps_[l - 1]; e != 0) {
        const C phi = np * z[1] - nq * z[0];
        const C dphi = ndp * z[1] + np * dz[1] - ndq * z[0] - nq * dz[0];
        out.log_derivative += R(e) * dphi / phi;
        out.log_abs += R(e) * (log(abs(phi)) + logt);
        out.arg += R(e) * arg(phi);
      }
      p = np;
      q = nq;
      dp = ndp;
      dq = ndq;
    }
    return out;
  }

  /// Newton ratio Psi / (d Psi / d zeta) in the chart zeta -> U (zeta, 1).
  C newton(const std::array<std::array<C, 2>, 2>& u, C zeta) const {
    const std::array<C, 2> z{u[0][0] * zeta + u[0][1], u[1][0] * zeta + u[1][1]};
    const std::array<C, 2> dz{u[0][0], u[1][0]};
    const C ld = evaluate(z, dz).log_derivative;
    if (!(std::isfinite(static_cast<double>(ld.real())) && std::isfinite(static_cast<double>(ld.imag())))) {
      return C(0);
    }
    return ld == C(0) ? C(1) : C(1) / ld;
  }

  long degree() const { return degree_; }

 private:
  int d_;
  int n_;
  long degree_ = 0;
  std::array<C, kMaxDegree + 1> a_{}, b_{};
  std::vector<int> exps_;
};

template <class R>
std::array<std::array<std::complex<R>, 2>, 2> convert(const Mat2& u) {
  std::array<std::array<std::complex<R>, 2>, 2> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = std::complex<R>(R(u[i][j].real()), R(u[i][j].imag()));
  }
  return out;
}

/// Newton polishing of a simple root in a wider real type. Returns the
/// polished chart coordinate and the final spherical correction.
template <class R>
std::pair<Complex, double> polish(const PsiEvaluator<R>& ev, const Mat2& u, Complex zeta0, R eps) {
  using C = std::complex<R>;
  using std::abs;
  const auto uu = convert<R>(u);
  C zeta(R(zeta0.real()), R(zeta0.imag()));
  R last = std::numeric_limits<R>::infinity();
  for (int it = 0; it < 8; ++it) {
    const C w = ev.newton(uu, zeta);
    const R step = abs(w) / (R(1) + std::norm(zeta));
    if (!(step < R(2) * last)) break;
    zeta -= w;
    last = step;
    if (step <= eps) break;
  }
  const R res = abs(ev.newton(uu, zeta)) / (R(1) + std::norm(zeta));
  return {Complex(static_cast<double>(zeta.real()), static_cast<double>(zeta.imag())), static_cast<double>(res)};
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

double chart_dist(Complex a, Complex b) {
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

ProjPoint from_chart(const Mat2& u, Complex zeta, int bits) {
  return ProjPoint(act(u, {zeta, Complex(1.0)}), bits);
}

std::vector<std::vector<int>> collect(DisjointSets& sets, std::size_t m) {
  std::vector<std::vector<int>> out;
  std::vector<int> index_of(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = sets.find(i);
    if (index_of[r] < 0) {
      index_of[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[index_of[r]].push_back(static_cast<int>(i));
  }
  return out;
}

struct Cluster {
  std::vector<Complex> members;
  double residual = -1.0;
  bool converged = true;
  bool refined = false;
};

/// Aberth iteration in 113-bit arithmetic on the members of one group; the
/// other approximations stay fixed and only shape the correction term.
std::vector<Complex> refine_group(const PsiEvaluator<float128>& ev, const Mat2& u, const std::vector<Complex>& all,
                                  const std::vector<int>& group, bool& converged) {
  using C = std::complex<float128>;
  const auto uu = convert<float128>(u);
  const std::size_t k = group.size();
  std::vector<C> z(k);
  for (std::size_t a = 0; a < k; ++a) {
    // A small deterministic spread keeps coincident double values apart.
    const Complex shift = std::polar(1e-13 * (1.0 + std::abs(all[group[a]])), 2.0 * std::numbers::pi * a / k);
    z[a] = C(float128(all[group[a]].real() + shift.real()), float128(all[group[a]].imag() + shift.imag()));
  }
  std::vector<char> in_group(all.size(), 0);
  for (const int i : group) in_group[i] = 1;
  std::vector<C> outside(k, C(0));
  for (std::size_t a = 0; a < k; ++a) {
    const Complex za = all[group[a]];
    Complex s(0.0);
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (!in_group[j]) s += 1.0 / (za - all[j]);
    }
    outside[a] = C(float128(s.real()), float128(s.imag()));
  }
  const float128 tight = 1e-30;
  std::vector<float128> best(k, float128(1e300));
  std::vector<int> best_at(k, 0);
  converged = false;
  for (int it = 1; it <= 400; ++it) {
    bool done = true;
    std::vector<C> next = z;
    for (std::size_t a = 0; a < k; ++a) {
      const C nr = ev.newton(uu, z[a]);
      C s = outside[a];
      for (std::size_t b = 0; b < k; ++b) {
        if (b != a) s += C(1) / (z[a] - z[b]);
      }
      const C w = nr / (C(1) - nr * s);
      const float128 e = abs(w) / (float128(1) + std::norm(z[a]));
      if (boost::multiprecision::isfinite(e)) next[a] = z[a] - w;
      if (e < best[a] / 2) {
        best[a] = e;
        best_at[a] = it;
      }
      if (!(e <= tight || it - best_at[a] >= 12)) done = false;
    }
    z.swap(next);
    if (done) {
      converged = true;
      break;
    }
  }
  std::vector<Complex> out(k);
  for (std::size_t a = 0; a < k; ++a) {
    out[a] = Complex(static_cast<double>(z[a].real()), static_cast<double>(z[a].imag()));
  }
  return out;
}

}  // namespace

PsiJet evaluate_psi(const RationalMapLift& f, int n, const Lift& z, const Lift& dz) {
  const PsiEvaluator<double> ev(f, n);
  const auto j = ev.evaluate(z, dz);
  return {j.log_derivative, j.log_abs, std::remainder(j.arg, 2.0 * std::numbers::pi)};
}

long Configuration::total_multiplicity() const { return std::accumulate(multiplicities.begin(), multiplicities.end(), 0L); }

bool Configuration::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

Configuration make_configuration(std::vector<ProjPoint> points, std::string provenance) {
  Configuration c;
  const std::size_t m = points.size();
  c.points = std::move(points);
  c.multiplicities.assign(m, 1);
  c.provenance = std::move(provenance);
  c.residuals.assign(m, 0.0);
  c.converged.assign(m, true);
  c.exact_periods.assign(m, 0);
  c.multipliers.assign(m, Complex(0.0));
  return c;
}

Complex cycle_multiplier(const RationalMapLift& f, const ProjPoint& z, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "cycle length must be positive");
  const Lift base = z.unit_lift();
  Lift w = base;
  double logt = 0.0, sum_logt = 0.0, logdet = 0.0, argdet = 0.0;
  for (int j = 0; j < k; ++j) {
    sum_logt += logt;
    const Mat2 jac = f.jacobian(w);
    const Complex det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    logdet += std::log(std::abs(det));
    argdet += std::arg(det);
    const Lift v = f.apply(w);
    const double s = norm(v);
    w = {v[0] / s, v[1] / s};
    logt = f.degree() * logt + std::log(s);
  }
  // After k steps W is proportional to the base lift: F^k(Z) = c Z with c = t_k <W, Z>.
  const Complex rho = w[0] * std::conj(base[0]) + w[1] * std::conj(base[1]);
  const double log_deg = k * std::log(static_cast<double>(f.degree()));
  const double log_abs =
      2.0 * (f.degree() - 1) * sum_logt + logdet - log_deg - 2.0 * logt - 2.0 * std::log(std::abs(rho));
  const double arg = argdet - 2.0 * std::arg(rho);
  return std::polar(std::exp(log_abs), arg);
}

Configuration periodic_points(const RationalMapLift& f, int n, const PeriodicPointOptions& options) {
  const PsiEvaluator<double> ev(f, n);
  const int m = static_cast<int>(ev.degree());
  const int bits = options.precision.bits;
  const Mat2 u = random_unitary(options.seed ^ (0x9E37ULL * static_cast<std::uint64_t>(n)));
  const auto uu = convert<double>(u);

  AberthOptions aopt;
  aopt.max_iterations = options.max_iterations;
  const AberthResult ar = aberth([&](Complex zeta) { return ev.newton(uu, zeta); }, circle_start(m, 1.0), aopt);

  std::vector<Complex> zeta = ar.roots;
  std::vector<double> res(m);
  parallel_for(m, [&](std::size_t k) {
    res[k] = std::abs(ev.newton(uu, zeta[k])) / (1.0 + std::norm(zeta[k]));
  });

  // Candidate groups: single linkage at radius tol^(1/2).
  const double radius = std::sqrt(options.tol);
  DisjointSets sets(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (chart_dist(zeta[i], zeta[j]) <= radius) sets.unite(i, j);
    }
  }
  std::vector<std::vector<int>> groups = collect(sets, m);

  // A genuine k-fold root is only resolved to about eps^(1/k), so its
  // approximations contract sharply when re-solved in 113-bit arithmetic,
  // while distinct simple roots keep their separation.
  std::vector<Cluster> clusters;
  std::unique_ptr<PsiEvaluator<float128>> ev_q;
  if (bits > 64 || std::any_of(groups.begin(), groups.end(), [](const auto& g) { return g.size() > 1; })) {
    ev_q = std::make_unique<PsiEvaluator<float128>>(f, n);
  }
  for (const auto& g : groups) {
    if (g.size() == 1) {
      clusters.push_back({{zeta[g.front()]}, res[g.front()], ar.converged[g.front()], false});
      continue;
    }
    bool conv = true;
    const std::vector<Complex> refined = refine_group(*ev_q, u, zeta, g, conv);
    double wide = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) wide = std::max(wide, chart_dist(zeta[g[a]], zeta[g[b]]));
    }
    const double link = std::max(1e-2 * wide, 1e-14);
    DisjointSets sub(g.size());
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        if (chart_dist(refined[a], refined[b]) <= link) sub.unite(a, b);
      }
    }
    for (const auto& part : collect(sub, g.size())) {
      Cluster c;
      for (const int a : part) c.members.push_back(refined[a]);
      c.converged = conv;
      c.refined = true;
      double spread = 0.0;
      for (std::size_t a = 0; a < c.members.size(); ++a) {
        for (std::size_t b = a + 1; b < c.members.size(); ++b) {
          spread = std::max(spread, chart_dist(c.members[a], c.members[b]));
        }
      }
      c.residual = c.members.size() > 1 ? std::max(spread, 1e-30) : -1.0;
      clusters.push_back(std::move(c));
    }
  }

  Configuration out;
  out.provenance = "Per_" + std::to_string(n) + "(f)";
  const std::size_t nc = clusters.size();
  out.points.resize(nc);
  out.multiplicities.resize(nc);
  out.residuals.resize(nc);
  out.converged.resize(nc);
  out.exact_periods.assign(nc, n);
  out.multipliers.assign(nc, Complex(0.0));

  std::unique_ptr<PsiEvaluator<long double>> ev_ld;
  if (bits > 53 && bits <= 64) ev_ld = std::make_unique<PsiEvaluator<long double>>(f, n);

  parallel_for(nc, [&](std::size_t c) {
    const Cluster& cl = clusters[c];
    const int k = static_cast<int>(cl.members.size());
    Complex centre(0.0);
    for (const Complex z : cl.members) centre += z;
    centre /= double(k);
    double r = cl.residual;
    if (k == 1) {
      if (ev_q && (bits > 64 || cl.refined)) {
        std::tie(centre, r) = polish(*ev_q, u, centre, float128(std::ldexp(1.0, 4 - std::max(bits, 64))));
      } else if (ev_ld) {
        std::tie(centre, r) = polish(*ev_ld, u, centre, std::ldexp(1.0L, 4 - bits));
      }
    }
    ProjPoint p = from_chart(u, centre, bits);
    if (std::abs(p.x2()) <= std::max(16.0 * r, 8.0 * std::numeric_limits<double>::epsilon())) {
      p = ProjPoint::infinity(bits);
    }
    out.points[c] = p;
    out.multiplicities[c] = k;
    out.residuals[c] = r;
    out.converged[c] = cl.converged;
  });

  const double period_tol = std::sqrt(options.tol);
  for (std::size_t c = 0; c < nc; ++c) {
    const ProjPoint& p = out.points[c];
    for (int l = 1; l < n; ++l) {
      if (n % l != 0) continue;
      ProjPoint q = p;
      for (int s = 0; s < l; ++s) q = f(q);
      if (spherical_dist(q, p) <= period_tol) {
        out.exact_periods[c] = l;
        break;
      }
    }
    out.multipliers[c] = cycle_multiplier(f, p, out.exact_periods[c]);
    if (out.multiplicities[c] > 1) {
      out.warnings.push_back("ConditionWarning: cluster of multiplicity " + std::to_string(out.multiplicities[c]) +
                             " at point " + std::to_string(c) + "; disc is numerically zero there");
    }
    if (out.exact_periods[c] < n) {
      out.warnings.push_back("LowerPeriod: point " + std::to_string(c) + " has exact period " +
                             std::to_string(out.exact_periods[c]));
    }
    if (!out.converged[c]) {
      out.warnings.push_back("RootFindingDiverged: point " + std::to_string(c) + " did not converge");
    }
  }
  return out;
}

namespace {

Complex probe(int i) {
  static constexpr double kRe[] = {0.3141, -0.7071, 1.6180, -0.2718, 0.5772};
  static constexpr double kIm[] = {0.7182, 0.4142, -0.5772, -1.4142, 0.1618};
  return {kRe[i], kIm[i]};
}

}  // namespace

DiscValue disc(const HomPolyC& psi, const Configuration& roots) {
  const int m = psi.degree();
  if (roots.total_multiplicity() != m) {
    throw Error(ErrorCode::IncompleteRoots, "multiplicities sum to " + std::to_string(roots.total_multiplicity()) +
                                                 " but the form has degree " + std::to_string(m));
  }
  DiscValue out;
  if (std::any_of(roots.multiplicities.begin(), roots.multiplicities.end(), [](int k) { return k > 1; })) {
    out.value = Complex(0.0);
    out.log_abs = -std::numeric_limits<double>::infinity();
    out.zero = true;
    return out;
  }
  std::vector<Lift> z;
  z.reserve(m);
  for (const auto& p : roots.points) z.push_back(p.unit_lift());

  // Psi = lambda prod (X,Y) ^ Z_j; evaluate at the probe farthest from the roots.
  Lift best{};
  double best_sep = -1.0;
  for (int i = 0; i < 5; ++i) {
    const Lift cand = ProjPoint::affine(probe(i)).unit_lift();
    double sep = 1.0;
    for (const auto& zj : z) sep = std::min(sep, spherical_dist(cand, zj));
    if (sep > best_sep) {
      best_sep = sep;
      best = cand;
    }
  }
  const Complex pv = psi.evaluate(best[0], best[1]);
  double log_lambda = std::log(std::abs(pv));
  double arg_lambda = std::arg(pv);
  for (const auto& zj : z) {
    const Complex w = wedge(best, zj);
    log_lambda -= std::log(std::abs(w));
    arg_lambda -= std::arg(w);
  }

  double log_abs = 0.0, arg = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Complex w = wedge(z[i], z[j]);
      log_abs += 2.0 * std::log(std::abs(w));
      arg += 2.0 * std::arg(w);
    }
  }
  const long pairs = static_cast<long>(m) * (m - 1) / 2;
  if (pairs % 2 == 1) arg += std::numbers::pi;
  // The scalar lambda sits on the first lift, which enters 2(m-1) wedges.
  log_abs += 2.0 * (m - 1) * log_lambda;
  arg += 2.0 * (m - 1) * arg_lambda;
  out.log_abs = log_abs;
  out.arg = std::remainder(arg, 2.0 * std::numbers::pi);
  out.value = std::polar(std::exp(log_abs), out.arg);
  out.zero = false;
  return out;
}

DiscValue disc(const DynatomicPoly& psi, const Configuration& roots) { return disc(psi.poly, roots); }

}  // namespace fekete_dyn
