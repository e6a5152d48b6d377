#include "fekete_dyn/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fekete_dyn/parallel.hpp"

namespace fekete_dyn {

namespace {

constexpr double kTightTol = 4.0 * std::numeric_limits<double>::epsilon();

double spherical_scale(Complex z) { return 1.0 + std::norm(z); }

}  // namespace

std::vector<Complex> circle_start(int m, double radius, double phase) {
  std::vector<Complex> out(m);
  for (int k = 0; k < m; ++k) {
    out[k] = std::polar(radius, 2.0 * std::numbers::pi * k / m + phase);
  }
  return out;
}

AberthResult aberth(const std::function<Complex(Complex)>& newton_ratio, std::vector<Complex> init,
                    const AberthOptions& options) {
  const std::size_t m = init.size();
  AberthResult result;
  result.roots = std::move(init);
  result.corrections.assign(m, std::numeric_limits<double>::infinity());
  result.converged.assign(m, false);
  if (m == 0) return result;

  const int budget = options.max_iterations > 0 ? options.max_iterations : 200 * static_cast<int>(m);
  std::vector<double> best(m, std::numeric_limits<double>::infinity());
  std::vector<int> best_at(m, 0);
  std::vector<Complex> next(m);

  for (int it = 1; it <= budget; ++it) {
    result.iterations = it;
    const auto& z = result.roots;
    parallel_for(m, [&](std::size_t k) {
      next[k] = z[k];
      if (result.converged[k]) return;
      const Complex n = newton_ratio(z[k]);
      if (n == Complex(0.0)) {
        result.corrections[k] = 0.0;
        return;
      }
      Complex s(0.0);
      for (std::size_t j = 0; j < m; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const Complex w = n / (1.0 - n * s);
      if (std::isfinite(w.real()) && std::isfinite(w.imag())) next[k] = z[k] - w;
      result.corrections[k] = std::abs(w) / spherical_scale(z[k]);
    });
    result.roots.swap(next);

    bool all = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (result.converged[k]) continue;
      const double e = result.corrections[k];
      if (e < 0.5 * best[k]) {
        best[k] = e;
        best_at[k] = it;
      }
      if (e <= kTightTol || (it - best_at[k] >= options.stall_window && best[k] <= options.stall_tol)) {
        result.converged[k] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  return result;
}

Mat2 random_unitary(std::uint64_t seed) {
  auto rng = stream_rng(seed, 0x5u);
  std::normal_distribution<double> g;
  Complex a(g(rng), g(rng));
  Complex b(g(rng), g(rng));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  return {{{a, -std::conj(b)}, {b, std::conj(a)}}};
}

namespace {

Lift unit(const Lift& z) {
  const double n = norm(z);
  return {z[0] / n, z[1] / n};
}

std::vector<Lift> quadratic_roots(const HomPolyC& p) {
  // A X^2 + B X Y + C Y^2 with the cancellation-free pairing q = -(B + s sqrt(D))/2.
  const Complex a = p[2], b = p[1], c = p[0];
  const Complex sq = std::sqrt(b * b - 4.0 * a * c);
  const Complex q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
  if (q == Complex(0.0)) {
    // B = 0 and AC = 0: a double root at 0 or at infinity.
    const Lift r = (a != Complex(0.0)) ? Lift{Complex(0.0), Complex(1.0)} : Lift{Complex(1.0), Complex(0.0)};
    return {r, r};
  }
  return {unit({q, a}), unit({c, q})};
}

}  // namespace

std::vector<Lift> roots_of_form(const HomPolyC& p, std::uint64_t seed) {
  const int m = p.degree();
  if (p.max_magnitude() == 0.0) throw Error(ErrorCode::InvalidArgument, "the zero form has no root set");
  if (m == 0) return {};
  if (m == 1) return {unit({-p[0], p[1]})};
  if (m == 2) return quadratic_roots(p);

  const Mat2 u = random_unitary(seed);
  const auto rotated = substitute(p, FormPair<Complex>{HomPolyC({u[0][1], u[0][0]}), HomPolyC({u[1][1], u[1][0]})});
  std::vector<Complex> c(rotated.coeffs().begin(), rotated.coeffs().end());
  auto newton = [&c](Complex z) {
    Complex v(0.0), dv(0.0);
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) {
      dv = dv * z + v;
      v = v * z + c[j];
    }
    return dv == Complex(0.0) ? Complex(0.0) : v / dv;
  };
  double radius = 1.0;
  if (c.front() != Complex(0.0) && c.back() != Complex(0.0)) {
    radius = std::pow(std::abs(c.front() / c.back()), 1.0 / m);
  }
  const AberthResult r = aberth(newton, circle_start(m, radius));
  std::vector<Lift> out;
  out.reserve(m);
  for (const Complex z : r.roots) out.push_back(unit(act(u, {z, Complex(1.0)})));
  return out;
}

}  // namespace fekete_dyn
