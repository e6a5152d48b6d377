#include "fekete_dyn/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fekete_dyn/parallel.hpp"
#include "fekete_dyn/root_finding.hpp"

namespace fekete_dyn {

namespace {

constexpr double kPreimageTol = 1e-8;
constexpr double kDistinctTol = 1e-9;
constexpr std::uint64_t kRootSeed = 0x62616b77ULL;

std::size_t count_distinct(const std::vector<ProjPoint>& pts) {
  std::vector<ProjPoint> kept;
  for (const auto& p : pts) {
    const bool seen = std::any_of(kept.begin(), kept.end(),
                                  [&](const ProjPoint& q) { return spherical_dist(p, q) <= kDistinctTol; });
    if (!seen) kept.push_back(p);
  }
  return kept.size();
}

double neg_log_dist(const ProjPoint& x, const ProjPoint& y) { return -std::log(spherical_dist(x, y)); }

}  // namespace

MeasureSampler::MeasureSampler(RationalMapLift f, std::uint64_t seed, int burn_in, std::optional<ProjPoint> start)
    : f_(std::move(f)), seed_(seed), burn_in_(burn_in) {
  if (burn_in_ < 1) throw Error(ErrorCode::InvalidArgument, "burn-in must be at least 1");
  auto rng = stream_rng(seed_, 0);
  ProjPoint candidate = start ? *start : uniform_sphere_point(rng);
  for (int attempt = 0; exceptional(candidate); ++attempt) {
    if (attempt >= 100) throw Error(ErrorCode::PreimageSolveFailed, "no non-exceptional start point found");
    candidate = uniform_sphere_point(rng);
  }
  start_ = candidate;
}

std::vector<ProjPoint> MeasureSampler::preimages(const ProjPoint& w) const {
  const Lift wu = w.unit_lift();
  const int d = f_.degree();
  std::vector<Complex> c(d + 1);
  for (int j = 0; j <= d; ++j) c[j] = wu[1] * f_.f1()[j] - wu[0] * f_.f2()[j];
  const auto roots = roots_of_form(HomPolyC(std::move(c)), kRootSeed);
  std::vector<ProjPoint> out;
  out.reserve(roots.size());
  for (const auto& r : roots) {
    ProjPoint z(r);
    const double miss = spherical_dist(f_(z), w);
    if (!(miss <= kPreimageTol)) {
      throw Error(ErrorCode::PreimageSolveFailed, "preimage residual " + std::to_string(miss) + " above tolerance");
    }
    out.push_back(z);
  }
  return out;
}

bool MeasureSampler::exceptional(const ProjPoint& z) const {
  const std::size_t d = f_.degree();
  const auto first = preimages(z);
  if (count_distinct(first) < d) return true;
  std::vector<ProjPoint> second;
  for (const auto& p : first) {
    const auto pp = preimages(p);
    second.insert(second.end(), pp.begin(), pp.end());
  }
  return count_distinct(second) < d * d;
}

std::vector<ProjPoint> MeasureSampler::sample(std::size_t count) const {
  std::vector<ProjPoint> out(count);
  const int d = f_.degree();
  parallel_for(count, [&](std::size_t i) {
    auto rng = stream_rng(seed_, i + 1);
    std::uniform_int_distribution<int> branch(0, d - 1);
    ProjPoint z = start_;
    for (int s = 0; s < burn_in_; ++s) z = preimages(z)[branch(rng)];
    out[i] = z;
  });
  return out;
}

std::vector<ProjPoint> sample_mu(const MeasureSampler& s, std::size_t count) { return s.sample(count); }

MCEstimate mean_and_error(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "no samples to average");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), values.size()};
}

MCEstimate integrate(const std::function<double(const ProjPoint&)>& phi, std::span<const ProjPoint> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "no samples to integrate against");
  std::vector<double> v(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { v[i] = phi(samples[i]); });
  return mean_and_error(v);
}

MCEstimate mutual_energy_mc(std::span<const ProjPoint> mu, std::span<const ProjPoint> nu, Pairing pairing,
                            std::span<const double> nu_weights) {
  if (mu.empty() || nu.empty()) throw Error(ErrorCode::EmptySample, "mutual energy needs two nonempty samples");
  if (!nu_weights.empty() && nu_weights.size() != nu.size()) {
    throw Error(ErrorCode::InvalidArgument, "weights must match the second argument");
  }
  auto weight = [&](std::size_t j) { return nu_weights.empty() ? 1.0 : nu_weights[j]; };
  switch (pairing) {
    case Pairing::Independent: {
      const std::size_t m = std::min(mu.size(), nu.size());
      std::vector<double> v(m);
      for (std::size_t i = 0; i < m; ++i) v[i] = neg_log_dist(mu[i], nu[i]);
      return mean_and_error(v);
    }
    case Pairing::AgainstAtoms: {
      double total = 0.0;
      for (std::size_t j = 0; j < nu.size(); ++j) total += weight(j);
      std::vector<double> v(mu.size());
      parallel_for(mu.size(), [&](std::size_t i) {
        double s = 0.0;
        for (std::size_t j = 0; j < nu.size(); ++j) s += weight(j) * neg_log_dist(mu[i], nu[j]);
        v[i] = s / total;
      });
      return mean_and_error(v);
    }
    case Pairing::Atoms: {
      double s = 0.0, w = 0.0;
      for (const auto& x : mu) {
        for (std::size_t j = 0; j < nu.size(); ++j) {
          const double dist = spherical_dist(x, nu[j]);
          if (dist == 0.0) continue;
          s -= weight(j) * std::log(dist);
          w += weight(j);
        }
      }
      if (w == 0.0) throw Error(ErrorCode::EmptySample, "every pair of atoms coincides");
      return {s / w, 0.0, mu.size() * nu.size()};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pairing");
}

double frl_bound_A(const EnergyBoundInputs& inp) {
  if (inp.n < 2) throw Error(ErrorCode::InvalidArgument, "bound A needs at least two points");
  if (!(inp.alpha > 0.0 && inp.alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  const double n = static_cast<double>(inp.n);
  const double a = -inp.pair_energy_sum / (n * (n - 1.0)) +
                   (2.0 * inp.holder_seminorm + 2.0 + std::max(2.0, 1.0 / inp.alpha)) * std::log(n) / n;
  if (a < 0.0) {
    throw Error(ErrorCode::NegativeA, "A = " + std::to_string(a) + " < 0: pair energy exceeds its ceiling");
  }
  return a;
}

double regularization_radius(double alpha, std::size_t n) {
  return std::pow(static_cast<double>(n), -1.0 / std::min(alpha, 0.5));
}

double proposition_bound(double A, double alpha, std::size_t n, double lipschitz) {
  return lipschitz * regularization_radius(alpha, n) + std::sqrt(A) * lipschitz;
}

ProjPoint point_on_circle(const ProjPoint& z, double eps, double theta) {
  const ProjPoint local = point_at_distance_from_origin(eps, theta);
  return ProjPoint(act(isometry_from_origin(z), local.lift()));
}

MCEstimate regularized_energy_mc(std::span<const ProjPoint> atoms, double eps, std::size_t draws,
                                 std::uint64_t seed) {
  if (atoms.empty() || draws == 0) throw Error(ErrorCode::EmptySample, "regularized energy needs atoms and draws");
  const std::size_t n = atoms.size();
  std::vector<double> v(draws);
  parallel_for(draws, [&](std::size_t r) {
    auto rng = stream_rng(seed, r);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<ProjPoint> u(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = point_on_circle(atoms[i], eps, angle(rng));
      w[i] = point_on_circle(atoms[i], eps, angle(rng));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s += neg_log_dist(u[i], w[j]);
    }
    v[r] = s / double(n * n);
  });
  return mean_and_error(v);
}

double regularized_energy_bound(std::span<const ProjPoint> atoms, double eps) {
  const std::size_t n = atoms.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "the bound needs at least two atoms");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += std::log(spherical_dist(atoms[i], atoms[j]));
  }
  const double nn = static_cast<double>(n);
  return -2.0 / (nn * (nn - 1.0)) * s - std::log(eps) / nn + 2.0 * std::sqrt(eps);
}

MCEstimate smoothed_difference_energy(std::span<const ProjPoint> a, std::span<const ProjPoint> b, double eps,
                                      std::size_t draws, std::uint64_t seed) {
  if (a.empty() || b.empty() || draws == 0) throw Error(ErrorCode::EmptySample, "energy of a difference needs data");
  std::vector<double> v(draws);
  const double self = -std::log(eps);
  auto same = [&](const std::vector<ProjPoint>& u) {
    const std::size_t n = u.size();
    double s = self * double(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += neg_log_dist(u[i], u[j]);
      }
    }
    return s / double(n * n);
  };
  parallel_for(draws, [&](std::size_t r) {
    auto rng = stream_rng(seed, r);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<ProjPoint> u(a.size()), w(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) u[i] = point_on_circle(a[i], eps, angle(rng));
    for (std::size_t j = 0; j < b.size(); ++j) w[j] = point_on_circle(b[j], eps, angle(rng));
    double cross = 0.0;
    for (const auto& x : u) {
      for (const auto& y : w) cross += neg_log_dist(x, y);
    }
    cross /= double(a.size() * b.size());
    v[r] = same(u) + same(w) - 2.0 * cross;
  });
  return mean_and_error(v);
}

}  // namespace fekete_dyn
