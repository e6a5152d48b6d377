#include "fekete_dyn/fekete_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fekete_dyn/parallel.hpp"

namespace fekete_dyn {

namespace {

constexpr std::size_t kKeepPairs = 64;
constexpr std::size_t kHolderSamples = 20000;
constexpr double kInf = std::numeric_limits<double>::infinity();

double n_log_n(double n) { return n * std::log(n); }

}  // namespace

EnergyReport config_energy(const GreenEvaluator& ev, const Configuration& config, bool weighted) {
  const std::size_t m = config.size();
  EnergyReport r;
  r.multiplicity_weighted = weighted;
  r.config_size = weighted ? config.total_multiplicity() : static_cast<long>(m);
  if (r.config_size < 2) throw Error(ErrorCode::InvalidArgument, "configuration energy needs at least two points");

  std::vector<double> g(m);
  parallel_for(m, [&](std::size_t i) { g[i] = ev.good_potential(config.points[i]); });

  std::vector<double> row(m, 0.0), row_min(m, 1.0);
  parallel_for(m, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dist = spherical_dist(config.points[i], config.points[j]);
      row_min[i] = std::min(row_min[i], dist);
      const double w = weighted ? double(config.multiplicities[i]) * config.multiplicities[j] : 1.0;
      s += w * (std::log(dist) - (g[i] + g[j]));
    }
    row[i] = 2.0 * s;
  });
  r.pair_energy_sum = std::accumulate(row.begin(), row.end(), 0.0);
  r.min_pair_distance = m > 1 ? *std::min_element(row_min.begin(), row_min.end()) : 0.0;
  if (r.min_pair_distance == 0.0) {
    r.pair_energy_sum = -kInf;
    r.flags.push_back("coincident points");
  }
  if (weighted) {
    for (std::size_t i = 0; i < m; ++i) {
      if (config.multiplicities[i] > 1) {
        r.pair_energy_sum = -kInf;
        r.min_pair_distance = 0.0;
        r.flags.push_back("parabolic: repeated root of multiplicity " + std::to_string(config.multiplicities[i]));
      }
    }
  }
  if (m <= kKeepPairs) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) r.pair_values.push_back(ev.hsia_kernel(config.points[i], config.points[j]));
    }
  }
  const double nl = n_log_n(double(r.config_size));
  r.baker_ratio = r.pair_energy_sum / nl;
  r.quasi_fekete_constant = std::max(0.0, -r.pair_energy_sum / nl);
  return r;
}

bool check_quasi_fekete(const EnergyReport& report, double C) {
  return report.pair_energy_sum >= -C * n_log_n(double(report.config_size));
}

BakerRecord baker_check(const GreenEvaluator& ev, const Configuration& config) {
  const EnergyReport r = config_energy(ev, config);
  const double shape = n_log_n(double(r.config_size));
  return {r.pair_energy_sum, shape, r.pair_energy_sum / shape};
}

RateContext::RateContext(const RationalMapLift& f, const RateOptions& options)
    : f_(f),
      options_(options),
      ev_(normalize_good_lift(f)),
      sampler_(ev_.map(), options.sampler.seed, options.sampler.burn_in),
      samples_(sampler_.sample(options.sampler.samples)) {
  if (options_.holder_seminorm) {
    holder_ = *options_.holder_seminorm;
  } else {
    holder_ = holder_seminorm_estimate(ev_, options_.alpha, kHolderSamples, options_.sampler.seed ^ 0x686f6c64ULL);
    holder_estimated_ = true;
  }
}

RateRow discrepancy(const RateContext& ctx, int n, const Observable& phi, const Configuration& config,
                    const EnergyReport& energy) {
  const auto& opt = ctx.options();
  RateRow row;
  row.n = n;
  row.d_n = dynatomic_degree(ctx.map().degree(), n);
  row.observable = phi.name;
  row.lipschitz = phi.lipschitz;

  double weighted_sum = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double w = opt.distinct ? 1.0 : double(config.multiplicities[i]);
    weighted_sum += w * phi(config.points[i]);
    weight += w;
  }
  const double dpow = std::pow(double(ctx.map().degree()), n);
  const MCEstimate integral = integrate(phi.fn, ctx.samples());
  row.discrepancy_dn = std::abs(integral.mean - weighted_sum / weight);
  row.discrepancy_dpow = std::abs(integral.mean - weighted_sum / dpow);
  row.discrepancy = opt.norm == Normalization::Dn ? row.discrepancy_dn : row.discrepancy_dpow;
  row.mc_stderr = integral.std_error;

  row.bound_theorem_A = std::sqrt(double(n) / dpow);
  const double big_n = double(energy.config_size);
  row.bound_theorem_B = std::sqrt(std::log(big_n) / big_n) * phi.lipschitz;
  row.energy = energy.pair_energy_sum;
  row.quasi_C = energy.quasi_fekete_constant;
  row.ratio = row.discrepancy / row.bound_theorem_A;

  if (std::isfinite(energy.pair_energy_sum)) {
    row.A = frl_bound_A({static_cast<std::size_t>(energy.config_size), energy.pair_energy_sum, opt.alpha,
                         ctx.holder_seminorm()});
    row.bound_prop = proposition_bound(row.A, opt.alpha, static_cast<std::size_t>(energy.config_size), phi.lipschitz);
  } else {
    row.A = kInf;
    row.bound_prop = kInf;
  }
  return row;
}

RateRow discrepancy(const RateContext& ctx, int n, const Observable& phi) {
  const Configuration config = periodic_points(ctx.map(), n, ctx.options().periodic);
  const EnergyReport energy = config_energy(ctx.evaluator(), config, !ctx.options().distinct);
  return discrepancy(ctx, n, phi, config, energy);
}

namespace {

RateFit fit_rows(const std::vector<RateRow>& rows, const std::string& name) {
  RateFit fit;
  fit.observable = name;
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.observable != name || !r.ok) continue;
    if (r.bound_theorem_B > 0.0) fit.C_theorem_B = std::max(fit.C_theorem_B, r.discrepancy / r.bound_theorem_B);
    if (r.n < 3 || !(r.discrepancy > 0.0)) continue;
    x.push_back(std::log(r.bound_theorem_A));
    y.push_back(std::log(r.discrepancy));
    fit.max_ratio = std::max(fit.max_ratio, r.ratio);
  }
  if (x.size() < 2) return fit;
  const double k = double(x.size());
  double mean_gap = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_gap += (y[i] - x[i]) / k;
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  fit.C = std::exp(mean_gap);
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.max_ratio_over_C = fit.max_ratio / fit.C;
  fit.fitted = true;
  return fit;
}

}  // namespace

RateTable rate_table(const RateContext& ctx, int n_max, const std::vector<Observable>& observables) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be positive");
  RateTable table;
  table.holder_estimated = ctx.holder_estimated();
  table.holder_seminorm = ctx.holder_seminorm();
  for (int n = 1; n <= n_max; ++n) {
    try {
      const Configuration config = periodic_points(ctx.map(), n, ctx.options().periodic);
      const EnergyReport energy = config_energy(ctx.evaluator(), config, !ctx.options().distinct);
      if (n >= 2 && std::isfinite(energy.baker_ratio)) {
        table.energy_constant = std::max(table.energy_constant, std::abs(energy.baker_ratio));
      }
      for (const auto& phi : observables) {
        try {
          table.rows.push_back(discrepancy(ctx, n, phi, config, energy));
        } catch (const Error& e) {
          RateRow bad;
          bad.n = n;
          bad.d_n = dynatomic_degree(ctx.map().degree(), n);
          bad.observable = phi.name;
          bad.ok = false;
          bad.error = e.what();
          table.rows.push_back(bad);
        }
      }
    } catch (const Error& e) {
      for (const auto& phi : observables) {
        RateRow bad;
        bad.n = n;
        bad.d_n = dynatomic_degree(ctx.map().degree(), n);
        bad.observable = phi.name;
        bad.ok = false;
        bad.error = e.what();
        table.rows.push_back(bad);
      }
    }
  }
  for (const auto& phi : observables) table.fits.push_back(fit_rows(table.rows, phi.name));
  return table;
}

RateTable rate_table(const RationalMapLift& f, int n_max, const std::vector<Observable>& observables,
                     const RateOptions& options) {
  const RateContext ctx(f, options);
  return rate_table(ctx, n_max, observables);
}

}  // namespace fekete_dyn
