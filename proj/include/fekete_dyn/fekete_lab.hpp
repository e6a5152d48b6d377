#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fekete_dyn/dynatomic.hpp"
#include "fekete_dyn/equilibrium.hpp"
#include "fekete_dyn/observables.hpp"
#include "fekete_dyn/potential.hpp"

namespace fekete_dyn {

struct EnergyReport {
  /// Number of points, counted with multiplicity unless the distinct variant
  /// was requested.
  long config_size = 0;
  double pair_energy_sum = 0.0;
  /// C' = max(0, -Sigma / (N log N)).
  double quasi_fekete_constant = 0.0;
  /// Sigma / (N log N).
  double baker_ratio = 0.0;
  double min_pair_distance = 0.0;
  bool multiplicity_weighted = true;
  /// Phi over unordered pairs i < j, kept for configurations of at most 64 points.
  std::vector<double> pair_values;
  std::vector<std::string> flags;
};

/// Sum of Phi_{g_f} over ordered pairs of distinct points. With multiplicity
/// weighting a repeated root makes the sum minus infinity.
EnergyReport config_energy(const GreenEvaluator& ev, const Configuration& config, bool weighted = true);

bool check_quasi_fekete(const EnergyReport& report, double C);

struct BakerRecord {
  double lhs = 0.0;
  double rhs_shape = 0.0;
  double ratio = 0.0;
};

BakerRecord baker_check(const GreenEvaluator& ev, const Configuration& config);

enum class Normalization { Dn, DPow };

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 20000;
  int burn_in = MeasureSampler::kDefaultBurnIn;
};

struct RateOptions {
  SamplerConfig sampler;
  Normalization norm = Normalization::DPow;
  bool distinct = false;
  double alpha = 1.0;
  /// User-supplied Hoelder seminorm of g_f; estimated when absent.
  std::optional<double> holder_seminorm;
  PeriodicPointOptions periodic;
};

struct RateRow {
  int n = 0;
  long d_n = 0;
  std::string observable;
  /// |int phi dmu - (1/d_n) sum phi(z)|
  double discrepancy_dn = 0.0;
  /// |int phi dmu - (1/d^n) sum phi(z)|
  double discrepancy_dpow = 0.0;
  /// The one selected by the normalization switch.
  double discrepancy = 0.0;
  double mc_stderr = 0.0;
  /// (n / d^n)^{1/2}
  double bound_theorem_A = 0.0;
  /// (log d_n / d_n)^{1/2} times Lip(phi)
  double bound_theorem_B = 0.0;
  double A = 0.0;
  double bound_prop = 0.0;
  double ratio = 0.0;
  double energy = 0.0;
  double quasi_C = 0.0;
  double lipschitz = 0.0;
  bool ok = true;
  std::string error;
};

/// Inputs shared by the rows of one map: the evaluator and a fixed sample.
class RateContext {
 public:
  RateContext(const RationalMapLift& f, const RateOptions& options);

  const RationalMapLift& map() const { return f_; }
  const GreenEvaluator& evaluator() const { return ev_; }
  const std::vector<ProjPoint>& samples() const { return samples_; }
  const RateOptions& options() const { return options_; }
  double holder_seminorm() const { return holder_; }
  bool holder_estimated() const { return holder_estimated_; }
  const MeasureSampler& sampler() const { return sampler_; }

 private:
  RationalMapLift f_;
  RateOptions options_;
  GreenEvaluator ev_;
  MeasureSampler sampler_;
  std::vector<ProjPoint> samples_;
  double holder_ = 0.0;
  bool holder_estimated_ = false;
};

RateRow discrepancy(const RateContext& ctx, int n, const Observable& phi);

/// Row for observable phi at period n given a precomputed configuration and energy.
RateRow discrepancy(const RateContext& ctx, int n, const Observable& phi, const Configuration& config,
                    const EnergyReport& energy);

struct RateFit {
  std::string observable;
  /// Geometric mean of discrepancy / bound over the rows with n >= 3: the
  /// least-squares constant for log discrepancy = log C + log bound.
  double C = 0.0;
  /// Free slope of log discrepancy against log bound.
  double slope = 0.0;
  double max_ratio = 0.0;
  double max_ratio_over_C = 0.0;
  /// Smallest C_B with discrepancy <= C_B (log d_n / d_n)^{1/2} Lip on every row.
  double C_theorem_B = 0.0;
  bool fitted = false;
};

struct RateTable {
  std::vector<RateRow> rows;
  std::vector<RateFit> fits;
  /// Largest |Sigma| / (N log N) over the rows with n >= 2.
  double energy_constant = 0.0;
  bool holder_estimated = false;
  double holder_seminorm = 0.0;
};

RateTable rate_table(const RationalMapLift& f, int n_max, const std::vector<Observable>& observables,
                     const RateOptions& options);
RateTable rate_table(const RateContext& ctx, int n_max, const std::vector<Observable>& observables);

}  // namespace fekete_dyn
