#include "fekete_dyn/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "fekete_dyn/exact_arith.hpp"
#include "fekete_dyn/map_spec.hpp"
#include "fekete_dyn/version.hpp"

namespace fekete_dyn {

namespace {

constexpr int kMaxPeriod = 16;

Json error_json(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}, {"version", kVersion}};
}

void require_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

PeriodicPointOptions periodic_options(const ExperimentConfig& cfg) {
  PeriodicPointOptions p;
  p.precision = Precision{cfg.precision};
  p.seed = *cfg.seed;
  return p;
}

Json envelope(const ExperimentConfig& cfg, const MapSpec& spec) {
  return {{"version", kVersion}, {"config", to_json(cfg)}, {"map", to_json(spec)}};
}

std::string cmd_perpts(const ExperimentConfig& cfg, const MapSpec& spec) {
  const RationalMapLift f = spec.to_lift(Precision{cfg.precision});
  Json doc = envelope(cfg, spec);
  doc["n"] = cfg.n;
  doc["d_n"] = dynatomic_degree(f.degree(), cfg.n);
  doc["configuration"] = to_json(periodic_points(f, cfg.n, periodic_options(cfg)));
  return dump(doc);
}

std::string cmd_energy(const ExperimentConfig& cfg, const MapSpec& spec) {
  const RationalMapLift f = spec.to_lift(Precision{cfg.precision});
  const Configuration config = periodic_points(f, cfg.n, periodic_options(cfg));
  const GreenEvaluator ev(normalize_good_lift(f));
  Json doc = envelope(cfg, spec);
  doc["n"] = cfg.n;
  doc["d_n"] = dynatomic_degree(f.degree(), cfg.n);
  doc["energy"] = to_json(config_energy(ev, config, !cfg.distinct));
  return dump(doc);
}

std::string cmd_rate(const ExperimentConfig& cfg, const MapSpec& spec) {
  RateOptions opt;
  opt.sampler = SamplerConfig{*cfg.seed, cfg.samples, cfg.burn_in};
  opt.norm = cfg.norm;
  opt.distinct = cfg.distinct;
  opt.periodic = periodic_options(cfg);
  for (const auto& name : cfg.observables) {
    if (name != "potential") make_observable(name);
  }
  const RateContext ctx(spec.to_lift(Precision{cfg.precision}), opt);
  std::vector<Observable> obs;
  for (const auto& name : cfg.observables) obs.push_back(make_observable(name, &ctx.evaluator(), *cfg.seed));
  const RateTable table = rate_table(ctx, cfg.n_max, obs);
  Json conf = to_json(cfg);
  conf["map"] = to_json(spec);
  return rate_csv(table, conf);
}

std::string cmd_arith(const ExperimentConfig& cfg, const MapSpec& spec) {
  const ExactMapLift f = ExactMapLift::from_spec(spec);
  Json doc = envelope(cfg, spec);
  doc["resultant"] = f.resultant().get_str();
  doc["report"] = to_json(product_formula_report(f, cfg.n, periodic_options(cfg)));
  return dump(doc);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::MapSpecInvalid:
    case ErrorCode::DegenerateLift:
    case ErrorCode::DegreeCapExceeded:
    case ErrorCode::NotGoodLift:
    case ErrorCode::EmptySample:
    case ErrorCode::ZeroInput:
      return kExitUsage;
    case ErrorCode::InexactDivision:
    case ErrorCode::NegativeA:
    case ErrorCode::IntegralityViolation:
      return kExitTheory;
    case ErrorCode::RootFindingDiverged:
    case ErrorCode::IncompleteRoots:
    case ErrorCode::PreimageSolveFailed:
      return kExitNumeric;
  }
  return kExitNumeric;
}

void validate(const ExperimentConfig& cfg) {
  const bool known = cfg.command == "perpts" || cfg.command == "energy" || cfg.command == "rate" ||
                     cfg.command == "arith";
  require_range(known, "unknown command '" + cfg.command + "'");
  require_range(!cfg.map_path.empty(), "--map is required");
  require_range(cfg.seed.has_value(), "--seed is required");
  require_range(cfg.precision >= 20 && cfg.precision <= 53, "--precision must lie in [20, 53]");
  if (cfg.command == "rate") {
    require_range(cfg.n_max >= 1 && cfg.n_max <= kMaxPeriod, "--nmax must lie in [1, 16]");
    require_range(!cfg.observables.empty(), "--obs needs at least one observable");
    require_range(cfg.samples >= 2 && cfg.samples <= 100000000, "--samples must lie in [2, 1e8]");
    require_range(cfg.burn_in >= 1 && cfg.burn_in <= 100000, "--burnin must lie in [1, 100000]");
  } else {
    require_range(cfg.n >= 1 && cfg.n <= kMaxPeriod, "--n must lie in [1, 16]");
  }
}

Json to_json(const ExperimentConfig& cfg) {
  Json j = {{"command", cfg.command},
            {"map_path", cfg.map_path},
            {"precision", cfg.precision},
            {"seed", cfg.seed ? Json(*cfg.seed) : Json(nullptr)},
            {"distinct", cfg.distinct},
            {"out", cfg.out}};
  if (cfg.command == "rate") {
    j["n_max"] = cfg.n_max;
    j["observables"] = cfg.observables;
    j["samples"] = cfg.samples;
    j["burn_in"] = cfg.burn_in;
    j["norm"] = cfg.norm == Normalization::Dn ? "dn" : "dpow";
  } else {
    j["n"] = cfg.n;
  }
  return j;
}

int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    const MapSpec spec = load_map_spec(cfg.map_path);
    std::string text;
    if (cfg.command == "perpts") {
      text = cmd_perpts(cfg, spec);
    } else if (cfg.command == "energy") {
      text = cmd_energy(cfg, spec);
    } else if (cfg.command == "rate") {
      text = cmd_rate(cfg, spec);
    } else {
      text = cmd_arith(cfg, spec);
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + cfg.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << dump(error_json(std::string(to_string(e.code())), e.what()));
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << dump(error_json("Internal", e.what()));
    return kExitNumeric;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic-point equidistribution and arithmetic energy experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::uint64_t seed = 0;
  std::string obs = "re_chordal";
  std::string norm = "dpow";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map_path, "map spec JSON file")->required();
    sub->add_option("--seed", seed, "random seed")->required();
    sub->add_option("--precision", cfg.precision, "working precision in bits");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  auto* perpts = app.add_subcommand("perpts", "roots of the period-n dynatomic form");
  auto* energy = app.add_subcommand("energy", "pair energy of the period-n configuration");
  auto* rate = app.add_subcommand("rate", "discrepancy table up to n_max as CSV");
  auto* arith = app.add_subcommand("arith", "exact discriminant and product formula");
  for (auto* sub : {perpts, energy, arith}) {
    common(sub);
    sub->add_option("--n", cfg.n, "period")->required();
  }
  common(rate);
  rate->add_option("--nmax", cfg.n_max, "largest period")->required();
  rate->add_option("--obs", obs, "comma-separated observables");
  rate->add_option("--samples", cfg.samples, "equilibrium samples");
  rate->add_option("--burnin", cfg.burn_in, "backward-iteration burn-in");
  rate->add_option("--norm", norm, "normalization of the empirical measure")
      ->check(CLI::IsMember({"dn", "dpow"}));
  for (auto* sub : {energy, rate}) sub->add_flag("--distinct", cfg.distinct, "count repeated roots once");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << dump(error_json("InvalidArgument", e.what()));
    return kExitUsage;
  }

  for (auto* sub : {perpts, energy, rate, arith}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  cfg.seed = seed;
  cfg.norm = norm == "dn" ? Normalization::Dn : Normalization::DPow;
  if (cfg.command == "rate") cfg.observables = split_observable_list(obs);
  return run_command(cfg, out, err);
}

}  // namespace fekete_dyn
