#include "fekete_dyn/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "fekete_dyn/version.hpp"

namespace fekete_dyn {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json json_complex(Complex z) { return Json::array({json_number(z.real()), json_number(z.imag())}); }

Json to_json(const ProjPoint& z) {
  Json j;
  j["lift"] = Json::array({json_complex(z.x1()), json_complex(z.x2())});
  j["affine"] = z.is_infinity() ? Json("inf") : json_complex(z.to_affine());
  return j;
}

Json to_json(const MapSpec& spec) {
  auto side = [](const std::vector<Coefficient>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(c.exact ? Json(c.rational.get_str()) : json_complex(c.value));
    return a;
  };
  return {{"degree", spec.degree}, {"num", side(spec.num)}, {"den", side(spec.den)}};
}

Json to_json(const Configuration& config) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < config.size(); ++i) {
    Json p = to_json(config.points[i]);
    p["multiplicity"] = config.multiplicities[i];
    p["residual"] = json_number(config.residuals[i]);
    p["converged"] = bool(config.converged[i]);
    if (i < config.exact_periods.size()) p["exact_period"] = config.exact_periods[i];
    if (i < config.multipliers.size()) p["multiplier"] = json_complex(config.multipliers[i]);
    pts.push_back(std::move(p));
  }
  return {{"provenance", config.provenance},
          {"count", config.size()},
          {"total_multiplicity", config.total_multiplicity()},
          {"all_converged", config.all_converged()},
          {"points", std::move(pts)},
          {"warnings", config.warnings}};
}

Json to_json(const EnergyReport& r) {
  Json pairs = Json::array();
  for (double v : r.pair_values) pairs.push_back(json_number(v));
  return {{"config_size", r.config_size},
          {"pair_energy_sum", json_number(r.pair_energy_sum)},
          {"quasi_fekete_constant", json_number(r.quasi_fekete_constant)},
          {"baker_ratio", json_number(r.baker_ratio)},
          {"baker_rhs_shape", json_number(double(r.config_size) * std::log(double(r.config_size)))},
          {"min_pair_distance", json_number(r.min_pair_distance)},
          {"multiplicity_weighted", r.multiplicity_weighted},
          {"pair_values", std::move(pairs)},
          {"flags", r.flags}};
}

Json to_json(const ArithReport& r) {
  Json vals = Json::object();
  for (const auto& [p, v] : r.valuations) vals[p] = v;
  return {{"n", r.n},
          {"degree", r.degree},
          {"disc", r.disc_value.get_str()},
          {"zero", r.zero},
          {"bad_primes", r.bad_primes},
          {"valuations", std::move(vals)},
          {"unfactored_numerator", r.unfactored_numerator},
          {"unfactored_denominator", r.unfactored_denominator},
          {"archimedean_log", json_number(r.archimedean_log)},
          {"product_formula_residual", json_number(r.product_formula_residual)},
          {"good_lift_log", json_number(r.good_lift_log)},
          {"numeric_energy", json_number(r.numeric_energy)},
          {"match_error", json_number(r.match_error)},
          {"integral", r.integral},
          {"integrality_checked", r.integrality_checked}};
}

Json to_json(const RateFit& f) {
  return {{"observable", f.observable},
          {"fitted", f.fitted},
          {"C", json_number(f.C)},
          {"slope", json_number(f.slope)},
          {"max_ratio", json_number(f.max_ratio)},
          {"max_ratio_over_C", json_number(f.max_ratio_over_C)},
          {"C_theorem_B", json_number(f.C_theorem_B)}};
}

std::string rate_csv(const RateTable& table, const Json& config) {
  std::ostringstream out;
  out << "# version " << kVersion << "\n";
  out << "# config " << config.dump() << "\n";
  out << "# holder_seminorm " << format_double(table.holder_seminorm)
      << (table.holder_estimated ? " estimated" : " supplied") << "\n";
  out << "n,d_n,observable,discrepancy,stderr,bound_A,bound_prop,ratio,energy,quasi_C,status\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << r.d_n << ',' << r.observable << ',';
    if (!r.ok) {
      std::string msg = r.error;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << ",,,,,,,error: " << msg << "\n";
      continue;
    }
    out << format_double(r.discrepancy) << ',' << format_double(r.mc_stderr) << ','
        << format_double(r.bound_theorem_A) << ',' << format_double(r.bound_prop) << ','
        << format_double(r.ratio) << ',' << format_double(r.energy) << ',' << format_double(r.quasi_C)
        << ",ok\n";
  }
  for (const auto& f : table.fits) {
    if (!f.fitted) {
      out << "# fit " << f.observable << " none\n";
      continue;
    }
    out << "# fit " << f.observable << " C=" << format_double(f.C) << " slope=" << format_double(f.slope)
        << " max_ratio_over_C=" << format_double(f.max_ratio_over_C) << " C_B=" << format_double(f.C_theorem_B)
        << "\n";
  }
  out << "# energy_constant " << format_double(table.energy_constant) << "\n";
  return out.str();
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace fekete_dyn
