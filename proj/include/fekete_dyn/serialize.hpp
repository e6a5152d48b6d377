#pragma once

#include <string>

#include <json.hpp>

#include "fekete_dyn/dynatomic.hpp"
#include "fekete_dyn/exact_arith.hpp"
#include "fekete_dyn/fekete_lab.hpp"
#include "fekete_dyn/map_spec.hpp"

namespace fekete_dyn {

using Json = nlohmann::json;

/// Finite doubles become numbers; infinities and NaN become "inf", "-inf", "nan".
Json json_number(double x);
Json json_complex(Complex z);
Json to_json(const ProjPoint& z);
Json to_json(const MapSpec& spec);
Json to_json(const Configuration& config);
Json to_json(const EnergyReport& report);
/// Exact rationals are written as decimal "p/q" strings.
Json to_json(const ArithReport& report);
Json to_json(const RateFit& fit);

/// Plot-ready CSV. Leading "# " lines carry the version and the compact
/// config JSON; trailing "# fit" lines carry the fitted constants.
std::string rate_csv(const RateTable& table, const Json& config);

/// Shortest round-trip decimal, or inf/-inf/nan.
std::string format_double(double x);

/// Stable pretty-printed form with a trailing newline.
std::string dump(const Json& doc);

}  // namespace fekete_dyn
