#include "fekete_dyn/map_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

namespace fekete_dyn {

namespace {

using nlohmann::json;

Coefficient parse_coefficient(const json& j) {
  Coefficient c;
  if (j.is_string()) {
    static const std::regex rational_re(R"(\s*([+-]?\d+)(\s*/\s*(\d+))?\s*)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, m, rational_re)) {
      throw Error(ErrorCode::MapSpecInvalid, "coefficient '" + s + "' is not of the form p/q");
    }
    const std::string num = m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str();
    mpz_class p(num), q(m[3].matched ? m[3].str() : std::string("1"));
    if (q == 0) throw Error(ErrorCode::MapSpecInvalid, "zero denominator in coefficient '" + s + "'");
    c.exact = true;
    c.rational = mpq_class(p, q);
    c.rational.canonicalize();
    c.value = Complex(c.rational.get_d(), 0.0);
    return c;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    c.value = Complex(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag())) {
      throw Error(ErrorCode::MapSpecInvalid, "coefficient is not finite");
    }
    return c;
  }
  throw Error(ErrorCode::MapSpecInvalid, "coefficient must be a \"p/q\" string or a [re, im] pair");
}

std::vector<Coefficient> parse_side(const json& doc, const char* key, int degree) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::MapSpecInvalid, std::string("missing coefficient array '") + key + "'");
  }
  const auto& arr = doc[key];
  if (static_cast<int>(arr.size()) != degree + 1) {
    throw Error(ErrorCode::MapSpecInvalid, std::string("'") + key + "' needs degree+1 coefficients");
  }
  std::vector<Coefficient> out;
  for (const auto& c : arr) out.push_back(parse_coefficient(c));
  return out;
}

HomPolyC to_form(const std::vector<Coefficient>& descending) {
  std::vector<Complex> v;
  for (const auto& c : descending) v.push_back(c.value);
  return HomPolyC::from_descending(std::move(v));
}

}  // namespace

bool MapSpec::all_exact() const {
  auto ex = [](const Coefficient& c) { return c.exact; };
  return std::all_of(num.begin(), num.end(), ex) && std::all_of(den.begin(), den.end(), ex);
}

RationalMapLift MapSpec::to_lift(Precision precision) const {
  return RationalMapLift(to_form(num), to_form(den), precision);
}

MapSpec parse_map_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MapSpecInvalid, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("degree") || !doc["degree"].is_number_integer()) {
    throw Error(ErrorCode::MapSpecInvalid, "map spec needs an integer 'degree'");
  }
  MapSpec spec;
  spec.degree = doc["degree"].get<int>();
  if (spec.degree < 2) throw Error(ErrorCode::MapSpecInvalid, "map degree must be at least 2");
  spec.num = parse_side(doc, "num", spec.degree);
  spec.den = parse_side(doc, "den", spec.degree);
  return spec;
}

MapSpec load_map_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MapSpecInvalid, "cannot open map spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map_spec(ss.str());
}

MapSpec quadratic_family(const mpq_class& c) {
  auto q = [](const mpq_class& v) { return Coefficient{true, v, Complex(v.get_d(), 0.0)}; };
  MapSpec s;
  s.degree = 2;
  s.num = {q(1), q(0), q(c)};
  s.den = {q(0), q(0), q(1)};
  return s;
}

MapSpec quadratic_family(Complex c) {
  auto f = [](Complex v) { return Coefficient{false, mpq_class(0), v}; };
  MapSpec s;
  s.degree = 2;
  s.num = {f(1.0), f(0.0), f(c)};
  s.den = {f(0.0), f(0.0), f(1.0)};
  return s;
}

}  // namespace fekete_dyn
