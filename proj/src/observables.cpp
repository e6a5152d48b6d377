#include "fekete_dyn/observables.hpp"

#include <charconv>
#include <regex>

#include "fekete_dyn/potential.hpp"

namespace fekete_dyn {

namespace {

constexpr std::size_t kHolderSamples = 20000;

double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const double p = parse_real(s.substr(0, slash));
    const double q = parse_real(s.substr(slash + 1));
    if (q == 0.0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + s + "'");
    return p / q;
  }
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

ProjPoint parse_point(const std::string& raw) {
  std::string text;
  for (const char c : raw) {
    if (c != ' ') text.push_back(c);
  }
  if (text == "inf" || text == "infinity") return ProjPoint::infinity();
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty point literal");
  if (text.back() != 'i') return ProjPoint::affine(Complex(parse_real(text), 0.0));

  // a+bi, a-bi, bi, i, -i: split at the last sign that is not an exponent sign.
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string::npos) return ProjPoint::affine(Complex(0.0, imag_part(body)));
  return ProjPoint::affine(Complex(parse_real(body.substr(0, split)), imag_part(body.substr(split))));
}

Observable make_observable(const std::string& name, const GreenEvaluator* ev, std::uint64_t seed) {
  if (name == "re_chordal" || name == "im_chordal") {
    const bool re = name == "re_chordal";
    // Coordinates of the embedding of the sphere with chord length d.
    auto fn = [re](const ProjPoint& z) {
      const Lift w = z.unit_lift();
      const Complex s = w[0] * std::conj(w[1]);
      return re ? s.real() : s.imag();
    };
    return {name, fn, 1.0, true};
  }
  if (name == "one") {
    return {name, [](const ProjPoint&) { return 1.0; }, 0.0, true};
  }
  static const std::regex dist_re(R"(dist_to\((.+)\))");
  if (std::smatch m; std::regex_match(name, m, dist_re)) {
    const ProjPoint p = parse_point(m[1].str());
    return {name, [p](const ProjPoint& z) { return spherical_dist(z, p); }, 1.0, true};
  }
  if (name == "potential") {
    if (ev == nullptr) throw Error(ErrorCode::InvalidArgument, "the potential observable needs a map");
    auto fn = [ev](const ProjPoint& z) { return ev->good_potential(z); };
    const double lip = holder_seminorm_estimate(*ev, 1.0, kHolderSamples, seed);
    return {name, fn, lip, false};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown observable '" + name + "'");
}

std::vector<std::string> split_observable_list(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (const char c : list) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace fekete_dyn
