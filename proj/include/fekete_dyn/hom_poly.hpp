#pragma once

// Homogeneous binary forms over an arbitrary coefficient ring. The same
// templates serve the complex-float variant and the exact-rational variant;
// the ring is selected by ScalarTraits.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fekete_dyn/errors.hpp"

namespace fekete_dyn {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static double magnitude(const std::complex<double>& c) { return std::abs(c); }
};

/// A binary form sum_j c_j X^j Y^(deg-j). Index j is the power of X, so
/// coefficient lists written as a_d..a_0 must be reversed on input.
template <class T>
class HomPoly {
 public:
  HomPoly() : coeffs_(1, T(0)) {}

  explicit HomPoly(std::vector<T> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.empty()) {
      throw Error(ErrorCode::InvalidArgument, "a form needs degree+1 coefficients");
    }
  }

  static HomPoly from_descending(std::vector<T> descending) {
    std::reverse(descending.begin(), descending.end());
    return HomPoly(std::move(descending));
  }

  static HomPoly zero(int degree) { return HomPoly(std::vector<T>(degree + 1, T(0))); }

  /// X^a Y^b
  static HomPoly monomial(int x_power, int y_power, T c = T(1)) {
    std::vector<T> v(x_power + y_power + 1, T(0));
    v[x_power] = c;
    return HomPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int j) const { return coeffs_[j]; }
  T& operator[](int j) { return coeffs_[j]; }
  std::span<const T> coeffs() const { return coeffs_; }

  std::vector<T> descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c == T(0); });
  }

  double max_magnitude() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, ScalarTraits<T>::magnitude(c));
    return m;
  }

  template <class U>
  U evaluate(const U& x, const U& y) const {
    // Horner in whichever affine coordinate keeps powers bounded.
    U acc(0);
    if (std::abs(x) >= std::abs(y)) {
      const U t = y / x;
      for (int j = 0; j <= degree(); ++j) acc = acc * t + U(coeffs_[j]);
      U xp(1);
      for (int k = 0; k < degree(); ++k) xp *= x;
      return acc * xp;
    }
    const U t = x / y;
    for (int j = degree(); j >= 0; --j) acc = acc * t + U(coeffs_[j]);
    U yp(1);
    for (int k = 0; k < degree(); ++k) yp *= y;
    return acc * yp;
  }

  HomPoly& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend HomPoly operator*(HomPoly p, const T& s) { return p *= s; }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return HomPoly(std::move(out));
  }

  friend HomPoly operator+(const HomPoly& a, const HomPoly& b) {
    check_same_degree(a, b);
    std::vector<T> out(a.coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
    return HomPoly(std::move(out));
  }

  friend HomPoly operator-(const HomPoly& a, const HomPoly& b) {
    check_same_degree(a, b);
    std::vector<T> out(a.coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.coeffs_[i];
    return HomPoly(std::move(out));
  }

  friend bool operator==(const HomPoly& a, const HomPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  static void check_same_degree(const HomPoly& a, const HomPoly& b) {
    if (a.degree() != b.degree()) {
      throw Error(ErrorCode::InvalidArgument, "forms of different degree cannot be added");
    }
  }

  std::vector<T> coeffs_;
};

template <class T>
using FormPair = std::pair<HomPoly<T>, HomPoly<T>>;

/// H wedge F = H1 F2 - H2 F1.
template <class T>
HomPoly<T> wedge_forms(const FormPair<T>& h, const FormPair<T>& f) {
  return h.first * f.second - h.second * f.first;
}

/// F^{on n}(X,Y) wedge (X,Y) = F1 Y - F2 X.
template <class T>
HomPoly<T> wedge_with_identity(const FormPair<T>& f) {
  const auto x = HomPoly<T>::monomial(1, 0);
  const auto y = HomPoly<T>::monomial(0, 1);
  return f.first * y - f.second * x;
}

/// G(H1, H2) for a form G of degree d.
template <class T>
HomPoly<T> substitute(const HomPoly<T>& g, const FormPair<T>& h) {
  const int d = g.degree();
  const int e = h.first.degree();
  std::vector<HomPoly<T>> p1{HomPoly<T>::monomial(0, 0)};
  std::vector<HomPoly<T>> p2{HomPoly<T>::monomial(0, 0)};
  for (int k = 1; k <= d; ++k) {
    p1.push_back(p1.back() * h.first);
    p2.push_back(p2.back() * h.second);
  }
  auto out = HomPoly<T>::zero(d * e);
  for (int j = 0; j <= d; ++j) {
    if (g[j] == T(0)) continue;
    out = out + (p1[j] * p2[d - j]) * g[j];
  }
  return out;
}

/// G o H as a pair of forms.
template <class T>
FormPair<T> compose(const FormPair<T>& g, const FormPair<T>& h) {
  return {substitute(g.first, h), substitute(g.second, h)};
}

/// n-fold composite of F; refuses outputs above the degree cap.
template <class T>
std::vector<FormPair<T>> iterate_all(const FormPair<T>& f, int n, long degree_cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "iteration count must be positive");
  const long d = f.first.degree();
  long deg = 1;
  for (int k = 0; k < n; ++k) {
    deg *= d;
    if (deg > degree_cap) {
      throw Error(ErrorCode::DegreeCapExceeded,
                  "iterate degree " + std::to_string(d) + "^" + std::to_string(n) +
                      " exceeds cap " + std::to_string(degree_cap));
    }
  }
  std::vector<FormPair<T>> out{f};
  for (int k = 1; k < n; ++k) out.push_back(compose(f, out.back()));
  return out;
}

/// Exact division of binary forms. `rel_tol` is ignored for exact rings; for
/// floating coefficients it bounds the remainder relative to the dividend.
template <class T>
HomPoly<T> divide_exact(const HomPoly<T>& num, const HomPoly<T>& den, double rel_tol = 0.0) {
  using Tr = ScalarTraits<T>;
  const int qdeg = num.degree() - den.degree();
  if (qdeg < 0) throw Error(ErrorCode::InexactDivision, "divisor has larger degree");
  const double den_scale = den.max_magnitude();
  const double num_scale = num.max_magnitude();
  if (den_scale == 0.0) throw Error(ErrorCode::InexactDivision, "division by the zero form");
  auto nonzero = [&](const T& c, double scale) {
    if constexpr (Tr::exact) {
      return c != T(0);
    } else {
      return Tr::magnitude(c) > rel_tol * scale;
    }
  };
  int top_den = den.degree();
  while (!nonzero(den[top_den], den_scale)) --top_den;
  std::vector<T> rem(num.coeffs().begin(), num.coeffs().end());
  std::vector<T> quot(qdeg + 1, T(0));
  for (int k = num.degree(); k >= top_den; --k) {
    if (rem[k] == T(0)) continue;
    const int qi = k - top_den;
    if (qi > qdeg) {
      if (nonzero(rem[k], num_scale)) {
        throw Error(ErrorCode::InexactDivision, "quotient would exceed the expected degree");
      }
      rem[k] = T(0);
      continue;
    }
    const T q = rem[k] / den[top_den];
    quot[qi] = q;
    for (int j = 0; j <= top_den; ++j) rem[qi + j] -= q * den[j];
    rem[k] = T(0);
  }
  for (int k = 0; k < top_den; ++k) {
    if (nonzero(rem[k], num_scale)) {
      throw Error(ErrorCode::InexactDivision, "nonzero remainder in exact division");
    }
  }
  return HomPoly<T>(std::move(quot));
}

}  // namespace fekete_dyn
