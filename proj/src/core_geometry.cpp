#include "fekete_dyn/core_geometry.hpp"

#include <algorithm>
#include <numbers>

#include <Eigen/Dense>

namespace fekete_dyn {

double norm(const Lift& z) { return std::hypot(std::abs(z[0]), std::abs(z[1])); }

Complex wedge(const Lift& x, const Lift& y) { return x[0] * y[1] - x[1] * y[0]; }

ProjPoint::ProjPoint(Complex x1, Complex x2, int precision_bits) : precision_bits_(precision_bits) {
  const double m = std::max(std::abs(x1), std::abs(x2));
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::InvalidArgument, "a projective point needs a finite nonzero lift");
  }
  // Dividing by the dominant coordinate itself makes it exactly one.
  if (std::abs(x1) >= std::abs(x2)) {
    lift_ = {Complex(1.0), x2 / x1};
  } else {
    lift_ = {x1 / x2, Complex(1.0)};
  }
}

Lift ProjPoint::unit_lift() const {
  const double n = norm(lift_);
  return {lift_[0] / n, lift_[1] / n};
}

Complex ProjPoint::to_affine() const {
  if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0.0};
  return lift_[0] / lift_[1];
}

Complex wedge(const ProjPoint& x, const ProjPoint& y) { return wedge(x.lift(), y.lift()); }

double spherical_dist(const Lift& x, const Lift& y) {
  const double d = std::abs(wedge(x, y)) / (norm(x) * norm(y));
  return std::min(d, 1.0);
}

double spherical_dist(const ProjPoint& x, const ProjPoint& y) { return spherical_dist(x.lift(), y.lift()); }

bool projectively_equal(const ProjPoint& x, const ProjPoint& y, double tol) {
  return spherical_dist(x, y) <= tol;
}

Lift act(const Mat2& u, const Lift& z) {
  return {u[0][0] * z[0] + u[0][1] * z[1], u[1][0] * z[0] + u[1][1] * z[1]};
}

Mat2 adjoint(const Mat2& u) {
  return {{{std::conj(u[0][0]), std::conj(u[1][0])}, {std::conj(u[0][1]), std::conj(u[1][1])}}};
}

Mat2 isometry_from_origin(const ProjPoint& z) {
  const Lift w = z.unit_lift();
  const Complex a = w[0], b = w[1];
  return {{{std::conj(b), a}, {-std::conj(a), b}}};
}

ProjPoint uniform_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double x, y, t, r;
  do {
    x = g(rng);
    y = g(rng);
    t = g(rng);
    r = std::sqrt(x * x + y * y + t * t);
  } while (!(r > 0.0));
  x /= r;
  y /= r;
  t /= r;
  // Inverse stereographic projection; (x + iy)/(1 - t) = (1 + t)/(x - iy).
  if (t <= 0.0) return ProjPoint(Complex(x, y), Complex(1.0 - t));
  return ProjPoint(Complex(1.0 + t), Complex(x, -y));
}

ProjPoint point_at_distance_from_origin(double delta, double theta) {
  // d(0, z) = |z| / sqrt(1 + |z|^2).
  const double s = std::sqrt(std::max(0.0, 1.0 - delta * delta));
  return ProjPoint(std::polar(delta, theta), Complex(s));
}

Complex resultant(const HomPolyC& f1, const HomPolyC& f2) {
  const int d = f1.degree();
  if (d < 1 || f2.degree() != d) {
    throw Error(ErrorCode::InvalidArgument, "resultant needs two forms of equal degree >= 1");
  }
  const int size = 2 * d;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  // Row i of each block holds a_d..a_0 shifted i places to the right.
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k <= d; ++k) {
      s(i, i + k) = f1[d - k];
      s(d + i, i + k) = f2[d - k];
    }
  }
  return s.partialPivLu().determinant();
}

namespace {

// |Res| must be distinguishable from rounding noise in a determinant whose
// entries are the coefficients; the determinant is of degree d in each form.
bool resultant_vanishes(Complex res, const HomPolyC& f1, const HomPolyC& f2, double tol) {
  const int d = f1.degree();
  const double scale = std::pow(std::max(1.0, f1.max_magnitude()), d) *
                       std::pow(std::max(1.0, f2.max_magnitude()), d);
  return !(std::abs(res) > tol * scale);
}

}  // namespace

RationalMapLift::RationalMapLift(HomPolyC f1, HomPolyC f2, Precision precision)
    : f1_(std::move(f1)), f2_(std::move(f2)), precision_(precision) {
  if (f1_.degree() != f2_.degree()) {
    throw Error(ErrorCode::InvalidArgument, "numerator and denominator need equal degree");
  }
  if (f1_.degree() < 2) throw Error(ErrorCode::InvalidArgument, "map degree must be at least 2");
  resultant_ = fekete_dyn::resultant(f1_, f2_);
  if (resultant_vanishes(resultant_, f1_, f2_, precision_.tolerance())) {
    throw Error(ErrorCode::DegenerateLift, "F1 and F2 share a projective zero (Res(F) = 0)");
  }
  normalized_ = std::abs(resultant_ - Complex(1.0)) <= precision_.tolerance() * 16.0;
}

FormJet evaluate_jet(const HomPolyC& p, const Lift& z) {
  const int deg = p.degree();
  // Powers of X and Y; callers pass bounded lifts so these stay finite.
  Complex value(0.0), dx(0.0), dy(0.0);
  std::array<Complex, 64> small_x{}, small_y{};
  std::vector<Complex> big_x, big_y;
  Complex* px = small_x.data();
  Complex* py = small_y.data();
  if (deg + 1 > 64) {
    big_x.resize(deg + 1);
    big_y.resize(deg + 1);
    px = big_x.data();
    py = big_y.data();
  }
  px[0] = py[0] = Complex(1.0);
  for (int k = 1; k <= deg; ++k) {
    px[k] = px[k - 1] * z[0];
    py[k] = py[k - 1] * z[1];
  }
  for (int j = 0; j <= deg; ++j) {
    const Complex c = p[j];
    if (c == Complex(0.0)) continue;
    value += c * px[j] * py[deg - j];
    if (j > 0) dx += c * double(j) * px[j - 1] * py[deg - j];
    if (j < deg) dy += c * double(deg - j) * px[j] * py[deg - j - 1];
  }
  return {value, dx, dy};
}

Lift RationalMapLift::apply(const Lift& z) const {
  return {f1_.evaluate(z[0], z[1]), f2_.evaluate(z[0], z[1])};
}

Mat2 RationalMapLift::jacobian(const Lift& z) const {
  const FormJet a = evaluate_jet(f1_, z);
  const FormJet b = evaluate_jet(f2_, z);
  return {{{a.dx, a.dy}, {b.dx, b.dy}}};
}

RationalMapLift RationalMapLift::scaled(Complex c) const {
  return RationalMapLift(f1_ * c, f2_ * c, precision_);
}

ProjPoint RationalMapLift::operator()(const ProjPoint& z) const {
  return ProjPoint(apply(z.unit_lift()), z.precision_bits());
}

double RationalMapLift::coefficient_l1() const {
  double s = 0.0;
  for (const auto& c : f1_.coeffs()) s += std::abs(c);
  for (const auto& c : f2_.coeffs()) s += std::abs(c);
  return s;
}

Complex resultant(const RationalMapLift& f) { return f.resultant(); }

RationalMapLift normalize_good_lift(const RationalMapLift& f) {
  if (f.normalized()) return f;
  const Complex c = std::exp(-std::log(f.resultant()) / double(2 * f.degree()));
  return f.scaled(c);
}

FormPair<Complex> iterate(const RationalMapLift& f, int n, long degree_cap) {
  return iterate_all(f.forms(), n, degree_cap).back();
}

}  // namespace fekete_dyn
