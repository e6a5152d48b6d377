#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include "fekete_dyn/hom_poly.hpp"

namespace fekete_dyn {

using Complex = std::complex<double>;
using Lift = std::array<Complex, 2>;
using HomPolyC = HomPoly<Complex>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

/// Working precision in bits. All tolerances scale as 2^(10 - bits).
struct Precision {
  int bits = 53;

  double tolerance() const { return std::ldexp(1.0, 10 - bits); }
};

inline constexpr long kDefaultDegreeCap = 4096;

double norm(const Lift& z);

/// X1 Y2 - X2 Y1
Complex wedge(const Lift& x, const Lift& y);

/// A point of the complex projective line. The stored lift is max-normalized:
/// its larger coordinate has modulus exactly one.
class ProjPoint {
 public:
  ProjPoint() : lift_{Complex(0.0), Complex(1.0)} {}
  ProjPoint(Complex x1, Complex x2, int precision_bits = 53);
  explicit ProjPoint(const Lift& z, int precision_bits = 53) : ProjPoint(z[0], z[1], precision_bits) {}

  static ProjPoint affine(Complex z, int precision_bits = 53) { return {z, Complex(1.0), precision_bits}; }
  static ProjPoint infinity(int precision_bits = 53) { return {Complex(1.0), Complex(0.0), precision_bits}; }

  const Lift& lift() const { return lift_; }
  Complex x1() const { return lift_[0]; }
  Complex x2() const { return lift_[1]; }
  int precision_bits() const { return precision_bits_; }

  /// Unit-norm representative in the Euclidean norm.
  Lift unit_lift() const;

  /// X1/X2; infinite when X2 = 0.
  Complex to_affine() const;
  bool is_infinity() const { return lift_[1] == Complex(0.0); }

 private:
  Lift lift_;
  int precision_bits_ = 53;
};

Complex wedge(const ProjPoint& x, const ProjPoint& y);

/// Chordal distance |X^Y| / (|X| |Y|), lies in [0, 1].
double spherical_dist(const Lift& x, const Lift& y);
double spherical_dist(const ProjPoint& x, const ProjPoint& y);

/// Projective equality up to the working-precision tolerance.
bool projectively_equal(const ProjPoint& x, const ProjPoint& y, double tol);

Lift act(const Mat2& u, const Lift& z);
Mat2 adjoint(const Mat2& u);

/// Unitary matrix mapping (0, 1) to the unit lift of z; an isometry of the
/// spherical distance sending 0 to z.
Mat2 isometry_from_origin(const ProjPoint& z);

/// Point drawn from the normalized spherical area measure.
ProjPoint uniform_sphere_point(std::mt19937_64& rng);

/// The point at spherical distance delta from 0 in direction theta.
ProjPoint point_at_distance_from_origin(double delta, double theta);

/// Determinant of the 2d x 2d Sylvester-type matrix of (F1, F2).
Complex resultant(const HomPolyC& f1, const HomPolyC& f2);

class RationalMapLift {
 public:
  RationalMapLift(HomPolyC f1, HomPolyC f2, Precision precision = {});

  int degree() const { return f1_.degree(); }
  const HomPolyC& f1() const { return f1_; }
  const HomPolyC& f2() const { return f2_; }
  FormPair<Complex> forms() const { return {f1_, f2_}; }
  Complex resultant() const { return resultant_; }
  bool normalized() const { return normalized_; }
  Precision precision() const { return precision_; }

  Lift apply(const Lift& z) const;
  /// Jacobian of (F1, F2) at z; rows are the gradients of F1 and F2.
  Mat2 jacobian(const Lift& z) const;

  RationalMapLift scaled(Complex c) const;

  /// Image of a point under the induced map of the projective line.
  ProjPoint operator()(const ProjPoint& z) const;

  /// Sum of coefficient moduli of F1 and F2.
  double coefficient_l1() const;

 private:
  HomPolyC f1_;
  HomPolyC f2_;
  Complex resultant_;
  bool normalized_ = false;
  Precision precision_;
};

Complex resultant(const RationalMapLift& f);

/// cF with c the principal 2d-th root of 1/Res(F).
RationalMapLift normalize_good_lift(const RationalMapLift& f);

/// Coefficients of F^{on n}; throws DegreeCapExceeded above the cap.
FormPair<Complex> iterate(const RationalMapLift& f, int n, long degree_cap = kDefaultDegreeCap);

/// Point evaluation of a binary form together with d/dX and d/dY.
struct FormJet {
  Complex value;
  Complex dx;
  Complex dy;
};
FormJet evaluate_jet(const HomPolyC& p, const Lift& z);

}  // namespace fekete_dyn
