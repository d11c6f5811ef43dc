#pragma once

#include <array>
#include <span>

namespace sesqui {

/// Truncated Taylor polynomial of a scalar function of one variable.
///
/// A jet of degree d stores the normalized Taylor coefficients c_k = f^(k)(t0) / k!
/// for k = 0..d. Arithmetic and the elementary functions propagate all coefficients
/// exactly (up to rounding); combining two jets yields the smaller of their degrees.
/// Differentiating a jet lowers its degree by one, which is how higher-order
/// geometric quantities (Frenet frames, curvatures and their derivatives) are
/// obtained from a single coordinate jet without finite differences.
class Jet {
 public:
  static constexpr int kMaxDegree = 16;

  constexpr Jet() = default;

  /// Constant of maximal degree; combines with any jet without truncating it.
  constexpr Jet(double value) { coeffs_[0] = value; }  // NOLINT(google-explicit-constructor)

  static Jet constant(double value, int degree);
  /// The independent variable t expanded around `at`.
  static Jet variable(double at, int degree);
  static Jet from_coefficients(std::span<const double> coefficients);

  int degree() const noexcept { return degree_; }
  double value() const noexcept { return coeffs_[0]; }
  double coefficient(int k) const noexcept { return k <= degree_ ? coeffs_[k] : 0.0; }
  /// k-th derivative at the expansion point.
  double derivative(int k) const;

  /// d/dt, one degree lower.
  Jet derivative() const;
  Jet truncated(int degree) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

 private:
  std::array<double, kMaxDegree + 1> coeffs_{};
  int degree_ = kMaxDegree;
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
/// Throws DomainError for a non-positive value.
Jet log(const Jet& x);
/// Throws DomainError for a negative value; a zero value is only accepted for degree 0.
Jet sqrt(const Jet& x);
Jet pow(const Jet& base, int exponent);
/// Real power via exp(e log b); throws DomainError unless the base is positive.
Jet pow(const Jet& base, const Jet& exponent);

/// Scalar helpers so templated geometry code works on both doubles and jets.
inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace sesqui
