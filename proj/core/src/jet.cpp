#include "sesqui/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sesqui/error.hpp"

namespace sesqui {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > Jet::kMaxDegree) {
    throw StructuralError("jet degree " + std::to_string(degree) + " outside [0, " +
                          std::to_string(Jet::kMaxDegree) + "]");
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Jet Jet::constant(double value, int degree) {
  check_degree(degree);
  Jet j;
  j.coeffs_[0] = value;
  j.degree_ = degree;
  return j;
}

Jet Jet::variable(double at, int degree) {
  Jet j = constant(at, degree);
  if (degree >= 1) j.coeffs_[1] = 1.0;
  return j;
}

Jet Jet::from_coefficients(std::span<const double> coefficients) {
  if (coefficients.empty()) throw StructuralError("jet needs at least one coefficient");
  Jet j;
  j.degree_ = static_cast<int>(coefficients.size()) - 1;
  check_degree(j.degree_);
  std::copy(coefficients.begin(), coefficients.end(), j.coeffs_.begin());
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > degree_) {
    throw StructuralError("derivative order " + std::to_string(k) + " exceeds jet degree " +
                          std::to_string(degree_));
  }
  return coeffs_[k] * factorial(k);
}

Jet Jet::derivative() const {
  if (degree_ == 0) throw StructuralError("cannot differentiate a degree-0 jet");
  Jet d;
  d.degree_ = degree_ - 1;
  for (int k = 0; k < degree_; ++k) d.coeffs_[k] = coeffs_[k + 1] * (k + 1);
  return d;
}

Jet Jet::truncated(int degree) const {
  check_degree(degree);
  Jet t;
  t.degree_ = std::min(degree, degree_);
  std::copy_n(coeffs_.begin(), t.degree_ + 1, t.coeffs_.begin());
  return t;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (int k = 0; k <= degree_; ++k) r.coeffs_[k] = -coeffs_[k];
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  degree_ = std::min(degree_, rhs.degree_);
  for (int k = 0; k <= degree_; ++k) coeffs_[k] += rhs.coeffs_[k];
  for (int k = degree_ + 1; k <= kMaxDegree; ++k) coeffs_[k] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  degree_ = std::min(degree_, rhs.degree_);
  for (int k = 0; k <= degree_; ++k) coeffs_[k] -= rhs.coeffs_[k];
  for (int k = degree_ + 1; k <= kMaxDegree; ++k) coeffs_[k] = 0.0;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator*=(double s) {
  for (int k = 0; k <= degree_; ++k) coeffs_[k] *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.degree_ = std::min(a.degree_, b.degree_);
  for (int k = 0; k <= r.degree_; ++k) {
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) acc += a.coeffs_[i] * b.coeffs_[k - i];
    r.coeffs_[k] = acc;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.coeffs_[0] == 0.0) throw DomainError("division by zero");
  Jet q;
  q.degree_ = std::min(a.degree_, b.degree_);
  for (int k = 0; k <= q.degree_; ++k) {
    double acc = a.coeffs_[k];
    for (int j = 1; j <= k; ++j) acc -= b.coeffs_[j] * q.coeffs_[k - j];
    q.coeffs_[k] = acc / b.coeffs_[0];
  }
  return q;
}

namespace {

// s' = c u', c' = -s u' solved coefficient by coefficient.
void sin_cos(const Jet& u, Jet& s, Jet& c) {
  const int d = u.degree();
  std::array<double, Jet::kMaxDegree + 1> sc{}, cc{};
  sc[0] = std::sin(u.value());
  cc[0] = std::cos(u.value());
  for (int k = 1; k <= d; ++k) {
    double as = 0.0, ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double ju = j * u.coefficient(j);
      as += ju * cc[k - j];
      ac -= ju * sc[k - j];
    }
    sc[k] = as / k;
    cc[k] = ac / k;
  }
  s = Jet::from_coefficients(std::span<const double>(sc.data(), d + 1));
  c = Jet::from_coefficients(std::span<const double>(cc.data(), d + 1));
}

}  // namespace

Jet sin(const Jet& x) {
  Jet s, c;
  sin_cos(x, s, c);
  return s;
}

Jet cos(const Jet& x) {
  Jet s, c;
  sin_cos(x, s, c);
  return c;
}

Jet exp(const Jet& x) {
  const int d = x.degree();
  std::array<double, Jet::kMaxDegree + 1> e{};
  e[0] = std::exp(x.value());
  for (int k = 1; k <= d; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * x.coefficient(j) * e[k - j];
    e[k] = acc / k;
  }
  return Jet::from_coefficients(std::span<const double>(e.data(), d + 1));
}

Jet log(const Jet& x) {
  if (!(x.value() > 0.0)) throw DomainError("logarithm of a non-positive value");
  const int d = x.degree();
  std::array<double, Jet::kMaxDegree + 1> l{};
  l[0] = std::log(x.value());
  for (int k = 1; k <= d; ++k) {
    double acc = k * x.coefficient(k);
    for (int j = 1; j < k; ++j) acc -= j * l[j] * x.coefficient(k - j);
    l[k] = acc / (k * x.value());
  }
  return Jet::from_coefficients(std::span<const double>(l.data(), d + 1));
}

Jet sqrt(const Jet& x) {
  const int d = x.degree();
  if (x.value() < 0.0) throw DomainError("square root of a negative value");
  if (x.value() == 0.0) {
    if (d == 0) return Jet::constant(0.0, 0);
    throw DomainError("square root is not differentiable at zero");
  }
  std::array<double, Jet::kMaxDegree + 1> r{};
  r[0] = std::sqrt(x.value());
  for (int k = 1; k <= d; ++k) {
    double acc = x.coefficient(k);
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2.0 * r[0]);
  }
  return Jet::from_coefficients(std::span<const double>(r.data(), d + 1));
}

Jet pow(const Jet& base, int exponent) {
  if (exponent < 0) return Jet::constant(1.0, base.degree()) / pow(base, -exponent);
  Jet result = Jet::constant(1.0, base.degree());
  Jet square = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result = result * square;
    if (e > 1) square = square * square;
  }
  return result;
}

Jet pow(const Jet& base, const Jet& exponent) {
  bool constant_exponent = true;
  for (int k = 1; k <= exponent.degree(); ++k) {
    if (exponent.coefficient(k) != 0.0) constant_exponent = false;
  }
  const double e = exponent.value();
  if (constant_exponent && e == std::nearbyint(e) && std::abs(e) < 1e9) {
    return pow(base.truncated(std::min(base.degree(), exponent.degree())), static_cast<int>(e));
  }
  if (!(base.value() > 0.0)) {
    throw DomainError("non-positive base raised to a non-integer power");
  }
  return exp(exponent * log(base));
}

}  // namespace sesqui
