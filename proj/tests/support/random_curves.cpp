#include "random_curves.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include <Eigen/Dense>

#include "sesqui/error.hpp"
#include "sesqui/frenet.hpp"

namespace sesqui::testing {

std::string literal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

namespace {

Eigen::MatrixXcd random_unitary(int n, CurveFactory& f) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = {f.normal(), f.normal()};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ();
}

}  // namespace

GeneratedCurve CurveFactory::homogeneous(int n, const std::vector<double>& lambda, const std::vector<double>& r,
                                         int expected_order, std::string family) {
  double norm = 0.0;
  for (double x : r) norm += x * x;
  norm = std::sqrt(norm);
  const Eigen::MatrixXcd u = random_unitary(n, *this);
  std::vector<std::string> lines;
  std::vector<std::string> ys;
  // x_k' = 2 Re w_k, y_k' = 2 Im w_k with w_k = sum_j U_kj r_j e^{i lambda_j t}.
  for (int k = 0; k < n; ++k) {
    std::string x = literal(uniform(-1.0, 1.0));
    std::string y = literal(uniform(-1.0, 1.0));
    for (int j = 0; j < n; ++j) {
      const double rj = r[j] / norm;
      const double a = u(k, j).real() * rj, b = u(k, j).imag() * rj;
      const double l = lambda[j];
      if (l == 0.0) {
        x += "+" + literal(2.0 * a) + "*t";
        y += "+" + literal(2.0 * b) + "*t";
      } else {
        const std::string s = "sin(" + literal(l) + "*t)", c = "cos(" + literal(l) + "*t)";
        x += "+" + literal(2.0 * a / l) + "*" + s + "+" + literal(2.0 * b / l) + "*" + c;
        y += "+" + literal(-2.0 * a / l) + "*" + c + "+" + literal(2.0 * b / l) + "*" + s;
      }
    }
    lines.push_back(x);
    ys.push_back(y);
  }
  lines.insert(lines.end(), ys.begin(), ys.end());
  std::vector<Expression> exprs;
  for (const auto& e : lines) exprs.push_back(Expression::parse(e));
  CurveSpec spec = make_legendre(n, std::move(exprs), uniform(-1.0, 1.0));
  return {std::move(spec), expected_order, std::move(family), Grid::open_grid(0.0, 1.5, 48)};
}

GeneratedCurve CurveFactory::line(int n) {
  std::vector<double> r(n);
  for (auto& x : r) x = uniform(0.2, 1.0);
  return homogeneous(n, std::vector<double>(n, 0.0), r, 1, "line");
}

GeneratedCurve CurveFactory::totally_real_circle(int n) {
  std::vector<double> lambda(n, 0.0), r(n, 0.0);
  const double l = uniform(0.5, 3.0);
  lambda[0] = l;
  lambda[1] = -l;
  r[0] = r[1] = 1.0;
  return homogeneous(n, lambda, r, 2, "totally real circle");
}

GeneratedCurve CurveFactory::complex_circle(int n) {
  std::vector<double> r(n);
  for (auto& x : r) x = uniform(0.2, 1.0);
  return homogeneous(n, std::vector<double>(n, uniform(0.5, 3.0) * (uniform(0, 1) < 0.5 ? -1 : 1)), r, 3,
                     "complex circle");
}

GeneratedCurve CurveFactory::generic_helix() {
  double l1 = uniform(0.5, 3.0), l2 = uniform(-3.0, 3.0);
  while (std::abs(std::abs(l2) - l1) < 0.3 || std::abs(l2) < 0.3) l2 = uniform(-3.0, 3.0);
  return homogeneous(2, {l1, l2}, {uniform(0.3, 1.0), uniform(0.3, 1.0)}, 5, "helix");
}

GeneratedCurve CurveFactory::helix_r9() {
  const double a = uniform(1.5, 3.0), b = uniform(0.3, 1.2);
  const double p = uniform(0.3, 1.0), q = uniform(0.3, 1.0);
  return homogeneous(4, {a, -a, b, -b}, {p, p, q, q}, 4, "totally real helix (R^9)");
}

GeneratedCurve CurveFactory::profile(int n, int harmonics) {
  std::vector<Expression> exprs;
  for (int k = 0; k < 2 * n; ++k) {
    std::string e = literal(uniform(-0.3, 0.3)) + "*t";
    for (int h = 1; h <= harmonics; ++h) {
      e += "+" + literal(uniform(-0.6, 0.6) / h) + "*sin(" + std::to_string(h) + "*t)";
      e += "+" + literal(uniform(-0.6, 0.6) / h) + "*cos(" + std::to_string(h) + "*t)";
    }
    exprs.push_back(Expression::parse(e));
  }
  CurveSpec spec = make_legendre(n, std::move(exprs), uniform(-1.0, 1.0));
  return {std::move(spec), 0, "profile", Grid::open_grid(0.2, 1.4, 48)};
}

GeneratedCurve CurveFactory::regular_profile(int n, double min_curvature) {
  for (;;) {
    GeneratedCurve c = profile(n);
    try {
      const FrenetData d = frenet_apparatus(c.spec, Grid::open_grid(c.grid.t0, c.grid.t1, 401));
      bool ok = d.order == 2 * n + 1;
      for (const auto& k : d.curvatures) {
        for (double v : k.value) ok = ok && v >= min_curvature;
      }
      if (ok) {
        c.expected_order = d.order;
        return c;
      }
    } catch (const Error&) {
    }
  }
}

std::vector<GeneratedCurve> CurveFactory::unit_speed_batch(int count) {
  std::vector<GeneratedCurve> out;
  for (int i = 0; i < count; ++i) {
    switch (i % 4) {
      case 0: out.push_back(line()); break;
      case 1: out.push_back(totally_real_circle()); break;
      case 2: out.push_back(complex_circle()); break;
      default: out.push_back(generic_helix()); break;
    }
  }
  return out;
}

}  // namespace sesqui::testing
