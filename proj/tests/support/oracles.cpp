#include "oracles.hpp"

namespace sesqui::testing {

Eigen::MatrixXd coordinate_metric(const Eigen::VectorXd& p) {
  const Eigen::Index dim = p.size(), n = (dim - 1) / 2;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < n; ++i) eta(i) = -0.5 * p(n + i);
  eta(dim - 1) = 0.5;
  Eigen::MatrixXd g = eta * eta.transpose();
  for (Eigen::Index i = 0; i < 2 * n; ++i) g(i, i) += 0.25;
  return g;
}

namespace {

template <class F>
Eigen::MatrixXd central(const F& f, const Eigen::VectorXd& p, Eigen::Index k, double h) {
  Eigen::VectorXd a = p, b = p, c = p, d = p;
  a(k) += 2 * h;
  b(k) += h;
  c(k) -= h;
  d(k) -= 2 * h;
  return ((f(d) - f(a)) + 8.0 * (f(b) - f(c))) / (12.0 * h);
}

}  // namespace

std::vector<Eigen::MatrixXd> christoffel_fd(const Eigen::VectorXd& p, double h) {
  const Eigen::Index dim = p.size();
  std::vector<Eigen::MatrixXd> dg;
  for (Eigen::Index k = 0; k < dim; ++k) {
    dg.push_back(central([](const Eigen::VectorXd& q) -> Eigen::MatrixXd { return coordinate_metric(q); }, p, k, h));
  }
  const Eigen::MatrixXd ginv = coordinate_metric(p).inverse();
  std::vector<Eigen::MatrixXd> gamma(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (Eigen::Index l = 0; l < dim; ++l) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        double acc = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) acc += ginv(l, m) * (dg[i](m, j) + dg[j](m, i) - dg[m](i, j));
        gamma[l](i, j) = 0.5 * acc;
      }
    }
  }
  return gamma;
}

Eigen::VectorXd levi_civita_fd(const Eigen::VectorXd& p, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const auto gamma = christoffel_fd(p);
  Eigen::VectorXd out(p.size());
  for (Eigen::Index l = 0; l < p.size(); ++l) out(l) = x.dot(gamma[l] * v);
  return out;
}

Eigen::VectorXd riemann_fd(const Eigen::VectorXd& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& z, double h) {
  const Eigen::Index dim = p.size();
  const auto gamma = christoffel_fd(p, h);
  // dgamma[i][l](j, k) = d_i Gamma^l_{jk}
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    std::vector<Eigen::MatrixXd> a[4];
    const double off[4] = {2 * h, h, -h, -2 * h};
    for (int s = 0; s < 4; ++s) {
      Eigen::VectorXd q = p;
      q(i) += off[s];
      a[s] = christoffel_fd(q, h);
    }
    for (Eigen::Index l = 0; l < dim; ++l) {
      dgamma[i].push_back(((a[3][l] - a[0][l]) + 8.0 * (a[1][l] - a[2][l])) / (12.0 * h));
    }
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index l = 0; l < dim; ++l) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) {
          double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (Eigen::Index m = 0; m < dim; ++m) r += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          acc += r * x(i) * y(j) * z(k);
        }
      }
    }
    out(l) = acc;
  }
  return out;
}

}  // namespace sesqui::testing
