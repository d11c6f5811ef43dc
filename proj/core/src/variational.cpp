#include "sesqui/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sesqui/error.hpp"

namespace sesqui {

namespace {

// Vertices kept fixed at each end of an open curve: every density a free vertex touches
// is then part of the quadrature.
constexpr int kClamp = 4;
constexpr int kResidualSkip = 8;

struct Density {
  double speed2 = 0.0;
  double accel2 = 0.0;
};

int wrap(int j, int n) { return ((j % n) + n) % n; }

Density density_at(const DiscreteCurve& c, int j) {
  const int size = static_cast<int>(c.size());
  const int dim = 2 * c.n + 1;
  const auto& pm2 = c.points[wrap(j - 2, size)];
  const auto& pm1 = c.points[wrap(j - 1, size)];
  const auto& p0 = c.points[j];
  const auto& pp1 = c.points[wrap(j + 1, size)];
  const auto& pp2 = c.points[wrap(j + 2, size)];
  std::vector<double> u(dim), a(dim);
  const double h = c.h;
  for (int k = 0; k < dim; ++k) {
    u[k] = (pm2[k] - 8.0 * pm1[k] + 8.0 * pp1[k] - pp2[k]) / (12.0 * h);
    a[k] = (-pm2[k] + 16.0 * pm1[k] - 30.0 * p0[k] + 16.0 * pp1[k] - pp2[k]) / (12.0 * h * h);
  }
  const FrameVec<double> p = coords_to_frame<double>(p0, u);
  const int n = c.n;
  FrameVec<double> dp(dim);
  double vertical = a[2 * n];
  for (int i = 0; i < n; ++i) {
    dp[i] = 0.5 * a[n + i];
    dp[n + i] = 0.5 * a[i];
    vertical -= p0[n + i] * a[i] + u[n + i] * u[i];
  }
  dp[2 * n] = 0.5 * vertical;
  const FrameVec<double> acc = covariant_derivative(p, p, dp);
  return {frame_dot(p, p), frame_dot(acc, acc)};
}

bool in_quadrature(const DiscreteCurve& c, int j) {
  if (c.closed) return true;
  return j >= 2 && j < static_cast<int>(c.size()) - 2;
}

bool is_free(const DiscreteCurve& c, int j) {
  if (c.closed) return true;
  return j >= kClamp && j < static_cast<int>(c.size()) - kClamp;
}

double local_energy(const DiscreteCurve& c, DeltaPair delta, int j) {
  const int size = static_cast<int>(c.size());
  double e = 0.0;
  for (int o = -2; o <= 2; ++o) {
    const int v = c.closed ? wrap(j + o, size) : j + o;
    if (v < 0 || v >= size || !in_quadrature(c, v)) continue;
    const Density d = density_at(c, v);
    e += c.h * (delta.delta1 * d.speed2 + delta.delta2 * d.accel2);
  }
  return e;
}

std::vector<std::vector<double>> column_derivatives(const std::vector<std::vector<double>>& rows, double h,
                                                    bool periodic) {
  const std::size_t ns = rows.size(), dim = rows.front().size();
  std::vector<std::vector<double>> out(ns, std::vector<double>(dim));
  std::vector<double> col(ns);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < ns; ++j) col[j] = rows[j][k];
    const auto d = grid_derivative(col, h, periodic);
    for (std::size_t j = 0; j < ns; ++j) out[j][k] = d[j];
  }
  return out;
}

}  // namespace

DiscreteCurve DiscreteCurve::sample(const CurveSpec& spec, const Grid& grid) {
  grid.validate();
  DiscreteCurve c;
  c.n = spec.n();
  c.closed = grid.periodic;
  c.h = grid.step();
  c.points.reserve(grid.samples);
  for (int j = 0; j < grid.samples; ++j) c.points.push_back(spec.jet(grid.at(j), 0).values());
  return c;
}

void DiscreteCurve::validate() const {
  if (n < 1) throw StructuralError("discrete curve needs n >= 1");
  if (points.size() < 5) throw StructuralError("discrete curve needs at least 5 vertices");
  if (!(h > 0.0)) throw StructuralError("discrete curve needs a positive parameter spacing");
  const std::size_t dim = static_cast<std::size_t>(2 * n + 1);
  for (const auto& p : points) {
    if (p.size() != dim) throw StructuralError("discrete curve vertex has the wrong dimension");
  }
  const std::size_t segments = closed ? points.size() : points.size() - 1;
  for (std::size_t j = 0; j < segments; ++j) {
    const auto& a = points[j];
    const auto& b = points[(j + 1) % points.size()];
    if (a == b) throw GeometryError("degenerate segment (repeated vertex " + std::to_string(j) + ")", j * h);
  }
}

EnergyBreakdown discrete_energy(const DiscreteCurve& curve, DeltaPair delta) {
  curve.validate();
  EnergyBreakdown e;
  for (int j = 0; j < static_cast<int>(curve.size()); ++j) {
    if (!in_quadrature(curve, j)) continue;
    const Density d = density_at(curve, j);
    e.dirichlet += curve.h * d.speed2;
    e.bending += curve.h * d.accel2;
  }
  e.dirichlet *= delta.delta1;
  e.bending *= delta.delta2;
  e.total = e.dirichlet + e.bending;
  return e;
}

std::vector<std::vector<double>> energy_gradient(const DiscreteCurve& curve, DeltaPair delta, double step) {
  curve.validate();
  if (!(step > 0.0)) throw StructuralError("gradient step must be positive");
  const int size = static_cast<int>(curve.size());
  const int dim = 2 * curve.n + 1;
  std::vector<std::vector<double>> g(size, std::vector<double>(dim, 0.0));
  DiscreteCurve work = curve;
  for (int j = 0; j < size; ++j) {
    if (!is_free(curve, j)) continue;
    for (int k = 0; k < dim; ++k) {
      const double x0 = curve.points[j][k];
      const double s = step * std::max(1.0, std::abs(x0));
      work.points[j][k] = x0 + s;
      const double ep = local_energy(work, delta, j);
      work.points[j][k] = x0 - s;
      const double em = local_energy(work, delta, j);
      work.points[j][k] = x0;
      g[j][k] = (ep - em) / (2.0 * s);
    }
  }
  return g;
}

double max_legendre_defect(const DiscreteCurve& curve) {
  curve.validate();
  const auto u = column_derivatives(curve.points, curve.h, curve.closed);
  double worst = 0.0;
  for (std::size_t j = 0; j < curve.size(); ++j) {
    const FrameVec<double> p = coords_to_frame<double>(curve.points[j], u[j]);
    worst = std::max(worst, std::abs(frame_eta(p)));
  }
  return worst;
}

double discrete_residual(const DiscreteCurve& curve, DeltaPair delta) {
  curve.validate();
  const auto u = column_derivatives(curve.points, curve.h, curve.closed);
  const std::size_t ns = curve.size();
  std::vector<FrameVec<double>> p(ns), v1(ns), v2(ns), v3(ns);
  for (std::size_t j = 0; j < ns; ++j) p[j] = coords_to_frame<double>(curve.points[j], u[j]);
  auto along = [&](const std::vector<FrameVec<double>>& field, std::vector<FrameVec<double>>& out) {
    const auto d = column_derivatives(field, curve.h, curve.closed);
    for (std::size_t j = 0; j < ns; ++j) out[j] = covariant_derivative(p[j], field[j], d[j]);
  };
  along(p, v1);
  along(v1, v2);
  along(v2, v3);
  double worst = 0.0;
  const std::size_t skip = curve.closed ? 0 : kResidualSkip;
  if (!curve.closed && ns <= 2 * skip) throw StructuralError("open curve too short for the residual stencil");
  for (std::size_t j = skip; j + skip < ns; ++j) {
    const FrameVec<double> r = curvature_general(-3.0, p[j], v1[j], p[j]);
    FrameVec<double> res(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) res[k] = delta.delta2 * (v3[j][k] - r[k]) - delta.delta1 * v1[j][k];
    worst = std::max(worst, std::sqrt(frame_dot(res, res)));
  }
  return worst;
}

std::vector<FrameVec<double>> parametric_residual(const CurveSpec& spec, const Grid& grid, DeltaPair delta) {
  grid.validate();
  std::vector<FrameVec<double>> out;
  out.reserve(grid.samples);
  const int dim = spec.dim();
  for (int j = 0; j < grid.samples; ++j) {
    const CoordinateJet cj = spec.jet(grid.at(j), 4);
    std::vector<Jet> vel(dim);
    for (int k = 0; k < dim; ++k) vel[k] = cj.coords[k].derivative();
    const FrameVec<Jet> p = coords_to_frame<Jet>(cj.coords, vel);
    auto along = [&p](const FrameVec<Jet>& v) {
      FrameVec<Jet> d(v.size());
      for (std::size_t k = 0; k < v.size(); ++k) d[k] = v[k].derivative();
      return covariant_derivative(p, v, d);
    };
    const FrameVec<Jet> v1 = along(p);
    const FrameVec<Jet> v2 = along(v1);
    const FrameVec<Jet> v3 = along(v2);
    FrameVec<double> pv(dim), v1v(dim);
    for (int k = 0; k < dim; ++k) {
      pv[k] = p[k].value();
      v1v[k] = v1[k].value();
    }
    const FrameVec<double> r = curvature_general(-3.0, pv, v1v, pv);
    FrameVec<double> res(dim);
    for (int k = 0; k < dim; ++k) res[k] = delta.delta2 * (v3[k].value() - r[k]) - delta.delta1 * v1v[k];
    out.push_back(std::move(res));
  }
  return out;
}

FirstVariationReport first_variation_check(const CurveSpec& spec, const Grid& grid, DeltaPair delta,
                                           const Variation& v, int sigma, double epsilon) {
  if (sigma != 1 && sigma != -1) throw StructuralError("variation sign must be +1 or -1");
  if (!(epsilon > 0.0)) throw StructuralError("variation amplitude must be positive");
  const DiscreteCurve base = DiscreteCurve::sample(spec, grid);
  const int size = static_cast<int>(base.size());
  const int dim = spec.dim();
  std::vector<std::vector<double>> field(size);
  double vmax = 0.0;
  for (int j = 0; j < size; ++j) {
    field[j] = v(grid.at(j));
    if (static_cast<int>(field[j].size()) != dim) throw StructuralError("variation has the wrong dimension");
    for (double x : field[j]) vmax = std::max(vmax, std::abs(x));
  }
  if (!base.closed) {
    for (int j = 0; j < size; ++j) {
      if (is_free(base, j)) continue;
      for (double x : field[j]) {
        if (std::abs(x) > 1e-12 * std::max(1.0, vmax)) {
          std::ostringstream os;
          os << "variation is not compactly supported: it moves fixed vertex " << j;
          throw StructuralError(os.str());
        }
      }
    }
  }

  DiscreteCurve plus = base, minus = base;
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < dim; ++k) {
      plus.points[j][k] += epsilon * field[j][k];
      minus.points[j][k] -= epsilon * field[j][k];
    }
  }
  FirstVariationReport r;
  r.sigma = sigma;
  r.h = grid.step();
  r.epsilon = epsilon;
  r.measured = (discrete_energy(plus, delta).total - discrete_energy(minus, delta).total) / (2.0 * epsilon);

  const std::vector<FrameVec<double>> tau = parametric_residual(spec, grid, delta);
  double integral = 0.0;
  for (int j = 0; j < size; ++j) {
    const FrameVec<double> vf = coords_to_frame<double>(base.points[j], field[j]);
    integral += r.h * frame_dot(tau[j], vf);
  }
  r.predicted = 2.0 * integral;
  r.difference = r.measured - sigma * r.predicted;
  return r;
}

int calibrate_variation_sign(const CurveSpec& spec, const Grid& grid, DeltaPair delta, const Variation& v,
                             double epsilon) {
  const FirstVariationReport r = first_variation_check(spec, grid, delta, v, 1, epsilon);
  if (std::abs(r.predicted) < 1e-6 || std::abs(r.measured) < 1e-6) {
    std::ostringstream os;
    os << "first variation too small to calibrate its sign (predicted " << r.predicted << ", measured " << r.measured
       << ")";
    throw NumericError(os.str());
  }
  return r.measured * r.predicted > 0.0 ? 1 : -1;
}

Trajectory descend(DiscreteCurve curve, DeltaPair delta, const DescentOptions& options) {
  curve.validate();
  if (options.steps < 0) throw StructuralError("descent steps must be >= 0");
  if (!(options.rate > 0.0)) throw StructuralError("descent rate must be positive");
  const int size = static_cast<int>(curve.size());
  const int n = curve.n;
  const int dim = 2 * n + 1;

  Trajectory out;
  double energy = discrete_energy(curve, delta).total;
  auto record = [&](int step) {
    out.rows.push_back({step, energy, max_legendre_defect(curve), discrete_residual(curve, delta)});
  };
  record(0);
  out.stop_reason = "completed";

  for (int step = 1; step <= options.steps; ++step) {
    const auto g = energy_gradient(curve, delta);
    // Raise into ker eta: sum over the horizontal frame of G(X_k) X_k.
    std::vector<std::vector<double>> dir(size, std::vector<double>(dim, 0.0));
    double slope = 0.0;
    for (int j = 0; j < size; ++j) {
      const ModelPoint p(curve.points[j]);
      for (int k = 1; k <= 2 * n; ++k) {
        const TangentVec x = frame_field(p, FrameIndex(k, n));
        double gx = 0.0;
        for (int c = 0; c < dim; ++c) gx += g[j][c] * x.comps[c];
        slope += gx * gx;
        for (int c = 0; c < dim; ++c) dir[j][c] += gx * x.comps[c];
      }
    }
    if (std::sqrt(slope) <= 1e-8 * (1.0 + std::abs(energy))) {
      out.stop_reason = "stationary (gradient vanished)";
      break;
    }
    double alpha = options.rate;
    bool accepted = false;
    DiscreteCurve trial = curve;
    double trial_energy = energy;
    while (alpha >= options.min_step) {
      for (int j = 0; j < size; ++j) {
        for (int c = 0; c < dim; ++c) trial.points[j][c] = curve.points[j][c] - alpha * dir[j][c];
      }
      try {
        trial_energy = discrete_energy(trial, delta).total;
      } catch (const GeometryError&) {
        alpha *= 0.5;
        continue;
      }
      if (trial_energy <= energy - options.armijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "step-size underflow at step " << step << " (step below " << options.min_step << ")";
      out.stop_reason = os.str();
      break;
    }
    curve = std::move(trial);
    energy = trial_energy;
    record(step);
  }
  out.final_curve = std::move(curve);
  return out;
}

}  // namespace sesqui
