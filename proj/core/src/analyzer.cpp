#include "sesqui/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "sesqui/error.hpp"

namespace sesqui {

namespace {

// T, nabla_T T, nabla_T^2 T, nabla_T^3 T at one parameter value (frame components).
struct TangentDerivatives {
  std::vector<double> point;
  FrameVec<double> t, v1, v2, v3;
};

FrameVec<double> values(const FrameVec<Jet>& v) {
  FrameVec<double> r(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].value();
  return r;
}

TangentDerivatives tangent_derivatives(const CurveSpec& spec, double t) {
  const MovingJets m = moving_jets(spec, t, 4);
  const FrameVec<Jet> v1 = covariant_derivative_along(m, m.tangent);
  const FrameVec<Jet> v2 = covariant_derivative_along(m, v1);
  const FrameVec<Jet> v3 = covariant_derivative_along(m, v2);
  TangentDerivatives d;
  d.point.resize(m.point.size());
  for (std::size_t k = 0; k < m.point.size(); ++k) d.point[k] = m.point[k].value();
  d.t = values(m.tangent);
  d.v1 = values(v1);
  d.v2 = values(v2);
  d.v3 = values(v3);
  return d;
}

FrameVec<double> bitension_frame(const TangentDerivatives& d, double c) {
  const FrameVec<double> r = curvature_general(c, d.t, d.v1, d.t);
  FrameVec<double> out(d.t.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = d.v3[k] - r[k];
  return out;
}

void require_model_c(double c) {
  if (c != -3.0) {
    std::ostringstream os;
    os << "the coordinate model realizes only c = -3, got c = " << c;
    throw DomainError(os.str());
  }
}

double norm(const FrameVec<double>& v) { return std::sqrt(frame_dot(v, v)); }

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> curvature_values(const FrenetData& d, int i) {
  if (i >= d.order) return std::vector<double>(d.samples(), 0.0);
  return d.curvatures[i - 1].value;
}

void finish_maxima(ResidualReport& r) {
  r.max_norm = max_abs(r.norms);
  for (int i = 0; i < 4; ++i) r.max_equation[i] = max_abs(r.equations[i]);
  r.max_outside_frenet = max_abs(r.outside_frenet);
}

}  // namespace

std::vector<TangentVec> tension(const CurveSpec& spec, const Grid& grid) {
  grid.validate();
  std::vector<TangentVec> out;
  out.reserve(grid.samples);
  for (int j = 0; j < grid.samples; ++j) {
    const MovingJets m = moving_jets(spec, grid.at(j), 2);
    const FrameVec<double> v = values(covariant_derivative_along(m, m.tangent));
    std::vector<double> p(m.point.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = m.point[k].value();
    const ModelPoint base(std::move(p));
    out.push_back(from_frame(base, v));
  }
  return out;
}

std::vector<TangentVec> bitension(const CurveSpec& spec, const Grid& grid, double c) {
  require_model_c(c);
  grid.validate();
  std::vector<TangentVec> out;
  out.reserve(grid.samples);
  for (int j = 0; j < grid.samples; ++j) {
    const TangentDerivatives d = tangent_derivatives(spec, grid.at(j));
    out.push_back(from_frame(ModelPoint(d.point), bitension_frame(d, c)));
  }
  return out;
}

ResidualReport residual_direct(const CurveSpec& spec, const Grid& grid, double c, DeltaPair delta,
                               const FrenetData& frenet) {
  require_model_c(c);
  grid.validate();
  validate(frenet);
  if (static_cast<int>(frenet.samples()) != grid.samples || !frenet.has_frames()) {
    throw StructuralError("Frenet data does not belong to this grid");
  }
  const int m = frenet.m();
  const int dim = spec.dim();
  ResidualReport r;
  r.m = m;
  for (auto& e : r.equations) e.assign(grid.samples, 0.0);
  r.outside_frenet.assign(grid.samples, 0.0);

  Eigen::MatrixXd basis(dim, m + 2);
  for (int j = 0; j < grid.samples; ++j) {
    const TangentDerivatives d = tangent_derivatives(spec, grid.at(j));
    const FrameVec<double> tau2 = bitension_frame(d, c);
    FrameVec<double> v(dim);
    for (int k = 0; k < dim; ++k) v[k] = delta.delta2 * tau2[k] - delta.delta1 * d.v1[k];

    const FrameVec<double> phi_t = frame_phi(d.t);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < dim; ++k) basis(k, i) = frenet.frames[i][j][k];
    }
    for (int k = 0; k < dim; ++k) {
      basis(k, m) = phi_t[k];
      basis(k, m + 1) = k == dim - 1 ? 1.0 : 0.0;
    }
    const Eigen::Map<const Eigen::VectorXd> rhs(v.data(), dim);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(basis);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd coeff = cod.solve(rhs);
    r.max_off_span = std::max(r.max_off_span, (basis * coeff - rhs).norm());

    ResidualComponents comp;
    double* slots[4] = {&comp.e1, &comp.e2, &comp.e3, &comp.e4};
    for (int i = 0; i < m; ++i) *slots[i] = coeff(i);
    comp.phi_t = coeff(m);
    comp.xi = coeff(m + 1);
    r.components.push_back(comp);

    FrameVec<double> outside = v;
    for (int i = 0; i < m; ++i) {
      const double g = frame_dot(v, frenet.frames[i][j]);
      r.equations[i][j] = g;
      for (int k = 0; k < dim; ++k) outside[k] -= g * frenet.frames[i][j][k];
    }
    r.outside_frenet[j] = norm(outside);
    r.norms.push_back(norm(v));
    r.vectors.push_back(std::move(v));
  }
  finish_maxima(r);
  return r;
}

ResidualReport residual_direct(const CurveSpec& spec, const Grid& grid, double c, DeltaPair delta) {
  return residual_direct(spec, grid, c, delta, frenet_apparatus(spec, grid));
}

ResidualReport residual_closed_form(const FrenetData& frenet, const FrameScalars& scalars_in, double c,
                                    DeltaPair delta, CurvatureTermSign sign) {
  validate(frenet);
  const std::size_t ns = frenet.samples();
  if (scalars_in.samples() != ns) throw StructuralError("frame scalars do not match the Frenet samples");
  FrameScalars scalars = scalars_in;
  if (scalars.phi_t_outside.size() != ns || scalars.xi_outside.size() != ns || scalars.outside_inner.size() != ns) {
    scalars.complete_from_unit_identities(frenet.m());
  }

  const int order = frenet.order;
  const std::vector<double> k1 = curvature_values(frenet, 1);
  const std::vector<double> k2 = curvature_values(frenet, 2);
  const std::vector<double> k3 = curvature_values(frenet, 3);
  std::vector<double> k1d(ns, 0.0), k1dd(ns, 0.0), k2d(ns, 0.0);
  for (std::size_t s = 0; s < ns && order >= 2; ++s) {
    k1d[s] = frenet.k_d1(1, s);
    k1dd[s] = frenet.k_d2(1, s);
    if (order >= 3) k2d[s] = frenet.k_d1(2, s);
  }

  const double a = (c + 3.0) / 4.0;
  ResidualReport r;
  r.m = frenet.m();
  for (auto& e : r.equations) e.assign(ns, 0.0);
  r.outside_frenet.assign(ns, 0.0);
  const bool frames = frenet.has_frames();
  const double d1 = delta.delta1, d2 = delta.delta2;

  for (std::size_t s = 0; s < ns; ++s) {
    const double f = scalars.f[s];
    const double eta2 = scalars.eta_e2[s];
    CurvaturePairings p;
    p.g_yz = 0.0;
    p.g_xz = 1.0;
    p.g_x_phiz = 0.0;
    p.g_y_phiz = k1[s] * f;
    p.g_x_phiy = -k1[s] * f;
    p.eta_x = 0.0;
    p.eta_y = k1[s] * eta2;
    p.eta_z = 0.0;
    const CurvatureExpansion rt = curvature_general(c, p);

    ResidualComponents comp;
    comp.e1 = d2 * (-3.0 * k1[s] * k1d[s] - rt.x);
    comp.e2 = d2 * (k1dd[s] - k1[s] * k1[s] * k1[s] - k1[s] * k2[s] * k2[s] - rt.y * k1[s]) - d1 * k1[s];
    if (sign == CurvatureTermSign::kFlipped) comp.e2 -= 2.0 * d2 * a * k1[s];
    comp.e3 = d2 * (2.0 * k1d[s] * k2[s] + k1[s] * k2d[s]);
    comp.e4 = d2 * k1[s] * k2[s] * k3[s];
    comp.phi_t = -d2 * (rt.phi_x + rt.phi_z);
    comp.xi = -d2 * rt.xi;
    r.components.push_back(comp);

    const double g[4] = {0.0, f, scalars.phi_t_e3[s], scalars.phi_t_e4[s]};
    const double h[4] = {0.0, eta2, scalars.eta_e3[s], scalars.eta_e4[s]};
    const double e[4] = {comp.e1, comp.e2, comp.e3, comp.e4};
    for (int i = 0; i < r.m; ++i) r.equations[i][s] = e[i] + comp.phi_t * g[i] + comp.xi * h[i];

    const double A = comp.phi_t, B = comp.xi;
    const double out2 = A * A * scalars.phi_t_outside[s] * scalars.phi_t_outside[s] +
                        B * B * scalars.xi_outside[s] * scalars.xi_outside[s] +
                        2.0 * A * B * scalars.outside_inner[s];
    r.outside_frenet[s] = std::sqrt(std::max(0.0, out2));

    if (frames) {
      const FrameVec<double>& t = frenet.frames[0][s];
      const FrameVec<double> phi_t = frame_phi(t);
      FrameVec<double> v(t.size(), 0.0);
      for (int i = 0; i < std::min(order, 4); ++i) {
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += e[i] * frenet.frames[i][s][k];
      }
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += A * phi_t[k];
      v.back() += B;
      r.norms.push_back(norm(v));
      r.vectors.push_back(std::move(v));
    } else {
      // Gram matrix of {E_1..E_4, phi T, xi} from the scalars.
      const double cf[6] = {e[0], e[1], e[2], e[3], A, B};
      double n2 = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3] + A * A + B * B;
      for (int i = 0; i < 4; ++i) n2 += 2.0 * cf[i] * (A * g[i] + B * h[i]);
      r.norms.push_back(std::sqrt(std::max(0.0, n2)));
    }
  }
  finish_maxima(r);
  return r;
}

EquationsReport equations_check(const FrenetData& frenet, const FrameScalars& scalars, double c, DeltaPair delta,
                                double tol, CurvatureTermSign sign) {
  const ResidualReport r = residual_closed_form(frenet, scalars, c, delta, sign);
  EquationsReport out;
  out.m = r.m;
  for (int i = 0; i < 4; ++i) {
    EquationCheck& e = out.equations[i];
    e.index = i + 1;
    e.evaluated = i < r.m;
    e.max_abs = e.evaluated ? r.max_equation[i] : 0.0;
    e.pass = !e.evaluated || e.max_abs <= tol;
  }
  out.span_condition_leakage = r.max_outside_frenet;
  out.span_condition_pass = out.span_condition_leakage <= tol;
  if (std::abs(c - 1.0) <= tol) {
    out.span_condition_via = "c=1";
  } else if (max_abs(scalars.f) <= tol) {
    out.span_condition_via = "phiT_perp_E2";
  } else if (!scalars.phi_t_outside.empty() && max_abs(scalars.phi_t_outside) <= tol) {
    out.span_condition_via = "phiT_in_span";
  } else {
    out.span_condition_via = "none";
  }
  out.pass = out.span_condition_pass;
  for (const auto& e : out.equations) out.pass = out.pass && e.pass;
  return out;
}

const char* to_string(CurveShape s) {
  switch (s) {
    case CurveShape::kGeodesic:
      return "geodesic";
    case CurveShape::kCircle:
      return "circle";
    case CurveShape::kHelix:
      return "helix";
    case CurveShape::kGeneral:
      return "general";
  }
  return "general";
}

const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::kI:
      return "I";
    case CaseTag::kII:
      return "II";
    case CaseTag::kIII:
      return "III";
    case CaseTag::kIV:
      return "IV";
  }
  return "IV";
}

CurveClass classify(const FrenetData& frenet, const FrameScalars& scalars, double c, double tol) {
  validate(frenet);
  if (scalars.samples() != frenet.samples()) throw StructuralError("frame scalars do not match the Frenet samples");
  CurveClass out;
  const int r = frenet.order;
  const bool k1_const = r < 2 || spread(curvature_values(frenet, 1)) <= tol;
  const bool k2_const = r < 3 || spread(curvature_values(frenet, 2)) <= tol;
  if (r == 1) {
    out.shape = CurveShape::kGeodesic;
  } else if (r == 2 && k1_const) {
    out.shape = CurveShape::kCircle;
  } else if (r == 3 && k1_const && k2_const) {
    out.shape = CurveShape::kHelix;
  } else {
    out.shape = CurveShape::kGeneral;
  }
  out.f_constant = spread(scalars.f) <= tol;

  if (r >= 3) {
    std::vector<double> w(frenet.samples());
    for (std::size_t s = 0; s < w.size(); ++s) {
      const double k2 = frenet.k(2, s);
      w[s] = k2 * k2 + 3.0 * (c - 1.0) / 4.0 * scalars.f[s] * scalars.f[s];
    }
    out.w0 = mean(w);
    double var = 0.0;
    for (double x : w) var += (x - *out.w0) * (x - *out.w0);
    out.w0_variance = var / static_cast<double>(w.size());
  }

  if (out.shape == CurveShape::kGeodesic) return out;

  double min_abs_f = std::numeric_limits<double>::infinity();
  for (double x : scalars.f) min_abs_f = std::min(min_abs_f, std::abs(x));
  if (std::abs(c - 1.0) <= tol) {
    out.case_tag = CaseTag::kI;
  } else if (max_abs(scalars.f) <= tol) {
    out.case_tag = CaseTag::kII;
  } else if (min_abs_f >= 1.0 - tol) {
    out.case_tag = CaseTag::kIII;
  } else {
    out.case_tag = CaseTag::kIV;
    if (!out.f_constant) {
      out.shape = CurveShape::kGeneral;
      out.notes.push_back("g(phi T, E_2) is not constant: Case IV then requires the full ODE system");
    } else {
      std::vector<double> angles(frenet.samples());
      for (std::size_t s = 0; s < angles.size(); ++s) {
        double a = std::atan2(scalars.phi_t_e4[s], scalars.f[s]);
        if (a <= 0.0) a += 2.0 * std::numbers::pi;
        angles[s] = a;
      }
      out.alpha0 = mean(angles);
      out.alpha_consistent = true;
      for (std::size_t s = 0; s < angles.size(); ++s) {
        if (std::abs(scalars.phi_t_e4[s] - std::sin(*out.alpha0)) > tol ||
            std::abs(scalars.f[s] - std::cos(*out.alpha0)) > tol || std::abs(scalars.phi_t_e3[s]) > tol) {
          out.alpha_consistent = false;
        }
      }
      if (!out.alpha_consistent) out.notes.push_back("phi T is not cos(a0) E_2 + sin(a0) E_4 along the curve");
    }
  }
  return out;
}

DeltaSolution solve_delta(const FrenetData& frenet, const FrameScalars& scalars, double c, double tol) {
  DeltaSolution out;
  out.cls = classify(frenet, scalars, c, tol);
  const std::size_t ns = frenet.samples();
  const int r = frenet.order;
  if (out.cls.shape == CurveShape::kGeodesic) {
    out.any_delta = true;
    out.feasible = true;
    out.formula = "tension vanishes";
    out.notes.push_back("any delta admissible: tau and tau_2 both vanish");
    return out;
  }

  // Pointwise rho(t) = <tau_2, tau> / <tau, tau>.
  const ResidualReport biharmonic = residual_closed_form(frenet, scalars, c, {0.0, 1.0});
  out.pointwise_rho.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) out.pointwise_rho[s] = biharmonic.equations[1][s] / frenet.k(1, s);
  out.pointwise_rho_mean = mean(out.pointwise_rho);
  out.pointwise_rho_spread = spread(out.pointwise_rho);

  std::vector<double> sum_sq(ns), k1_sq(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const double k1 = frenet.k(1, s), k2 = frenet.k(2, s);
    k1_sq[s] = k1 * k1;
    sum_sq[s] = k1 * k1 + k2 * k2;
  }
  const double K = mean(sum_sq);
  auto add = [&out](std::string name, double value, bool ok) { out.constraints.push_back({std::move(name), value, ok}); };
  auto k_spread = [&](int i) { return i < r ? spread(curvature_values(frenet, i)) : 0.0; };

  switch (*out.cls.case_tag) {
    case CaseTag::kI: {
      out.rho = 1.0 - K;
      out.formula = "k1^2 + k2^2 = 1 - rho";
      add("1 - rho > 0", 1.0 - *out.rho, 1.0 - *out.rho > 0.0);
      add("k1, k2 constant", std::max(k_spread(1), k_spread(2)), std::max(k_spread(1), k_spread(2)) <= tol);
      double k2k3 = 0.0;
      for (std::size_t s = 0; s < ns; ++s) k2k3 = std::max(k2k3, std::abs(frenet.k(2, s) * frenet.k(3, s)));
      add("k2 k3 = 0", k2k3, k2k3 <= tol);
      break;
    }
    case CaseTag::kII: {
      out.rho = (c + 3.0) / 4.0 - K;
      out.formula = "k1^2 + k2^2 = (c+3)/4 - rho";
      const bool geodesic_only = c <= -3.0 && *out.rho >= 0.0;
      add("not (c <= -3 and rho >= 0)", *out.rho, !geodesic_only);
      add("k1, k2 constant", std::max(k_spread(1), k_spread(2)), std::max(k_spread(1), k_spread(2)) <= tol);
      add("order <= 3", r, r <= 3);
      const int required_n = r <= 2 ? 2 : 3;
      add("n >= " + std::to_string(required_n), frenet.n, frenet.n >= required_n);
      break;
    }
    case CaseTag::kIII: {
      out.rho = c - 1.0 - mean(k1_sq);
      out.formula = "k1^2 = c - 1 - rho, k2 = 1";
      out.rho_alternative = c - K;
      double dev = 0.0;
      for (std::size_t s = 0; s < ns; ++s) dev = std::max(dev, std::abs(frenet.k(2, s) - 1.0));
      out.k2_deviation = dev;
      const bool geodesic_only = c <= 1.0 && *out.rho >= 0.0;
      add("not (c <= 1 and rho >= 0)", *out.rho, !geodesic_only);
      add("k1 constant", k_spread(1), k_spread(1) <= tol);
      add("k2 = 1", dev, dev <= tol);
      break;
    }
    case CaseTag::kIV: {
      if (!out.cls.f_constant || !out.cls.alpha0) {
        out.formula = "ODE system (f not constant)";
        out.notes.push_back("f is not constant; no closed-form rho, see the Case IV residual report");
        break;
      }
      const double a0 = *out.cls.alpha0;
      const double cos2 = std::cos(a0) * std::cos(a0);
      out.rho = (c + 3.0) / 4.0 + 3.0 * (c - 1.0) / 4.0 * cos2 - K;
      out.formula = "k1^2 + k2^2 = (c+3)/4 + 3(c-1)/4 cos^2(a0) - rho";
      const double lhs = c + 3.0 + 3.0 * (c - 1.0) * cos2 - 4.0 * *out.rho;
      add("(c+3+3(c-1)cos^2 a0) - 4 rho > 0", lhs, lhs > 0.0);
      const double s2 = 3.0 * (c - 1.0) * std::sin(2.0 * a0);
      add("3(c-1) sin 2a0 < 0", s2, s2 < 0.0);
      const double target = -3.0 * (c - 1.0) / 8.0 * std::sin(2.0 * a0);
      double dev = 0.0;
      for (std::size_t s = 0; s < ns; ++s) dev = std::max(dev, std::abs(frenet.k(2, s) * frenet.k(3, s) - target));
      add("k2 k3 = -3(c-1)/8 sin 2a0", dev, dev <= tol);
      add("phi T = cos a0 E2 + sin a0 E4", out.cls.alpha_consistent ? 0.0 : 1.0, out.cls.alpha_consistent);
      const double ks = std::max({k_spread(1), k_spread(2), k_spread(3)});
      add("k1, k2, k3 constant", ks, ks <= tol);
      add("not (c <= -3 and rho >= 0)", *out.rho, !(c <= -3.0 && *out.rho >= 0.0));
      break;
    }
  }
  if (out.rho) add("rho != 0", *out.rho, std::abs(*out.rho) > tol);

  out.feasible = out.rho.has_value();
  for (const auto& k : out.constraints) out.feasible = out.feasible && k.satisfied;
  const double rho = out.rho.value_or(out.pointwise_rho_mean);
  out.parallel_residual = residual_closed_form(frenet, scalars, c, {rho, 1.0}).max_norm;
  return out;
}

double min_gram_eigenvalue(const std::vector<FrameVec<double>>& vectors) {
  if (vectors.empty()) throw StructuralError("Gram matrix of an empty set");
  const Eigen::Index k = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) g(i, j) = g(j, i) = frame_dot(vectors[i], vectors[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

IndependenceReport independence_check(const CurveSpec& spec, const FrenetData& frenet, const Grid& grid, double tol) {
  grid.validate();
  validate(frenet);
  if (frenet.order != 2 && frenet.order != 3) {
    throw StructuralError("independence check needs osculating order 2 or 3, got " + std::to_string(frenet.order));
  }
  if (static_cast<int>(frenet.samples()) != grid.samples || !frenet.has_frames()) {
    throw StructuralError("Frenet data does not belong to this grid");
  }
  IndependenceReport out;
  out.set_size = frenet.order == 2 ? 5 : 6;
  out.dimension = spec.dim();
  out.required_n = frenet.order == 2 ? 2 : 3;
  out.dimension_sufficient = static_cast<int>(out.set_size) <= out.dimension;
  out.min_gram_eigenvalue = std::numeric_limits<double>::infinity();
  double max_f = 0.0;
  for (int j = 0; j < grid.samples; ++j) {
    const MovingJets m = moving_jets(spec, grid.at(j), 2);
    const FrameVec<Jet> phi_t = frame_phi(m.tangent);
    std::vector<FrameVec<double>> set;
    set.push_back(frenet.frames[0][j]);
    set.push_back(frenet.frames[1][j]);
    if (frenet.order == 3) set.push_back(frenet.frames[2][j]);
    set.push_back(values(phi_t));
    set.push_back(values(covariant_derivative_along(m, phi_t)));
    set.push_back(frame_xi<double>(static_cast<std::size_t>(spec.dim())));
    out.min_gram_eigenvalue = std::min(out.min_gram_eigenvalue, min_gram_eigenvalue(set));
    max_f = std::max(max_f, std::abs(frame_dot(set[3], frenet.frames[1][j])));
  }
  out.min_gram_eigenvalue = std::max(0.0, out.min_gram_eigenvalue);
  out.min_singular_value = std::sqrt(out.min_gram_eigenvalue);
  out.independent = out.dimension_sufficient && out.min_gram_eigenvalue > tol;
  std::ostringstream note;
  if (!out.dimension_sufficient) {
    note << out.set_size << " vectors cannot be independent in dimension " << out.dimension
         << "; consistent with the bound n >= " << out.required_n;
  } else if (max_f > 1e-6) {
    note << "phi T is not orthogonal to E_2 (max |f| = " << max_f << "); the bound does not apply";
  } else {
    note << "independence implies n >= " << out.required_n;
  }
  out.note = note.str();
  return out;
}

Case4Report case4_ode_residuals(const FrenetData& frenet, const FrameScalars& scalars, double c, DeltaPair delta,
                                double tol) {
  validate(frenet);
  if (frenet.order < 4) {
    throw StructuralError("Case IV residuals need osculating order >= 4, got " + std::to_string(frenet.order));
  }
  if (delta.delta2 == 0.0) throw DomainError("Case IV residuals need delta_2 != 0");
  const std::size_t ns = frenet.samples();
  if (scalars.samples() != ns) throw StructuralError("frame scalars do not match the Frenet samples");
  Case4Report out;
  out.rho = delta.delta1 / delta.delta2;
  const double b3 = 3.0 * (c - 1.0) / 4.0;
  std::vector<double> w(ns), k2(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const double k1v = frenet.k(1, s), k2v = frenet.k(2, s), k3v = frenet.k(3, s);
    const double f = scalars.f[s];
    out.k1_prime = std::max(out.k1_prime, std::abs(frenet.k_d1(1, s)));
    out.sum_rule = std::max(out.sum_rule, std::abs(k1v * k1v + k2v * k2v - (c + 3.0) / 4.0 - b3 * f * f + out.rho));
    out.k2_prime = std::max(out.k2_prime, std::abs(frenet.k_d1(2, s) + b3 * f * scalars.phi_t_e3[s]));
    out.k2k3 = std::max(out.k2k3, std::abs(k2v * k3v + b3 * f * scalars.phi_t_e4[s]));
    w[s] = k2v * k2v + b3 * f * f;
    k2[s] = k2v;
  }
  out.w0 = mean(w);
  for (double x : w) out.w0_variance += (x - out.w0) * (x - out.w0);
  out.w0_variance /= static_cast<double>(ns);
  out.f_spread = spread(scalars.f);
  out.k2_spread = spread(k2);
  out.max_phi_t_e3 = max_abs(scalars.phi_t_e3);
  out.system_satisfied = out.k1_prime <= tol && out.sum_rule <= tol && out.k2_prime <= tol && out.k2k3 <= tol;
  out.helix_conclusion = out.f_spread <= tol && out.k2_spread <= tol && out.max_phi_t_e3 <= tol;
  return out;
}

}  // namespace sesqui
