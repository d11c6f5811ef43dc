#include "sesqui/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sesqui/error.hpp"

namespace sesqui {

namespace {

std::vector<double> sample_derivative(const FrenetData& d, const std::vector<double>& values) {
  if (values.size() < 5) throw StructuralError("differentiating curvature samples needs at least 5 samples");
  const double h = (d.t.back() - d.t.front()) / static_cast<double>(d.t.size() - 1);
  std::vector<double> out = grid_derivative(values, h, d.periodic);
  if (d.speed.size() == out.size()) {
    for (std::size_t s = 0; s < out.size(); ++s) out[s] /= d.speed[s];
  }
  return out;
}

void require_index(const FrenetData& d, int i, std::size_t s) {
  if (i < 1) throw StructuralError("curvature index starts at 1");
  if (s >= d.samples()) throw StructuralError("sample index out of range");
}

}  // namespace

double FrenetData::k(int i, std::size_t s) const {
  require_index(*this, i, s);
  if (i >= order) return 0.0;
  return curvatures[i - 1].value[s];
}

double FrenetData::k_d1(int i, std::size_t s) const {
  require_index(*this, i, s);
  if (i >= order) return 0.0;
  const auto& c = curvatures[i - 1];
  if (c.d1.size() == samples()) return c.d1[s];
  return sample_derivative(*this, c.value)[s];
}

double FrenetData::k_d2(int i, std::size_t s) const {
  require_index(*this, i, s);
  if (i >= order) return 0.0;
  const auto& c = curvatures[i - 1];
  if (c.d2.size() == samples()) return c.d2[s];
  const std::vector<double> d1 = c.d1.size() == samples() ? c.d1 : sample_derivative(*this, c.value);
  return sample_derivative(*this, d1)[s];
}

TangentVec FrenetData::frame_vector(int i, std::size_t s) const {
  if (i < 1 || i > order || !has_frames()) throw StructuralError("frame vector E_" + std::to_string(i) + " unavailable");
  if (points.size() != samples()) throw StructuralError("frame vectors need the sampled points");
  return from_frame(ModelPoint(points[s]), frames[i - 1][s]);
}

void validate(const FrenetData& d) {
  const std::size_t ns = d.samples();
  if (d.n < 1) throw StructuralError("FrenetData.n must be >= 1");
  if (d.order < 1 || d.order > 2 * d.n + 1) {
    throw StructuralError("osculating order " + std::to_string(d.order) + " outside 1.." + std::to_string(2 * d.n + 1));
  }
  if (ns == 0) throw StructuralError("FrenetData has no samples");
  if (static_cast<int>(d.curvatures.size()) != d.order - 1) {
    throw StructuralError("order " + std::to_string(d.order) + " needs " + std::to_string(d.order - 1) +
                          " curvature functions, got " + std::to_string(d.curvatures.size()));
  }
  for (const auto& c : d.curvatures) {
    if (c.value.size() != ns) throw StructuralError("curvature samples do not match the grid");
    if (!c.d1.empty() && c.d1.size() != ns) throw StructuralError("curvature derivative samples do not match the grid");
    if (!c.d2.empty() && c.d2.size() != ns) throw StructuralError("curvature derivative samples do not match the grid");
  }
  if (!d.frames.empty()) {
    if (static_cast<int>(d.frames.size()) != d.order) throw StructuralError("frame count does not match the order");
    for (const auto& e : d.frames) {
      if (e.size() != ns) throw StructuralError("frame samples do not match the grid");
      for (const auto& v : e) {
        if (static_cast<int>(v.size()) != 2 * d.n + 1) throw StructuralError("frame vector has the wrong dimension");
      }
    }
  }
  if (!d.speed.empty() && d.speed.size() != ns) throw StructuralError("speed samples do not match the grid");
}

namespace {

struct LocalFrenet {
  std::vector<FrameVec<Jet>> e;  // E_1..E_r
  std::vector<Jet> k;            // k_1..k_{r-1}
  double next = 0.0;             // |k_r| at this sample, 0 if r = 2n+1
};

LocalFrenet local_frenet(const MovingJets& m, int max_order, double tol) {
  LocalFrenet out;
  out.e.push_back(m.tangent);
  for (int i = 1; i < max_order; ++i) {
    FrameVec<Jet> w = covariant_derivative_along(m, out.e.back());
    if (i > 1) {
      const Jet& kp = out.k.back();
      const FrameVec<Jet>& prev = out.e[out.e.size() - 2];
      for (std::size_t c = 0; c < w.size(); ++c) w[c] += kp * prev[c];
    }
    const Jet k2 = frame_dot(w, w);
    const double kv = std::sqrt(std::max(0.0, k2.value()));
    if (kv < tol) {
      out.next = kv;
      return out;
    }
    const Jet k = sqrt(k2);
    for (auto& c : w) c /= k;
    out.k.push_back(k);
    out.e.push_back(std::move(w));
  }
  return out;
}

}  // namespace

FrenetData frenet_apparatus(const CurveSpec& spec, const Grid& grid, double tol) {
  grid.validate();
  if (!(tol > 0.0)) throw StructuralError("osculating-order tolerance must be positive");
  const int n = spec.n();
  const int max_order = 2 * n + 1;
  const int degree = std::max(5, 2 * n + 2);
  if (degree > Jet::kMaxDegree) throw StructuralError("Frenet apparatus supports n <= 7");

  FrenetData d;
  d.n = n;
  d.periodic = grid.periodic;
  std::vector<LocalFrenet> local;
  std::vector<MovingJets> moving;
  local.reserve(grid.samples);
  int order = -1;
  for (int j = 0; j < grid.samples; ++j) {
    const double t = grid.at(j);
    moving.push_back(moving_jets(spec, t, degree));
    local.push_back(local_frenet(moving.back(), max_order, tol));
    const int r = static_cast<int>(local.back().e.size());
    if (order < 0) order = r;
    if (r != order) {
      const int bad = r < order ? j : 0;
      throw GeometryError("non-constant osculating order (curvature k_" + std::to_string(std::min(r, order)) +
                              " drops below tolerance only on part of the grid)",
                          grid.at(bad));
    }
  }

  d.order = order;
  d.frames.assign(order, std::vector<FrameVec<double>>(grid.samples));
  d.curvatures.assign(order - 1, CurvatureSamples{});
  for (auto& c : d.curvatures) {
    c.value.resize(grid.samples);
    c.d1.resize(grid.samples);
    c.d2.resize(grid.samples);
  }
  for (int j = 0; j < grid.samples; ++j) {
    const MovingJets& m = moving[j];
    const LocalFrenet& lf = local[j];
    d.t.push_back(m.t);
    d.speed.push_back(m.speed);
    std::vector<double> p(m.point.size());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = m.point[c].value();
    d.points.push_back(std::move(p));
    for (int i = 0; i < order; ++i) {
      FrameVec<double> v(lf.e[i].size());
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = lf.e[i][c].value();
      d.frames[i][j] = std::move(v);
    }
    for (int i = 0; i + 1 < order; ++i) {
      const Jet& k = lf.k[i];
      const Jet k1 = k.degree() >= 1 ? k.derivative() * m.inv_speed : Jet(std::nan(""));
      const Jet k2 = k1.degree() >= 1 ? k1.derivative() * m.inv_speed : Jet(std::nan(""));
      d.curvatures[i].value[j] = k.value();
      d.curvatures[i].d1[j] = k1.value();
      d.curvatures[i].d2[j] = k2.value();
    }
    d.next_curvature_max = std::max(d.next_curvature_max, lf.next);
  }
  // Curvatures deep in the frame run out of jet degree; their derivatives come from samples.
  auto finite = [](const std::vector<double>& v) { return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }); };
  for (auto& c : d.curvatures) {
    if (!finite(c.d1)) c.d1.clear();
    if (!finite(c.d2)) c.d2.clear();
  }
  return d;
}

double max_gram_deviation(const FrenetData& d) {
  double worst = 0.0;
  for (std::size_t s = 0; s < d.samples(); ++s) {
    for (int i = 0; i < d.order; ++i) {
      for (int j = i; j < d.order; ++j) {
        const double g = frame_dot(d.frames[i][s], d.frames[j][s]);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

void FrameScalars::complete_from_unit_identities(int m) {
  const std::size_t ns = f.size();
  phi_t_outside.assign(ns, 0.0);
  xi_outside.assign(ns, 0.0);
  outside_inner.assign(ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    double gg = 0.0, ee = 0.0, ge = 0.0;
    const double g[3] = {f[s], phi_t_e3[s], phi_t_e4[s]};
    const double e[3] = {eta_e2[s], eta_e3[s], eta_e4[s]};
    for (int i = 0; i < 3 && i + 2 <= m; ++i) {
      gg += g[i] * g[i];
      ee += e[i] * e[i];
      ge += g[i] * e[i];
    }
    phi_t_outside[s] = std::sqrt(std::max(0.0, 1.0 - gg));
    xi_outside[s] = std::sqrt(std::max(0.0, 1.0 - ee));
    outside_inner[s] = -ge;
  }
}

FrameScalars frame_scalars(const FrenetData& d) {
  validate(d);
  if (!d.has_frames()) throw StructuralError("frame scalars need Frenet frames");
  const std::size_t ns = d.samples();
  FrameScalars out;
  for (auto* v : {&out.f, &out.phi_t_e3, &out.phi_t_e4, &out.eta_e2, &out.eta_e3, &out.eta_e4, &out.phi_t_outside,
                  &out.xi_outside, &out.outside_inner}) {
    v->assign(ns, 0.0);
  }
  const int m = d.m();
  for (std::size_t s = 0; s < ns; ++s) {
    const FrameVec<double> phi_t = frame_phi(d.frames[0][s]);
    FrameVec<double> phi_out = phi_t;
    FrameVec<double> xi_out = frame_xi<double>(phi_t.size());
    std::vector<double>* g_slot[3] = {&out.f, &out.phi_t_e3, &out.phi_t_e4};
    std::vector<double>* e_slot[3] = {&out.eta_e2, &out.eta_e3, &out.eta_e4};
    for (int i = 2; i <= m; ++i) {
      const FrameVec<double>& e = d.frames[i - 1][s];
      const double g = frame_dot(phi_t, e);
      const double h = frame_eta(e);
      (*g_slot[i - 2])[s] = g;
      (*e_slot[i - 2])[s] = h;
      for (std::size_t c = 0; c < e.size(); ++c) {
        phi_out[c] -= g * e[c];
        xi_out[c] -= h * e[c];
      }
    }
    out.phi_t_outside[s] = std::sqrt(frame_dot(phi_out, phi_out));
    out.xi_outside[s] = std::sqrt(frame_dot(xi_out, xi_out));
    out.outside_inner[s] = frame_dot(phi_out, xi_out);
  }
  return out;
}

FrenetData constant_frenet(int n, const std::vector<double>& curvatures, std::size_t samples) {
  FrenetData d;
  d.n = n;
  d.order = static_cast<int>(curvatures.size()) + 1;
  d.periodic = false;
  for (std::size_t s = 0; s < samples; ++s) d.t.push_back(static_cast<double>(s));
  for (double k : curvatures) {
    d.curvatures.push_back({std::vector<double>(samples, k), std::vector<double>(samples, 0.0),
                            std::vector<double>(samples, 0.0)});
  }
  validate(d);
  return d;
}

FrameScalars constant_scalars(std::size_t samples, int m, double f, double phi_t_e3, double phi_t_e4, double eta_e2,
                              double eta_e3, double eta_e4) {
  FrameScalars s;
  s.f.assign(samples, f);
  s.phi_t_e3.assign(samples, phi_t_e3);
  s.phi_t_e4.assign(samples, phi_t_e4);
  s.eta_e2.assign(samples, eta_e2);
  s.eta_e3.assign(samples, eta_e3);
  s.eta_e4.assign(samples, eta_e4);
  s.complete_from_unit_identities(m);
  return s;
}

}  // namespace sesqui
