#include "sesqui/contact_model.hpp"

#include <string>

namespace sesqui {

ModelPoint::ModelPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3 || coords_.size() % 2 == 0) {
    throw StructuralError("model point needs 2n+1 coordinates with n >= 1, got " +
                          std::to_string(coords_.size()));
  }
}

TangentVec::TangentVec(ModelPoint base_point, std::vector<double> components)
    : base(std::move(base_point)), comps(std::move(components)) {
  if (static_cast<int>(comps.size()) != base.dim()) {
    throw StructuralError("tangent vector has " + std::to_string(comps.size()) +
                          " components but its base point has dimension " + std::to_string(base.dim()));
  }
}

FrameIndex::FrameIndex(int index, int n) : index_(index), n_(n) {
  if (n < 1 || index < 1 || index > 2 * n + 1) {
    throw StructuralError("frame index " + std::to_string(index) + " outside 1.." + std::to_string(2 * n + 1));
  }
}

namespace {

void require_based_at(const ModelPoint& p, const TangentVec& u) {
  if (u.base.dim() != p.dim()) {
    throw StructuralError("vector of dimension " + std::to_string(u.base.dim()) + " used at a point of dimension " +
                          std::to_string(p.dim()));
  }
}

}  // namespace

double eta(const ModelPoint& p, const TangentVec& u) {
  require_based_at(p, u);
  double acc = u.comps.back();
  for (int i = 0; i < p.n(); ++i) acc -= p.y(i) * u.comps[i];
  return 0.5 * acc;
}

double metric(const ModelPoint& p, const TangentVec& u, const TangentVec& v) {
  require_based_at(p, u);
  require_based_at(p, v);
  double flat = 0.0;
  for (int k = 0; k < 2 * p.n(); ++k) flat += u.comps[k] * v.comps[k];
  return eta(p, u) * eta(p, v) + 0.25 * flat;
}

TangentVec phi(const ModelPoint& p, const TangentVec& u) {
  require_based_at(p, u);
  const int n = p.n();
  std::vector<double> r(p.dim(), 0.0);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    r[i] = u.comps[n + i];
    r[n + i] = -u.comps[i];
    z += p.y(i) * u.comps[n + i];
  }
  r[2 * n] = z;
  return TangentVec(p, std::move(r));
}

TangentVec xi(const ModelPoint& p) {
  std::vector<double> r(p.dim(), 0.0);
  r.back() = 2.0;
  return TangentVec(p, std::move(r));
}

TangentVec frame_field(const ModelPoint& p, FrameIndex idx) {
  const int n = p.n();
  if (idx.value() > 2 * n + 1) throw StructuralError("frame index exceeds the model dimension");
  std::vector<double> r(p.dim(), 0.0);
  const int i = idx.value();
  if (i <= n) {
    r[n + i - 1] = 2.0;
  } else if (i <= 2 * n) {
    r[i - n - 1] = 2.0;
    r[2 * n] = 2.0 * p.y(i - n - 1);
  } else {
    r[2 * n] = 2.0;
  }
  return TangentVec(p, std::move(r));
}

std::vector<double> to_frame(const TangentVec& u) {
  return coords_to_frame<double>(u.base.coords(), u.comps);
}

TangentVec from_frame(const ModelPoint& p, std::span<const double> frame) {
  if (static_cast<int>(frame.size()) != p.dim()) throw StructuralError("frame vector dimension mismatch");
  return TangentVec(p, frame_to_coords<double>(p.coords(), FrameVec<double>(frame.begin(), frame.end())));
}

std::vector<double> connection_frame_coeffs(FrameIndex i, FrameIndex j) {
  if (i.n() != j.n()) throw StructuralError("frame indices belong to models of different dimension");
  const int n = i.n();
  std::vector<double> r(2 * n + 1, 0.0);
  const int xi_slot = 2 * n;
  const int a = i.slot();
  const int b = j.slot();
  const bool a_low = a < n, a_high = a >= n && a < 2 * n;
  const bool b_low = b < n, b_high = b >= n && b < 2 * n;
  if (a_low && b_high && a == b - n) r[xi_slot] = 1.0;   // nabla_{X_i} X_{i+n} = xi
  if (a_high && b_low && a - n == b) r[xi_slot] = -1.0;  // nabla_{X_{i+n}} X_i = -xi
  if (a_low && j.is_xi()) r[a + n] = -1.0;               // nabla_{X_i} xi = -X_{i+n}
  if (a_high && j.is_xi()) r[a - n] = 1.0;               // nabla_{X_{i+n}} xi = X_i
  if (i.is_xi() && b_low) r[b + n] = -1.0;               // nabla_xi X_i = -X_{i+n}
  if (i.is_xi() && b_high) r[b - n] = 1.0;               // nabla_xi X_{i+n} = X_i
  return r;
}

CurvatureExpansion curvature_general(double c, const CurvaturePairings& s) {
  auto need = [](const std::optional<double>& v, const char* name) {
    if (!v) throw StructuralError(std::string("curvature pairing '") + name + "' is missing");
    return *v;
  };
  const double g_yz = need(s.g_yz, "g(Y,Z)");
  const double g_xz = need(s.g_xz, "g(X,Z)");
  const double g_x_phiz = need(s.g_x_phiz, "g(X,phi Z)");
  const double g_y_phiz = need(s.g_y_phiz, "g(Y,phi Z)");
  const double g_x_phiy = need(s.g_x_phiy, "g(X,phi Y)");
  const double eta_x = need(s.eta_x, "eta(X)");
  const double eta_y = need(s.eta_y, "eta(Y)");
  const double eta_z = need(s.eta_z, "eta(Z)");

  const double a = (c + 3.0) / 4.0;
  const double b = (c - 1.0) / 4.0;
  CurvatureExpansion r;
  r.x = a * g_yz - b * eta_y * eta_z;
  r.y = -a * g_xz + b * eta_x * eta_z;
  r.phi_y = b * g_x_phiz;
  r.phi_x = -b * g_y_phiz;
  r.phi_z = 2.0 * b * g_x_phiy;
  r.xi = b * (g_xz * eta_y - g_yz * eta_x);
  return r;
}

FrameVec<double> curvature_general(double c, const FrameVec<double>& x, const FrameVec<double>& y,
                                   const FrameVec<double>& z) {
  if (x.size() != y.size() || y.size() != z.size() || x.size() < 3 || x.size() % 2 == 0) {
    throw StructuralError("curvature arguments must be frame vectors of equal odd dimension");
  }
  const auto phi_x = frame_phi(x), phi_y = frame_phi(y), phi_z = frame_phi(z);
  CurvaturePairings s;
  s.g_yz = frame_dot(y, z);
  s.g_xz = frame_dot(x, z);
  s.g_x_phiz = frame_dot(x, phi_z);
  s.g_y_phiz = frame_dot(y, phi_z);
  s.g_x_phiy = frame_dot(x, phi_y);
  s.eta_x = frame_eta(x);
  s.eta_y = frame_eta(y);
  s.eta_z = frame_eta(z);
  const CurvatureExpansion e = curvature_general(c, s);
  FrameVec<double> r(x.size(), 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = e.x * x[k] + e.y * y[k] + e.phi_x * phi_x[k] + e.phi_y * phi_y[k] + e.phi_z * phi_z[k];
  }
  r.back() += e.xi;
  return r;
}

TangentVec curvature_general(const SpaceFormParams& params, const ModelPoint& p, const TangentVec& x,
                             const TangentVec& y, const TangentVec& z) {
  params.validate();
  if (params.n != p.n()) throw StructuralError("space form parameters and point disagree on n");
  const TangentVec phi_x = phi(p, x), phi_y = phi(p, y), phi_z = phi(p, z);
  CurvaturePairings s;
  s.g_yz = metric(p, y, z);
  s.g_xz = metric(p, x, z);
  s.g_x_phiz = metric(p, x, phi_z);
  s.g_y_phiz = metric(p, y, phi_z);
  s.g_x_phiy = metric(p, x, phi_y);
  s.eta_x = eta(p, x);
  s.eta_y = eta(p, y);
  s.eta_z = eta(p, z);
  const CurvatureExpansion e = curvature_general(params.c, s);
  const TangentVec xi_p = xi(p);
  std::vector<double> r(p.dim(), 0.0);
  for (int k = 0; k < p.dim(); ++k) {
    r[k] = e.x * x.comps[k] + e.y * y.comps[k] + e.phi_x * phi_x.comps[k] + e.phi_y * phi_y.comps[k] +
           e.phi_z * phi_z.comps[k] + e.xi * xi_p.comps[k];
  }
  return TangentVec(p, std::move(r));
}

}  // namespace sesqui
