#pragma once

// The Sasakian space form R^{2n+1}(-3):
//   eta = 1/2 (dz - sum y_i dx_i),  xi = 2 d/dz,
//   g   = eta (x) eta + 1/4 sum (dx_i^2 + dy_i^2),
// with the g-orthonormal frame X_i = 2 d/dy_i, X_{i+n} = phi X_i = 2 (d/dx_i + y_i d/dz), xi.
//
// Vectors come in two flavours. TangentVec holds coordinate components
// (x_1..x_n, y_1..y_n, z). Frame components are coefficients on
// (X_1..X_n, X_{n+1}..X_{2n}, xi); since the frame is orthonormal, g is the
// Euclidean dot product on them and phi, eta are constant matrices.

#include <optional>
#include <span>
#include <vector>

#include "sesqui/error.hpp"
#include "sesqui/jet.hpp"

namespace sesqui {

struct SpaceFormParams {
  double c = -3.0;
  int n = 2;

  void validate() const {
    if (n < 1) throw StructuralError("space form dimension parameter n must be >= 1");
  }
};

class ModelPoint {
 public:
  explicit ModelPoint(std::vector<double> coords);
  static ModelPoint origin(int n) { return ModelPoint(std::vector<double>(2 * n + 1, 0.0)); }

  int n() const noexcept { return static_cast<int>(coords_.size() - 1) / 2; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double x(int i) const { return coords_[i]; }
  double y(int i) const { return coords_[n() + i]; }
  double z() const { return coords_.back(); }
  std::span<const double> coords() const noexcept { return coords_; }

 private:
  std::vector<double> coords_;
};

struct TangentVec {
  TangentVec(ModelPoint base, std::vector<double> comps);

  ModelPoint base;
  std::vector<double> comps;
};

/// 1-based frame selector: 1..n -> X_i, n+1..2n -> X_{i}, 2n+1 -> xi.
class FrameIndex {
 public:
  FrameIndex(int index, int n);

  int value() const noexcept { return index_; }
  int n() const noexcept { return n_; }
  int slot() const noexcept { return index_ - 1; }  ///< position in a frame component vector
  bool is_xi() const noexcept { return index_ == 2 * n_ + 1; }

 private:
  int index_;
  int n_;
};

// ---------------------------------------------------------------------------
// Coordinate-level structure tensors.

double metric(const ModelPoint& p, const TangentVec& u, const TangentVec& v);
double eta(const ModelPoint& p, const TangentVec& u);
TangentVec phi(const ModelPoint& p, const TangentVec& u);
TangentVec xi(const ModelPoint& p);
TangentVec frame_field(const ModelPoint& p, FrameIndex idx);

std::vector<double> to_frame(const TangentVec& u);
TangentVec from_frame(const ModelPoint& p, std::span<const double> frame);

/// Frame components of nabla_{X_i} X_j (constant coefficients on this model).
std::vector<double> connection_frame_coeffs(FrameIndex i, FrameIndex j);

// ---------------------------------------------------------------------------
// Frame-component algebra, generic over double and Jet.

template <class S>
using FrameVec = std::vector<S>;

template <class S>
S frame_dot(const FrameVec<S>& u, const FrameVec<S>& v) {
  S acc = u[0] * v[0];
  for (std::size_t k = 1; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

template <class S>
FrameVec<S> frame_phi(const FrameVec<S>& u) {
  const std::size_t n = (u.size() - 1) / 2;
  FrameVec<S> r(u.size(), S(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    r[i + n] = u[i];
    r[i] = -u[i + n];
  }
  r[2 * n] = u[2 * n] * 0.0;
  return r;
}

template <class S>
FrameVec<S> frame_xi(std::size_t dim) {
  FrameVec<S> r(dim, S(0.0));
  r[dim - 1] = S(1.0);
  return r;
}

template <class S>
const S& frame_eta(const FrameVec<S>& u) {
  return u.back();
}

/// Frame components of a coordinate vector `u` based at a point with coordinates `p`.
template <class S>
FrameVec<S> coords_to_frame(std::span<const S> p, std::span<const S> u) {
  const std::size_t n = (p.size() - 1) / 2;
  FrameVec<S> r(p.size(), S(0.0));
  S horizontal_z = u[2 * n];
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = u[n + i] * 0.5;
    r[n + i] = u[i] * 0.5;
    horizontal_z -= p[n + i] * u[i];
  }
  r[2 * n] = horizontal_z * 0.5;
  return r;
}

template <class S>
FrameVec<S> frame_to_coords(std::span<const S> p, const FrameVec<S>& a) {
  const std::size_t n = (p.size() - 1) / 2;
  FrameVec<S> u(p.size(), S(0.0));
  S z = a[2 * n] * 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[n + i] = a[i] * 2.0;
    u[i] = a[n + i] * 2.0;
    z += p[n + i] * a[n + i] * 2.0;
  }
  u[2 * n] = z;
  return u;
}

/// nabla_T V from the frame components of T, V and the t-derivatives of V's components,
/// expanded with the Levi-Civita table of the frame (Leibniz on the coefficients).
template <class S>
FrameVec<S> covariant_derivative(const FrameVec<S>& t, const FrameVec<S>& v, const FrameVec<S>& dv) {
  const std::size_t n = (t.size() - 1) / 2;
  const S& s = t[2 * n];
  const S& c = v[2 * n];
  FrameVec<S> r(t.size(), S(0.0));
  S vertical = dv[2 * n];
  for (std::size_t k = 0; k < n; ++k) {
    const S& p = t[k];
    const S& q = t[n + k];
    const S& a = v[k];
    const S& b = v[n + k];
    r[k] = dv[k] + s * b + c * q;
    r[n + k] = dv[n + k] - s * a - c * p;
    vertical += b * p - a * q;
  }
  r[2 * n] = vertical;
  return r;
}

// ---------------------------------------------------------------------------
// Curvature tensor of a Sasakian space form M(c).

/// Scalar table for the abstract evaluation of R(X, Y)Z; every entry is required.
struct CurvaturePairings {
  std::optional<double> g_yz, g_xz;
  std::optional<double> g_x_phiz, g_y_phiz, g_x_phiy;
  std::optional<double> eta_x, eta_y, eta_z;
};

/// R(X, Y)Z as a combination of X, Y, phi X, phi Y, phi Z and xi.
struct CurvatureExpansion {
  double x = 0.0, y = 0.0, phi_x = 0.0, phi_y = 0.0, phi_z = 0.0, xi = 0.0;
};

/// Throws StructuralError naming the first missing pairing.
CurvatureExpansion curvature_general(double c, const CurvaturePairings& pairings);

/// Concrete evaluation on frame components (any c; the frame algebra is model independent).
FrameVec<double> curvature_general(double c, const FrameVec<double>& x, const FrameVec<double>& y,
                                   const FrameVec<double>& z);

/// Concrete evaluation on coordinate vectors of the R^{2n+1}(-3) model (params.c is used as given).
TangentVec curvature_general(const SpaceFormParams& params, const ModelPoint& p, const TangentVec& x,
                             const TangentVec& y, const TangentVec& z);

}  // namespace sesqui
