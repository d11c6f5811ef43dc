#pragma once

#include <vector>

#include "sesqui/contact_model.hpp"
#include "sesqui/curve.hpp"
#include "sesqui/grid.hpp"

namespace sesqui {

/// A curvature function sampled on the grid with its first two arc-length derivatives.
/// Derivative vectors may be left empty; consumers then differentiate the samples.
struct CurvatureSamples {
  std::vector<double> value;
  std::vector<double> d1;
  std::vector<double> d2;
};

/// Frenet apparatus of a curve sampled on a grid.
///
/// `frames[i][s]` holds the frame components of E_{i+1} at sample s for i < order.
/// `curvatures[i]` holds k_{i+1} for i < order - 1. The struct can also be filled by hand
/// (with or without frames) to feed the analyzer synthetic curvature data.
struct FrenetData {
  int n = 2;
  int order = 1;
  bool periodic = true;
  std::vector<double> t;
  std::vector<std::vector<FrameVec<double>>> frames;
  std::vector<CurvatureSamples> curvatures;
  std::vector<std::vector<double>> points;
  std::vector<double> speed;
  double next_curvature_max = 0.0;  ///< max of k_r over the grid (below tolerance)

  int m() const noexcept { return order < 4 ? order : 4; }
  std::size_t samples() const noexcept { return t.size(); }
  bool has_frames() const noexcept { return static_cast<int>(frames.size()) >= order && !frames.empty(); }

  /// k_i (1-based); zero for i >= order.
  double k(int i, std::size_t s) const;
  /// First and second arc-length derivatives of k_i, differentiated from samples if not stored.
  double k_d1(int i, std::size_t s) const;
  double k_d2(int i, std::size_t s) const;

  /// E_i (1-based) as a coordinate tangent vector; needs frames and points.
  TangentVec frame_vector(int i, std::size_t s) const;
};

/// Throws StructuralError unless the sizes are mutually consistent.
void validate(const FrenetData& data);

/// Frenet frames and curvatures from jets. Order r is the first index whose curvature is
/// below `tol` at every sample; a curvature below `tol` only somewhere raises
/// GeometryError("non-constant osculating order"). Supports n <= 7.
FrenetData frenet_apparatus(const CurveSpec& spec, const Grid& grid, double tol = 1e-7);

/// Max |g(E_i, E_j) - delta_ij| over all samples.
double max_gram_deviation(const FrenetData& data);

/// Scalars pairing phi T and xi with the Frenet frame, per sample. Entries for missing
/// frame vectors are zero.
struct FrameScalars {
  std::vector<double> f;         ///< g(phi T, E_2)
  std::vector<double> phi_t_e3;  ///< g(phi T, E_3)
  std::vector<double> phi_t_e4;  ///< g(phi T, E_4)
  std::vector<double> eta_e2;
  std::vector<double> eta_e3;
  std::vector<double> eta_e4;
  /// Norm of phi T minus its projection on span{E_2..E_m}.
  std::vector<double> phi_t_outside;
  /// Norm of xi minus its projection on span{E_2..E_m}.
  std::vector<double> xi_outside;
  /// Inner product of the two outside parts.
  std::vector<double> outside_inner;

  std::size_t samples() const noexcept { return f.size(); }
  /// Fills the three outside-span entries from the unit length of phi T and xi
  /// (for hand-made scalars without frames).
  void complete_from_unit_identities(int m);
};

FrameScalars frame_scalars(const FrenetData& data);

/// Hand-made Frenet data with constant curvatures k_1..k_{r-1} (order r = size + 1) and zero
/// derivatives, sampled `samples` times on an open unit-spaced grid. No frames.
FrenetData constant_frenet(int n, const std::vector<double>& curvatures, std::size_t samples = 8);

/// Constant frame scalars; the outside-span entries follow from the unit identities.
FrameScalars constant_scalars(std::size_t samples, int m, double f, double phi_t_e3, double phi_t_e4,
                              double eta_e2 = 0.0, double eta_e3 = 0.0, double eta_e4 = 0.0);

}  // namespace sesqui
