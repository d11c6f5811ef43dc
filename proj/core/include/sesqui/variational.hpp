#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sesqui/analyzer.hpp"
#include "sesqui/curve.hpp"
#include "sesqui/grid.hpp"

namespace sesqui {

/// Polyline curve sampled at uniform parameter spacing h. Closed curves wrap around;
/// open curves keep their first and last four vertices fixed.
struct DiscreteCurve {
  int n = 2;
  std::vector<std::vector<double>> points;
  bool closed = true;
  double h = 0.0;

  static DiscreteCurve sample(const CurveSpec& spec, const Grid& grid);

  std::size_t size() const noexcept { return points.size(); }
  /// Throws StructuralError for fewer than 5 vertices or bad dimensions and
  /// GeometryError for a repeated vertex (degenerate segment).
  void validate() const;
};

struct EnergyBreakdown {
  double dirichlet = 0.0;  ///< delta_1 sum |gamma'|^2 h
  double bending = 0.0;    ///< delta_2 sum |nabla_{gamma'} gamma'|^2 h
  double total = 0.0;
};

/// Vertex-centred quadrature of delta_1 |gamma'|^2 + delta_2 |nabla_{gamma'} gamma'|^2 with
/// five-point velocity and acceleration stencils. Open curves sum over vertices 2..N-3.
EnergyBreakdown discrete_energy(const DiscreteCurve& curve, DeltaPair delta);

/// dE / d(vertex coordinate) by central differences; fixed vertices get zero rows.
std::vector<std::vector<double>> energy_gradient(const DiscreteCurve& curve, DeltaPair delta, double step = 1e-6);

/// max |eta(gamma')| at the vertices, with five-point velocities.
double max_legendre_defect(const DiscreteCurve& curve);

/// max |delta_2 tau_2 - delta_1 tau| (parameter form) over the vertices, all derivatives from
/// five-point differences; open curves skip eight vertices at each end.
double discrete_residual(const DiscreteCurve& curve, DeltaPair delta);

/// Coordinate displacement field along the curve, as a function of the parameter.
using Variation = std::function<std::vector<double>(double t)>;

/// delta_2 tau_2 - delta_1 tau with respect to the curve parameter (frame components); equals
/// the arc-length residual for unit-speed curves and is the Euler-Lagrange field of the
/// parameter energy in general.
std::vector<FrameVec<double>> parametric_residual(const CurveSpec& spec, const Grid& grid, DeltaPair delta);

struct FirstVariationReport {
  double measured = 0.0;   ///< (E(gamma + eps V) - E(gamma - eps V)) / (2 eps)
  double predicted = 0.0;  ///< 2 int <tau_delta, V> (unsigned)
  int sigma = 1;
  double difference = 0.0; ///< measured - sigma * predicted
  double h = 0.0;
  double epsilon = 0.0;
};

/// Throws StructuralError if an open-grid variation does not vanish on the fixed vertices.
FirstVariationReport first_variation_check(const CurveSpec& spec, const Grid& grid, DeltaPair delta,
                                           const Variation& v, int sigma, double epsilon = 1e-4);

/// Sign relating the measured first variation to 2 int <tau_delta, V>. Throws NumericError
/// when the predicted value is too small to decide.
int calibrate_variation_sign(const CurveSpec& spec, const Grid& grid, DeltaPair delta, const Variation& v,
                             double epsilon = 1e-4);

struct DescentOptions {
  int steps = 100;
  double rate = 1e-3;
  double armijo = 1e-4;
  double min_step = 1e-14;
};

struct TrajectoryRow {
  int step = 0;
  double energy = 0.0;
  double max_defect = 0.0;
  double analyzer_residual = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  DiscreteCurve final_curve;
  std::string stop_reason;
};

/// Projected gradient descent: each vertex moves along the gradient raised into ker eta,
/// with Armijo backtracking. Row 0 describes the starting curve.
Trajectory descend(DiscreteCurve curve, DeltaPair delta, const DescentOptions& options);

}  // namespace sesqui
