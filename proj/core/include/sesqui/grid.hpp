#pragma once

#include <span>
#include <vector>

namespace sesqui {

/// Uniform parameter grid. A periodic grid has `samples` points on [t0, t1) and wraps;
/// an open grid has `samples` points on [t0, t1] including both ends.
struct Grid {
  double t0 = 0.0;
  double t1 = 1.0;
  int samples = 512;
  bool periodic = true;

  static Grid periodic_grid(double t0, double t1, int samples) { return {t0, t1, samples, true}; }
  static Grid open_grid(double t0, double t1, int samples) { return {t0, t1, samples, false}; }

  /// Throws StructuralError for fewer than 5 samples or an empty interval.
  void validate() const;
  double step() const { return (t1 - t0) / (periodic ? samples : samples - 1); }
  double at(int j) const { return t0 + j * step(); }
  std::vector<double> points() const;
};

/// First derivative of uniformly sampled values with five-point stencils: central in the
/// interior, wrapped on periodic grids, one-sided at the ends of open grids.
std::vector<double> grid_derivative(std::span<const double> values, double step, bool periodic);

}  // namespace sesqui
