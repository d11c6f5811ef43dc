#include "sesqui/grid.hpp"

#include <cmath>
#include <string>

#include "sesqui/error.hpp"

namespace sesqui {

void Grid::validate() const {
  if (samples < 5) throw StructuralError("grid needs at least 5 samples, got " + std::to_string(samples));
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw StructuralError("grid interval must satisfy t0 < t1");
  }
}

std::vector<double> Grid::points() const {
  std::vector<double> p(samples);
  for (int j = 0; j < samples; ++j) p[j] = at(j);
  return p;
}

std::vector<double> grid_derivative(std::span<const double> f, double h, bool periodic) {
  const int n = static_cast<int>(f.size());
  if (n < 5) throw StructuralError("five-point stencil needs at least 5 samples, got " + std::to_string(n));
  std::vector<double> d(n);
  const double inv = 1.0 / (12.0 * h);
  auto at = [&](int j) { return f[((j % n) + n) % n]; };
  for (int j = 0; j < n; ++j) {
    if (periodic || (j >= 2 && j < n - 2)) {
      d[j] = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) * inv;
    }
  }
  if (!periodic) {
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * inv;
  }
  return d;
}

}  // namespace sesqui
