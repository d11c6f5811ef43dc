#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sesqui/contact_model.hpp"
#include "sesqui/expression.hpp"
#include "sesqui/grid.hpp"
#include "sesqui/jet.hpp"

namespace sesqui {

/// Coordinate jets of a curve at one parameter value.
struct CoordinateJet {
  double t = 0.0;
  std::vector<Jet> coords;

  int dim() const noexcept { return static_cast<int>(coords.size()); }
  int n() const noexcept { return (dim() - 1) / 2; }
  double value(int i) const { return coords[i].value(); }
  /// k-th t-derivative of coordinate i (k up to the jet degree).
  double derivative(int i, int k) const { return coords[i].derivative(k); }
  std::vector<double> values() const;
};

/// A curve in R^{2n+1} given by one expression per coordinate (x_1..x_n, y_1..y_n, z).
///
/// The z coordinate may instead be a Legendre lift: z(t) = z0 + int_0^t sum y_i x_i' ds,
/// integrated numerically for the value while its derivatives come from the integrand jet.
class CurveSpec {
 public:
  CurveSpec(int n, std::vector<Expression> coords);

  /// Parses a curve file:
  ///
  ///   # comment
  ///   n=2
  ///   sin(2*t)
  ///   -cos(2*t)
  ///   0
  ///   0
  ///   legendre(1)        <- or any expression for z
  ///
  /// Blank lines and text after '#' are ignored. Errors carry the 1-based line number.
  static CurveSpec parse(std::string_view text);
  static CurveSpec from_expressions(int n, const std::vector<std::string>& coords);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 2 * n_ + 1; }
  bool is_legendre_lift() const noexcept { return lift_z0_.has_value(); }
  std::optional<double> lift_z0() const noexcept { return lift_z0_; }
  /// Expressions for the coordinates; 2n entries when z is lifted.
  const std::vector<Expression>& expressions() const noexcept { return exprs_; }

  CoordinateJet jet(double t, int degree = 4) const;
  ModelPoint point(double t) const;

  /// Numerically integrated lift value; throws NumericError if the quadrature does not converge.
  double lifted_z(double t) const;

 private:
  friend CurveSpec make_legendre(int, std::vector<Expression>, double);
  CurveSpec(int n, std::vector<Expression> horizontal, double z0);

  int n_;
  std::vector<Expression> exprs_;
  std::optional<double> lift_z0_;
};

/// Legendre curve with the given x_1..x_n, y_1..y_n profile and z(0) = z0.
CurveSpec make_legendre(int n, std::vector<Expression> horizontal, double z0);

/// Values and exact derivatives of orders 1-4 at t.
CoordinateJet parse_and_jet(const CurveSpec& spec, double t);

/// Coordinate components of gamma'(t).
TangentVec velocity(const CurveSpec& spec, double t);
/// eta(gamma'(t)); zero exactly when the curve is Legendre at t.
double legendre_defect(const CurveSpec& spec, double t);

struct ArcLengthReport {
  double max_speed_deviation = 0.0;   ///< max |‖gamma'‖_g - 1|
  double min_speed = 0.0;
  double max_speed = 0.0;
  double max_legendre_defect = 0.0;
  double max_euclidean_deviation = 0.0;  ///< max |sum_{i<2n+1} (gamma_i')^2 - 4|
  double max_five_term_deviation = 0.0;  ///< same with (gamma_z')^2 included; diagnostic only
  double length = 0.0;
};

/// Throws GeometryError at the first irregular sample.
ArcLengthReport arclength_check(const CurveSpec& spec, const Grid& grid);

struct SampledCurve {
  std::vector<double> s;                     ///< arc-length positions (equal spacing)
  std::vector<double> t;                     ///< parameter values reaching them
  std::vector<std::vector<double>> points;   ///< coordinates per sample
  double length = 0.0;
};

/// Samples at equal arc-length spacing, inverting s(t) = int ‖gamma'‖_g numerically.
SampledCurve reparametrize_arclength(const CurveSpec& spec, const Grid& grid);

/// Jets of the moving point and its unit tangent at one parameter value.
struct MovingJets {
  double t = 0.0;
  std::vector<Jet> point;       ///< coordinates, full degree
  FrameVec<Jet> tangent;        ///< unit tangent, frame components, one degree lower
  Jet inv_speed;                ///< 1 / ‖gamma'‖_g, converts d/dt into d/ds
  double speed = 0.0;
};

/// Throws GeometryError if the curve is irregular at t.
MovingJets moving_jets(const CurveSpec& spec, double t, int degree);

/// nabla_T V along the curve with T the unit tangent, for V given by frame-component jets.
/// The result is one degree lower than min(V, T).
FrameVec<Jet> covariant_derivative_along(const MovingJets& m, const FrameVec<Jet>& field);

/// nabla_T V for a field known only by samples on the grid: coefficient derivatives use
/// five-point differences (one-sided at the ends of open grids).
std::vector<FrameVec<double>> covariant_derivative_along(const CurveSpec& spec, const Grid& grid,
                                                         const std::vector<FrameVec<double>>& field);

}  // namespace sesqui
