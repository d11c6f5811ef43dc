#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sesqui/contact_model.hpp"
#include "sesqui/curve.hpp"
#include "sesqui/frenet.hpp"
#include "sesqui/grid.hpp"

namespace sesqui {

/// Coefficients of the energy delta_1 int |T|^2 + delta_2 int |nabla_T T|^2.
struct DeltaPair {
  double delta1 = 0.0;
  double delta2 = 1.0;
};

/// Sign of the (c+3)/4 k_1 term in the E_2 coefficient. kConsistent is the sign that
/// follows from expanding the bitension field; kFlipped reproduces the opposite sign
/// for comparison.
enum class CurvatureTermSign { kConsistent, kFlipped };

// ---------------------------------------------------------------------------
// Direct covariant calculus (concrete model, c = -3).

/// nabla_T T at every sample.
std::vector<TangentVec> tension(const CurveSpec& spec, const Grid& grid);
/// nabla_T nabla_T nabla_T T - R(T, nabla_T T)T at every sample. Throws DomainError unless
/// c = -3, the only space form realized by the coordinate model.
std::vector<TangentVec> bitension(const CurveSpec& spec, const Grid& grid, double c = -3.0);

struct ResidualComponents {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, phi_t = 0.0, xi = 0.0;
};

/// tau_delta = delta_2 tau_2 - delta_1 tau sampled on a grid.
struct ResidualReport {
  int m = 1;
  std::vector<FrameVec<double>> vectors;  ///< frame components; empty without frames
  std::vector<ResidualComponents> components;
  std::vector<double> norms;
  double max_norm = 0.0;
  /// g(tau_delta, E_i) per sample for i = 1..4 (zero beyond m).
  std::array<std::vector<double>, 4> equations;
  std::array<double, 4> max_equation{};
  /// Part outside span{E_1..E_m, phi T, xi} (structure check of the expansion).
  double max_off_span = 0.0;
  /// Part outside span{E_1..E_m}.
  double max_outside_frenet = 0.0;
  std::vector<double> outside_frenet;
};

/// Direct evaluation decomposed along E_1..E_m, phi T, xi by least squares.
ResidualReport residual_direct(const CurveSpec& spec, const Grid& grid, double c, DeltaPair delta,
                               const FrenetData& frenet);
ResidualReport residual_direct(const CurveSpec& spec, const Grid& grid, double c, DeltaPair delta);

/// Closed-form frame expansion from curvatures and frame scalars (any c). Vectors are
/// reconstructed when frames are present.
ResidualReport residual_closed_form(const FrenetData& frenet, const FrameScalars& scalars, double c, DeltaPair delta,
                                    CurvatureTermSign sign = CurvatureTermSign::kConsistent);

// ---------------------------------------------------------------------------
// Pointwise conditions.

struct EquationCheck {
  int index = 1;
  bool evaluated = false;
  double max_abs = 0.0;
  bool pass = true;
};

struct EquationsReport {
  int m = 1;
  std::array<EquationCheck, 4> equations;
  bool span_condition_pass = true;
  std::string span_condition_via;  ///< "c=1", "phiT_perp_E2", "phiT_in_span" or "none"
  double span_condition_leakage = 0.0;
  bool pass = true;
};

EquationsReport equations_check(const FrenetData& frenet, const FrameScalars& scalars, double c, DeltaPair delta,
                                double tol = 1e-6, CurvatureTermSign sign = CurvatureTermSign::kConsistent);

// ---------------------------------------------------------------------------
// Classification and solving.

enum class CurveShape { kGeodesic, kCircle, kHelix, kGeneral };
enum class CaseTag { kI, kII, kIII, kIV };

const char* to_string(CurveShape s);
const char* to_string(CaseTag c);

struct CurveClass {
  CurveShape shape = CurveShape::kGeneral;
  std::optional<CaseTag> case_tag;  ///< empty for geodesics
  bool f_constant = true;
  std::optional<double> alpha0;     ///< Case IV with constant f
  bool alpha_consistent = false;    ///< g(E_4, phi T) = sin alpha0 and g(E_3, phi T) = 0
  std::optional<double> w0;         ///< mean of k_2^2 + 3(c-1)/4 f^2 (order >= 3)
  double w0_variance = 0.0;
  std::vector<std::string> notes;
};

CurveClass classify(const FrenetData& frenet, const FrameScalars& scalars, double c, double tol = 1e-6);

struct DeltaConstraint {
  std::string name;
  double value = 0.0;
  bool satisfied = true;
};

/// Admissible rho = delta_1 / delta_2 with delta_2 = 1.
struct DeltaSolution {
  CurveClass cls;
  bool any_delta = false;           ///< geodesic: tau vanishes
  std::optional<double> rho;        ///< case formula
  std::string formula;
  bool feasible = false;
  std::vector<DeltaConstraint> constraints;
  std::vector<std::string> notes;
  /// Pointwise <tau_2, tau> / <tau, tau> and its spread.
  std::vector<double> pointwise_rho;
  double pointwise_rho_mean = 0.0;
  double pointwise_rho_spread = 0.0;
  /// max |tau_2 - rho tau| over the grid for the case rho (or the pointwise mean).
  double parallel_residual = 0.0;
  /// Case III: c - k_1^2 - k_2^2 and max |k_2 - 1|.
  std::optional<double> rho_alternative;
  std::optional<double> k2_deviation;
};

DeltaSolution solve_delta(const FrenetData& frenet, const FrameScalars& scalars, double c, double tol = 1e-6);

struct IndependenceReport {
  std::size_t set_size = 0;
  int dimension = 0;
  int required_n = 0;
  bool dimension_sufficient = true;
  double min_gram_eigenvalue = 0.0;
  double min_singular_value = 0.0;
  bool independent = false;
  std::string note;
};

/// Smallest eigenvalue of the Gram matrix of frame-component vectors.
double min_gram_eigenvalue(const std::vector<FrameVec<double>>& vectors);

/// Checks {T, E_2, (E_3), phi T, nabla_T phi T, xi} for order 2 or 3 curves.
IndependenceReport independence_check(const CurveSpec& spec, const FrenetData& frenet, const Grid& grid,
                                      double tol = 1e-8);

struct Case4Report {
  double rho = 0.0;
  double k1_prime = 0.0;     ///< max |k_1'|
  double sum_rule = 0.0;     ///< max |k_1^2 + k_2^2 - (c+3)/4 - 3(c-1)/4 f^2 + rho|
  double k2_prime = 0.0;     ///< max |k_2' + 3(c-1)/4 f g(E_3, phi T)|
  double k2k3 = 0.0;         ///< max |k_2 k_3 + 3(c-1)/4 f g(E_4, phi T)|
  double w0 = 0.0;
  double w0_variance = 0.0;
  double f_spread = 0.0;
  double k2_spread = 0.0;
  double max_phi_t_e3 = 0.0;
  bool system_satisfied = false;
  bool helix_conclusion = false;  ///< f, k_2 constant and g(E_3, phi T) = 0
};

Case4Report case4_ode_residuals(const FrenetData& frenet, const FrameScalars& scalars, double c, DeltaPair delta,
                                double tol = 1e-6);

}  // namespace sesqui
