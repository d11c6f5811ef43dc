#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sesqui/analyzer.hpp"
#include "sesqui/frenet.hpp"

namespace sesqui::testing {

/// Constant frame data satisfying one case's equalities, with the delta it admits.
struct SyntheticCase {
  std::string name;
  CaseTag tag;
  double c;
  std::vector<double> k;
  double f, phi_t_e4, eta_e3;
  double rho;
  double delta2 = 1.5;

  int n() const { return 2; }
  FrenetData frenet() const { return constant_frenet(n(), k); }
  FrameScalars scalars() const {
    const FrenetData d = frenet();
    return constant_scalars(d.samples(), d.m(), f, 0.0, phi_t_e4, 0.0, eta_e3, 0.0);
  }
  DeltaPair delta() const { return {rho * delta2, delta2}; }
};

inline std::vector<SyntheticCase> synthetic_cases() {
  const double a = std::numbers::pi / 4;
  std::vector<SyntheticCase> out;
  // c = 1: k1^2 + k2^2 = 1 - rho.
  out.push_back({"I", CaseTag::kI, 1.0, {0.8, 0.5}, 0.3, 0.0, 0.3 / 0.5, 1.0 - 0.89});
  // phi T orthogonal to E2: k1^2 + k2^2 = (c+3)/4 - rho.
  out.push_back({"II circle", CaseTag::kII, -3.0, {2.0}, 0.0, 0.0, 0.0, -4.0});
  out.push_back({"II helix", CaseTag::kII, 3.0, {1.0, 0.5}, 0.0, 0.0, 0.0, 1.5 - 1.25});
  // phi T = +-E2, k2 = 1: k1^2 = c - 1 - rho.
  out.push_back({"III", CaseTag::kIII, 3.0, {0.8, 1.0}, 1.0, 0.0, 1.0, 2.0 - 0.64});
  // phi T = cos a E2 + sin a E4, k2 k3 = -3(c-1)/8 sin 2a.
  {
    const double c = -3.0, k1 = 1.0, k2 = 1.0;
    const double k3 = -3.0 * (c - 1.0) / 8.0 * std::sin(2 * a) / k2;
    const double rho = (c + 3) / 4 + 3 * (c - 1) / 4 * std::cos(a) * std::cos(a) - k1 * k1 - k2 * k2;
    out.push_back({"IV", CaseTag::kIV, c, {k1, k2, k3}, std::cos(a), std::sin(a), std::cos(a) / k2, rho});
  }
  return out;
}

}  // namespace sesqui::testing
