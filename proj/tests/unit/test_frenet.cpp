#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "random_curves.hpp"
#include "sesqui/error.hpp"
#include "sesqui/frenet.hpp"

namespace sesqui {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Frenet, ExampleCircle) {
  const CurveSpec c = CurveSpec::parse("n=2\nsin(2*t)\n-cos(2*t)\n0\n0\n1\n");
  const FrenetData d = frenet_apparatus(c, Grid::periodic_grid(0, 2 * kPi, 64));
  ASSERT_EQ(d.order, 2);
  for (std::size_t s = 0; s < d.samples(); ++s) {
    EXPECT_NEAR(d.k(1, s), 2.0, 1e-12);
    EXPECT_NEAR(d.k_d1(1, s), 0.0, 1e-10);
  }
  EXPECT_LT(max_gram_deviation(d), 1e-14);
  const FrameScalars f = frame_scalars(d);
  for (double v : f.f) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Frenet, OrdersOfGeneratedFamilies) {
  testing::CurveFactory factory(3);
  std::vector<testing::GeneratedCurve> curves = factory.unit_speed_batch(12);
  curves.push_back(factory.helix_r9());
  curves.push_back(factory.helix_r9());
  for (const auto& g : curves) {
    const FrenetData d = frenet_apparatus(g.spec, g.grid);
    EXPECT_EQ(d.order, g.expected_order) << g.family;
    EXPECT_LT(max_gram_deviation(d), 1e-10) << g.family;
    for (int i = 1; i < d.order; ++i) {
      double lo = 1e300, hi = -1e300;
      for (double v : d.curvatures[i - 1].value) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      EXPECT_LT(hi - lo, 1e-9) << g.family << " k" << i;
    }
  }
}

TEST(Frenet, ComplexCircleHasUnitSecondCurvature) {
  testing::CurveFactory factory(5);
  for (int i = 0; i < 4; ++i) {
    const auto g = factory.complex_circle();
    const FrenetData d = frenet_apparatus(g.spec, g.grid);
    ASSERT_EQ(d.order, 3);
    const FrameScalars s = frame_scalars(d);
    EXPECT_NEAR(d.k(2, 0), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(s.f[0]), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(s.eta_e3[0]), 1.0, 1e-10);
  }
}

// Frenet equations re-derived: nabla_T E_i = -k_{i-1} E_{i-1} + k_i E_{i+1}, checked
// against covariant_derivative_along applied to the sampled frame.
TEST(Frenet, FrameSatisfiesFrenetEquations) {
  testing::CurveFactory factory(17);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = factory.regular_profile();
    const Grid grid = Grid::open_grid(g.grid.t0, g.grid.t1, 401);
    const FrenetData d = frenet_apparatus(g.spec, grid);
    for (int i = 1; i <= d.order; ++i) {
      const auto de = covariant_derivative_along(g.spec, grid, d.frames[i - 1]);
      for (int s = 8; s < grid.samples - 8; s += 16) {
        for (std::size_t k = 0; k < de[s].size(); ++k) {
          double want = 0.0;
          if (i > 1) want -= d.k(i - 1, s) * d.frames[i - 2][s][k];
          if (i < d.order) want += d.k(i, s) * d.frames[i][s][k];
          EXPECT_NEAR(de[s][k], want, 1e-4 * (1 + std::abs(want))) << "E" << i << " sample " << s;
        }
      }
    }
  }
}

TEST(Frenet, LegendreFrameIdentities) {
  testing::CurveFactory factory(23);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = factory.regular_profile();
    const Grid grid = Grid::open_grid(g.grid.t0, g.grid.t1, 201);
    const FrenetData d = frenet_apparatus(g.spec, grid);
    ASSERT_GE(d.order, 3);
    const FrameScalars s = frame_scalars(d);
    const std::vector<double> fd = grid_derivative(s.f, grid.step(), false);
    for (std::size_t j = 0; j < d.samples(); ++j) {
      EXPECT_NEAR(s.eta_e2[j], 0.0, 1e-10);
      EXPECT_NEAR(d.k(2, j) * s.eta_e3[j], s.f[j], 1e-8);
      if (j >= 4 && j + 4 < d.samples()) {
        EXPECT_NEAR(fd[j] / d.speed[j], d.k(2, j) * s.phi_t_e3[j], 1e-5 * (1 + std::abs(s.phi_t_e3[j] * d.k(2, j))));
      }
    }
  }
}

TEST(Frenet, CurvatureDerivativesMatchSampleDifferences) {
  testing::CurveFactory factory(29);
  const auto g = factory.regular_profile();
  const Grid grid = Grid::open_grid(g.grid.t0, g.grid.t1, 401);
  const FrenetData d = frenet_apparatus(g.spec, grid);
  FrenetData stripped = d;
  for (auto& c : stripped.curvatures) {
    c.d1.clear();
    c.d2.clear();
  }
  for (int i = 1; i < d.order; ++i) {
    for (std::size_t s = 10; s + 10 < d.samples(); s += 20) {
      EXPECT_NEAR(stripped.k_d1(i, s), d.k_d1(i, s), 1e-5 * (1 + std::abs(d.k_d1(i, s))));
      EXPECT_NEAR(stripped.k_d2(i, s), d.k_d2(i, s), 1e-4 * (1 + std::abs(d.k_d2(i, s))));
    }
  }
}

TEST(Frenet, MixedOrderIsRejected) {
  // A straight piece followed by a bend: k_1 vanishes only on part of the grid.
  const CurveSpec c = CurveSpec::parse("n=1\n2*t\n(t-1)^4\nlegendre(0)\n");
  EXPECT_THROW(frenet_apparatus(c, Grid::open_grid(0.5, 1.5, 33)), GeometryError);
}

TEST(Frenet, ValidateCatchesInconsistentData) {
  FrenetData d = constant_frenet(2, {1.0, 0.5});
  EXPECT_NO_THROW(validate(d));
  d.curvatures.pop_back();
  EXPECT_THROW(validate(d), StructuralError);
  EXPECT_THROW(constant_frenet(1, {1.0, 1.0, 1.0}), StructuralError);
}

TEST(Frenet, SyntheticScalarsCompleteToUnitVectors) {
  const FrameScalars s = constant_scalars(4, 4, 0.6, 0.0, 0.8, 0.0, 0.3, 0.0);
  EXPECT_NEAR(s.phi_t_outside[0], 0.0, 1e-15);
  EXPECT_NEAR(s.xi_outside[0], std::sqrt(1 - 0.09), 1e-15);
  EXPECT_NEAR(s.outside_inner[0], 0.0, 1e-15);
}

}  // namespace
}  // namespace sesqui
