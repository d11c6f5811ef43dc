#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "random_curves.hpp"
#include "sesqui/error.hpp"
#include "sesqui/variational.hpp"
#include "variations.hpp"

namespace sesqui {
namespace {

constexpr double kPi = std::numbers::pi;

const CurveSpec& example() {
  static const CurveSpec c = CurveSpec::parse("n=2\nsin(2*t)\n-cos(2*t)\n0\n0\n1\n");
  return c;
}

TEST(DiscreteEnergy, ExampleCircle) {
  const DiscreteCurve c = DiscreteCurve::sample(example(), Grid::periodic_grid(0, 2 * kPi, 256));
  const EnergyBreakdown e = discrete_energy(c, {1.0, 1.0});
  EXPECT_NEAR(e.dirichlet, 2 * kPi, 1e-5);
  EXPECT_NEAR(e.bending, 8 * kPi, 1e-5);
  EXPECT_NEAR(discrete_energy(c, {-8.0, 2.0}).total, 0.0, 1e-4);
  EXPECT_LT(max_legendre_defect(c), 1e-7);
  EXPECT_LT(discrete_residual(c, {-8.0, 2.0}), 1e-3);
}

TEST(DiscreteEnergy, ConvergesAtFourthOrder) {
  testing::CurveFactory f(31);
  const CurveSpec spec = testing::closed_profile(f);
  double e[3];
  for (int i = 0; i < 3; ++i) {
    const DiscreteCurve c = DiscreteCurve::sample(spec, Grid::periodic_grid(0, 2 * kPi, 64 << i));
    e[i] = discrete_energy(c, {0.7, 1.3}).total;
  }
  const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(DiscreteEnergy, GradientMatchesDirectionalDerivative) {
  testing::CurveFactory f(37);
  const CurveSpec spec = testing::closed_profile(f);
  const Grid grid = Grid::periodic_grid(0, 2 * kPi, 64);
  const DiscreteCurve c = DiscreteCurve::sample(spec, grid);
  const DeltaPair delta{0.4, 1.1};
  const auto g = energy_gradient(c, delta);
  const Variation v = testing::random_variation(f, 5, 0.0, 0.0);
  double predicted = 0.0;
  DiscreteCurve plus = c, minus = c;
  const double eps = 1e-5;
  for (int j = 0; j < grid.samples; ++j) {
    const auto vj = v(grid.at(j));
    for (int k = 0; k < 5; ++k) {
      predicted += g[j][k] * vj[k];
      plus.points[j][k] += eps * vj[k];
      minus.points[j][k] -= eps * vj[k];
    }
  }
  const double measured = (discrete_energy(plus, delta).total - discrete_energy(minus, delta).total) / (2 * eps);
  EXPECT_NEAR(predicted, measured, 1e-5 * (1 + std::abs(measured)));
}

TEST(DiscreteEnergy, OpenCurveGradientFixesEnds) {
  testing::CurveFactory f(41);
  const auto g = f.regular_profile();
  const DiscreteCurve c = DiscreteCurve::sample(g.spec, Grid::open_grid(g.grid.t0, g.grid.t1, 40));
  EXPECT_FALSE(c.closed);
  const auto grad = energy_gradient(c, {1.0, 1.0});
  for (int j : {0, 1, 2, 3, 36, 37, 38, 39}) {
    for (double x : grad[j]) EXPECT_EQ(x, 0.0);
  }
  double interior = 0.0;
  for (double x : grad[20]) interior += std::abs(x);
  EXPECT_GT(interior, 0.0);
}

TEST(DiscreteCurve, Validation) {
  DiscreteCurve c = DiscreteCurve::sample(example(), Grid::periodic_grid(0, 2 * kPi, 16));
  EXPECT_NO_THROW(c.validate());
  c.points[3] = c.points[2];
  EXPECT_THROW(c.validate(), GeometryError);
  c.points.resize(4);
  EXPECT_THROW(c.validate(), StructuralError);
}

TEST(FirstVariation, ClosedCurvesMatchResidualIntegral) {
  testing::CurveFactory f(43);
  for (int trial = 0; trial < 4; ++trial) {
    const CurveSpec spec = testing::closed_profile(f);
    const DeltaPair delta{f.uniform(-2, 2), f.uniform(0.5, 2)};
    const Variation v = testing::random_variation(f, 5, 0.0, 0.0);
    double prev = 0.0;
    for (int samples : {128, 256}) {
      const Grid grid = Grid::periodic_grid(0, 2 * kPi, samples);
      const int sigma = calibrate_variation_sign(spec, grid, delta, v);
      EXPECT_EQ(sigma, 1);
      const FirstVariationReport r = first_variation_check(spec, grid, delta, v, sigma);
      EXPECT_LT(std::abs(r.difference), 1e-2 * (1 + std::abs(r.measured)));
      if (prev > 0.0) {
        EXPECT_LT(std::abs(r.difference), prev);
      }
      prev = std::abs(r.difference);
    }
  }
}

TEST(FirstVariation, OpenCurvesWithCompactVariations) {
  testing::CurveFactory f(47);
  const auto g = f.regular_profile();
  const Grid grid = Grid::open_grid(g.grid.t0, g.grid.t1, 257);
  const Variation v = testing::random_variation(f, 5, g.grid.t0 + 0.15, g.grid.t1 - 0.15);
  const FirstVariationReport r = first_variation_check(g.spec, grid, {0.5, 1.0}, v, 1);
  EXPECT_LT(std::abs(r.difference), 1e-4 * (1 + std::abs(r.measured)));

  const Variation wide = testing::random_variation(f, 5, 0.0, 0.0);
  EXPECT_THROW(first_variation_check(g.spec, grid, {0.5, 1.0}, wide, 1), StructuralError);
}

TEST(FirstVariation, ExampleIsCritical) {
  const Grid grid = Grid::periodic_grid(0, 2 * kPi, 512);
  testing::CurveFactory f(53);
  for (int trial = 0; trial < 3; ++trial) {
    const Variation v = testing::random_variation(f, 5, 0.0, 0.0);
    const FirstVariationReport r = first_variation_check(example(), grid, {-8.0, 2.0}, v, 1);
    EXPECT_LT(std::abs(r.measured), 1e-4);
    EXPECT_LT(std::abs(r.predicted), 1e-10);
  }
}

TEST(FirstVariation, ParametricResidualEqualsArcLengthResidualAtUnitSpeed) {
  const Grid grid = Grid::periodic_grid(0, kPi, 16);
  const auto p = parametric_residual(example(), grid, {1.0, 3.0});
  const ResidualReport r = residual_direct(example(), grid, -3.0, {1.0, 3.0});
  for (int j = 0; j < grid.samples; ++j) {
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(p[j][k], r.vectors[j][k], 1e-12);
  }
}

TEST(Descent, EnergyDecreasesMonotonically) {
  const DiscreteCurve start = DiscreteCurve::sample(example(), Grid::periodic_grid(0, 2 * kPi, 64));
  const Trajectory t = descend(start, {0.0, 1.0}, {10, 1e-3});
  ASSERT_EQ(t.rows.size(), 11u);
  EXPECT_EQ(t.stop_reason, "completed");
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    EXPECT_LE(t.rows[i].energy, t.rows[i - 1].energy);
    EXPECT_EQ(t.rows[i].step, static_cast<int>(i));
  }
  EXPECT_LT(t.rows.back().max_defect, 1e-6);
}

TEST(Descent, ZeroStepsAndStationaryStart) {
  const DiscreteCurve start = DiscreteCurve::sample(example(), Grid::periodic_grid(0, 2 * kPi, 32));
  EXPECT_EQ(descend(start, {0.0, 1.0}, {0, 1e-3}).rows.size(), 1u);
  EXPECT_THROW(descend(start, {0.0, 1.0}, {5, 0.0}), StructuralError);
  EXPECT_THROW(descend(start, {0.0, 1.0}, {-1, 1e-3}), StructuralError);

  const CurveSpec line = CurveSpec::parse("n=2\n0\n2*t\n0\n0\n1\n");
  const Trajectory t = descend(DiscreteCurve::sample(line, Grid::open_grid(0, 1, 32)), {1.0, 1.0}, {5, 1e-3});
  EXPECT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.stop_reason, "stationary (gradient vanished)");
}

}  // namespace
}  // namespace sesqui
