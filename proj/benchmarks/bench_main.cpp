#include <numbers>

#include <benchmark/benchmark.h>

#include "sesqui/analyzer.hpp"
#include "sesqui/expression.hpp"
#include "sesqui/frenet.hpp"
#include "sesqui/variational.hpp"

namespace {

using namespace sesqui;

constexpr double kPi = std::numbers::pi;

const CurveSpec& helix() {
  static const CurveSpec c = CurveSpec::parse(
      "n=2\n0.3*sin(t)+0.2*cos(2*t)+0.1*t\n0.5*cos(t)-0.3*sin(2*t)\n0.4*sin(3*t)+0.2*t\n0.6*cos(t)\nlegendre(0.25)\n");
  return c;
}

const CurveSpec& circle() {
  static const CurveSpec c = CurveSpec::parse("n=2\nsin(2*t)\n-cos(2*t)\n0\n0\n1\n");
  return c;
}

void BM_ExpressionJet(benchmark::State& state) {
  const Expression e = Expression::parse("sin(2*t)*exp(-t^2/3) + sqrt(1 + t^2)/cos(t/4)");
  const Jet t = Jet::variable(0.7, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(e.evaluate(t));
}
BENCHMARK(BM_ExpressionJet)->Arg(2)->Arg(6)->Arg(12);

void BM_FrenetApparatus(benchmark::State& state) {
  const Grid grid = Grid::open_grid(0.2, 1.4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frenet_apparatus(helix(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FrenetApparatus)->Arg(64)->Arg(512);

void BM_ResidualDirect(benchmark::State& state) {
  const Grid grid = Grid::open_grid(0.2, 1.4, static_cast<int>(state.range(0)));
  const FrenetData d = frenet_apparatus(helix(), grid);
  for (auto _ : state) benchmark::DoNotOptimize(residual_direct(helix(), grid, -3.0, {0.5, 1.0}, d));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ResidualDirect)->Arg(64)->Arg(512);

void BM_ResidualClosedForm(benchmark::State& state) {
  const Grid grid = Grid::open_grid(0.2, 1.4, static_cast<int>(state.range(0)));
  const FrenetData d = frenet_apparatus(helix(), grid);
  const FrameScalars s = frame_scalars(d);
  for (auto _ : state) benchmark::DoNotOptimize(residual_closed_form(d, s, -3.0, {0.5, 1.0}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ResidualClosedForm)->Arg(64)->Arg(512);

void BM_DiscreteEnergy(benchmark::State& state) {
  const DiscreteCurve c = DiscreteCurve::sample(circle(), Grid::periodic_grid(0, 2 * kPi, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(discrete_energy(c, {-8.0, 2.0}));
}
BENCHMARK(BM_DiscreteEnergy)->Arg(128)->Arg(1024);

void BM_EnergyGradient(benchmark::State& state) {
  const DiscreteCurve c = DiscreteCurve::sample(circle(), Grid::periodic_grid(0, 2 * kPi, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(c, {-8.0, 2.0}));
}
BENCHMARK(BM_EnergyGradient)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
