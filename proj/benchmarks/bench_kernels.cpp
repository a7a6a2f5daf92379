#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gyre/boundary.hpp"
#include "gyre/double_gyre.hpp"
#include "gyre/riemann.hpp"
#include "gyre/source_step.hpp"
#include "gyre/splitting.hpp"
#include "gyre/tracer.hpp"
#include "gyre/wave_propagation.hpp"

using namespace gyre;

namespace {

// A spun-up looking basin: rest depth plus a smooth gyre-shaped perturbation.
ConservedField basin_state(const Grid& g) {
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) {
    const double x = (g.xc(i) - g.x0) / g.x_length();
    const double y = (g.yc(j) - g.y0) / g.y_length();
    s = conserved({500.0 + 20.0 * x * (1 - x) * y, 0.1 * (1 - 2 * y), 0.05 * (1 - 2 * x)});
  });
  fill_ghosts(q, BoundaryKind::solid_wall);
  return q;
}

Grid basin_grid(int n) { return Grid::over(n, 2 * n, 0, 1e6, 0, 2e6); }

void BM_RiemannSolve(benchmark::State& st) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> h(0.5, 2.0), u(-1.0, 1.0);
  std::vector<State> l(1024), r(1024);
  for (std::size_t k = 0; k < l.size(); ++k) {
    l[k] = conserved({h(gen), u(gen), u(gen)});
    r[k] = conserved({h(gen), u(gen), u(gen)});
  }
  for (auto _ : st) {
    for (std::size_t k = 0; k < l.size(); ++k) {
      benchmark::DoNotOptimize(solve_riemann(l[k], r[k], 1.0, Direction::x));
    }
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(l.size()));
}
BENCHMARK(BM_RiemannSolve);

void BM_HyperbolicStep(benchmark::State& st) {
  const Grid g = basin_grid(static_cast<int>(st.range(0)));
  const ConservedField q = basin_state(g);
  ConservedField out(g);
  HyperbolicStepper stepper(g);
  HyperbolicOptions o;
  o.limiter = Limiter::mc;
  o.closed_walls = true;
  for (auto _ : st) stepper.step(q, out, 60.0, 0.03, o);
  st.SetItemsProcessed(st.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_HyperbolicStep)->Arg(25)->Arg(50)->Arg(100);

void BM_SourceStep(benchmark::State& st) {
  const Grid g = basin_grid(static_cast<int>(st.range(0)));
  ConservedField q = basin_state(g);
  SourceStepper stepper(g, GyreSetup{}.params());
  for (auto _ : st) stepper.advance(q, 60.0, 0.0, BoundaryKind::solid_wall);
  st.SetItemsProcessed(st.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_SourceStep)->Arg(25)->Arg(50)->Arg(100);

void BM_FullStep(benchmark::State& st) {
  GyreRunOptions o;
  o.dx = 1e6 / static_cast<double>(st.range(0));
  FractionalStepSolver solver(gyre_config(GyreSetup{}, o));
  solver.set_state(basin_state(solver.grid()));
  for (auto _ : st) solver.advance(60.0);
  st.SetItemsProcessed(st.iterations() * solver.grid().nx * solver.grid().ny);
}
BENCHMARK(BM_FullStep)->Arg(25)->Arg(50);

void BM_TracerStep(benchmark::State& st) {
  const Grid g = basin_grid(static_cast<int>(st.range(0)));
  const FaceVelocities faces = edge_velocities(basin_state(g));
  const std::vector<CircleSpec> circles{{5e5, 5e5, 1.5e5}, {5e5, 1.5e6, 1.5e5}};
  TracerField c = init_concentration(g, circles, 1);
  TracerStepper stepper(g);
  for (auto _ : st) stepper.step(c, faces, 60.0, Limiter::mc, BoundaryKind::solid_wall);
  st.SetItemsProcessed(st.iterations() * g.nx * g.ny);
}
BENCHMARK(BM_TracerStep)->Arg(25)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
