// Serial vs parallel timings for the three hot kernels: sparse
// matrix-vector products, stiffness application (assembly + apply), and
// candidate evaluation inside one evolution step. The parallel paths are
// bitwise-identical to the serial ones, so this only measures speed.

#include <benchmark/benchmark.h>

#include "fracsim/scenario.hpp"

using namespace fracsim;

namespace {

// 5-point Laplacian on an n x n grid.
CsrMatrix grid_matrix(int n) {
  std::vector<int> rows, cols;
  std::vector<double> vals;
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rows.push_back(id(i, j)), cols.push_back(id(i, j)), vals.push_back(4.0);
      const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a >= 0 && a < n && b >= 0 && b < n)
          rows.push_back(id(i, j)), cols.push_back(id(a, b)), vals.push_back(-1.0);
      }
    }
  return CsrMatrix::from_triplets(n * n, rows, cols, vals);
}

void bm_spmv(benchmark::State& state, ExecPolicy policy) {
  const CsrMatrix a = grid_matrix(static_cast<int>(state.range(0)));
  std::vector<double> x(static_cast<std::size_t>(a.n), 1.0), y;
  for (int i = 0; i < a.n; ++i) x[static_cast<std::size_t>(i)] = 1.0 + 0.001 * i;
  for (auto _ : state) {
    spmv(a, x, y, policy);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.vals.size()));
}

struct SlitFixture {
  DomainSpec dom = example_domain();
  SlitMesh mesh;
  ScalarField u;

  explicit SlitFixture(double h) {
    const LatticeSpec lat = make_lattice(dom.rect, 1.0 / 16.0);
    const CrackSet crack = horizontal_crack(lat, 0.25, 0.75, 0.0, 1e-9);
    MeshParams mp;
    mp.h = h;
    mesh = build_mesh(dom, crack, mp);
    u = solve_mixed(mesh, [](const Vec2& p, double) { return p.y; }).u;
  }
};

void bm_stiffness_residual(benchmark::State& state, ExecPolicy policy) {
  const SlitFixture fx(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto r = stiffness_residual(fx.u, policy);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fx.mesh.tris.size()));
}

void bm_incremental_step(benchmark::State& state, ExecPolicy policy) {
  const ScenarioConfig cfg =
      midline_scenario(0.25, 0.75, 1.0 / 16.0, 1.0 / static_cast<double>(state.range(0)), 2.0, 8);
  const BoundaryData g = cfg.problem.program.at(1.5);
  int evaluated = 0;
  for (auto _ : state) {
    const CrackSet next = incremental_step(cfg.problem, cfg.problem.initial, g, policy, &evaluated);
    benchmark::DoNotOptimize(&next);
  }
  state.SetItemsProcessed(state.iterations() * evaluated);
}

}  // namespace

BENCHMARK_CAPTURE(bm_spmv, serial, ExecPolicy::Serial)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(bm_spmv, parallel, ExecPolicy::Parallel)->Arg(256)->Arg(512);
BENCHMARK_CAPTURE(bm_stiffness_residual, serial, ExecPolicy::Serial)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(bm_stiffness_residual, parallel, ExecPolicy::Parallel)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(bm_incremental_step, serial, ExecPolicy::Serial)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_incremental_step, parallel, ExecPolicy::Parallel)->Arg(16)->Arg(32)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
