#include <benchmark/benchmark.h>

#include "dwlab/aux_weight.hpp"
#include "dwlab/damping.hpp"
#include "dwlab/grid.hpp"
#include "dwlab/heat.hpp"
#include "dwlab/quadrature.hpp"
#include "dwlab/wave.hpp"

namespace {

using namespace dwlab;

DampingProfile bench_profile() { return make_damping(1.0, 1.0); }

void BM_WaveStep(benchmark::State& state) {
  GridPtr grid = build_grid(1.0, 205.0, static_cast<int>(state.range(0)), 2);
  DampingProfile p = bench_profile();
  InitialData data = bump_initial_data(grid, 3.0, 1.0, 1.0, 0.0);
  WaveState s = make_initial_state(data, p, 0.45 * grid->dr());
  for (auto _ : state) {
    s = step_wave(s, p);
    benchmark::DoNotOptimize(s.u.values().data());
  }
  state.SetItemsProcessed(state.iterations() * grid->size());
}
BENCHMARK(BM_WaveStep)->Arg(1001)->Arg(4001);

void BM_HeatStep(benchmark::State& state) {
  GridPtr grid = build_grid(1.0, 205.0, static_cast<int>(state.range(0)), 2);
  DampingProfile p = bench_profile();
  InitialData data = bump_initial_data(grid, 3.0, 1.0, 1.0, 0.0);
  Field v = heat_initial_from_wave(data, p);
  CrankNicolson cn(grid, p, 0.02);
  for (auto _ : state) {
    cn.step(v.values());
    benchmark::DoNotOptimize(v.values().data());
  }
  state.SetItemsProcessed(state.iterations() * grid->size());
}
BENCHMARK(BM_HeatStep)->Arg(1001)->Arg(4001);

void BM_Quadrature(benchmark::State& state) {
  GridPtr grid = build_grid(1.0, 205.0, static_cast<int>(state.range(0)), 2);
  DampingProfile p = bench_profile();
  InitialData data = bump_initial_data(grid, 3.0, 1.0, 1.0, 0.0);
  for (auto _ : state) {
    double norm = weighted_l2_norm(data.u0, p, WeightKind::dmu);
    benchmark::DoNotOptimize(norm);
  }
  state.SetItemsProcessed(state.iterations() * grid->size());
}
BENCHMARK(BM_Quadrature)->Arg(4001);

void BM_NewtonPotential(benchmark::State& state) {
  GridPtr grid = build_grid(1.0, 300.0, static_cast<int>(state.range(0)), 2);
  DampingProfile p = bench_profile();
  Field src = Field::zeros(grid);
  for (int i = 0; i < grid->size(); ++i) {
    src[i] = smooth_bump(grid->node(i), 3.0, 1.5, 1.0);
  }
  (void)p;
  for (auto _ : state) {
    NewtonPotential pot = newton_potential_radial(src);
    benchmark::DoNotOptimize(pot.value.values().data());
  }
}
BENCHMARK(BM_NewtonPotential)->Arg(5981);

void BM_AssembleWeight(benchmark::State& state) {
  GridPtr grid = build_grid(1.0, 300.0, static_cast<int>(state.range(0)), 2);
  DampingProfile p = bench_profile();
  for (auto _ : state) {
    AuxiliaryWeight w = assemble_aux_weight(p, grid, 0.1, false);
    benchmark::DoNotOptimize(w.A.values().data());
  }
}
BENCHMARK(BM_AssembleWeight)->Arg(5981);

}  // namespace

BENCHMARK_MAIN();
