#include <benchmark/benchmark.h>

#include "resolvent/conductivity.hpp"
#include "resolvent/fourier.hpp"
#include "resolvent/phase_map.hpp"

using namespace resolvent;

namespace {

void BM_GammaApply2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec grid({n, n});
  const Operator gamma = fourier_gamma_conductivity(grid);
  const Field x = random_field(2 * grid.cells(), 1);
  Field y(x.size());
  for (auto _ : state) {
    gamma.apply(x.values(), y.values());
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.cells()));
}

void BM_GammaApply3D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec grid({n, n, n});
  const Operator gamma = fourier_gamma_conductivity(grid);
  const Field x = random_field(3 * grid.cells(), 1);
  Field y(x.size());
  for (auto _ : state) {
    gamma.apply(x.values(), y.values());
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.cells()));
}

void BM_InclusionSolve(benchmark::State& state) {
  const GridSpec grid({128, 128});
  const PhaseMap chi = make_inclusion(grid, 0.3);
  const Scheme scheme = state.range(0) == 0 ? Scheme::accelerated() : Scheme::lifted();
  SolveConfig cfg;
  cfg.tol = 1e-8;
  cfg.record_trace = false;
  std::size_t iters = 0;
  for (auto _ : state) {
    const ConductivityResult r = conductivity_solve(grid, chi, 10.0, {1.0, 0.0}, scheme, std::nullopt, cfg);
    iters = r.trace.iterations;
    benchmark::DoNotOptimize(r.effective_column.data());
  }
  state.SetLabel(state.range(0) == 0 ? "accelerated" : "lifted");
  state.counters["iters"] = static_cast<double>(iters);
}

}  // namespace

BENCHMARK(BM_GammaApply2D)->Arg(64)->Arg(256);
BENCHMARK(BM_GammaApply3D)->Arg(32);
BENCHMARK(BM_InclusionSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
