#include <benchmark/benchmark.h>

#include "resolvent/dense.hpp"
#include "resolvent/schemes.hpp"
#include "resolvent/spectra.hpp"

using namespace resolvent;

namespace {

struct Setup {
  explicit Setup(std::size_t n)
      : q(make_dense_projection(n, n / 4, 7)), gamma(make_dense_projection(n, n / 2, 8)),
        q_op(q.to_operator()), gamma_op(gamma.to_operator()),
        h(gamma_op.apply(random_field(n, 9))) {
    const auto [lo, hi] = dense_eigen_bounds(q, gamma);
    iv = SpectralInterval(lo, hi);
  }
  DenseOperator q;
  DenseOperator gamma;
  Operator q_op;
  Operator gamma_op;
  Field h;
  SpectralInterval iv{0.0, 1.0};
};

void run_scheme(benchmark::State& state, const Scheme& scheme) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  SolveConfig cfg;
  cfg.tol = 1e-10;
  cfg.record_trace = false;
  std::size_t iters = 0;
  for (auto _ : state) {
    const SolveResult r = solve(s.q_op, s.gamma_op, 2.0, s.h, scheme, s.iv, cfg);
    iters = r.trace.iterations;
    benchmark::DoNotOptimize(r.solution.data());
  }
  state.counters["iters"] = static_cast<double>(iters);
}

void BM_PowerSeries(benchmark::State& state) { run_scheme(state, Scheme::power_series()); }
void BM_RichardsonOptimal(benchmark::State& state) {
  run_scheme(state, Scheme::richardson(ReferenceChoice::Optimal));
}
void BM_Accelerated(benchmark::State& state) { run_scheme(state, Scheme::accelerated()); }
void BM_Lifted(benchmark::State& state) { run_scheme(state, Scheme::lifted()); }

void BM_EstimateBounds(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_bounds(s.q_op, s.gamma_op, 50, 3));
}

}  // namespace

BENCHMARK(BM_PowerSeries)->Arg(64)->Arg(256);
BENCHMARK(BM_RichardsonOptimal)->Arg(64)->Arg(256);
BENCHMARK(BM_Accelerated)->Arg(64)->Arg(256);
BENCHMARK(BM_Lifted)->Arg(64)->Arg(256);
BENCHMARK(BM_EstimateBounds)->Arg(64)->Arg(256);
