#include <benchmark/benchmark.h>

#include "ziegler/integrate.hpp"
#include "ziegler/lyapunov.hpp"
#include "ziegler/model.hpp"
#include "ziegler/observe.hpp"

using namespace ziegler;

static void BM_FullRhs(benchmark::State& state) {
  const Params p = reference_params();
  FullState s{3.1, 0.0, 0.1, 0.2};
  for (auto _ : state) {
    const FullState d = full_rhs(p, s);
    benchmark::DoNotOptimize(d);
    s.phi1 += 1e-9;  // defeat value caching across iterations
  }
}
BENCHMARK(BM_FullRhs);

static void BM_RescaledRhs(benchmark::State& state) {
  const Params p = reference_params();
  FullState s{3.1, 0.0, 0.1, 0.2};
  for (auto _ : state) {
    const FullState d = rescaled_rhs(p, s);
    benchmark::DoNotOptimize(d);
    s.phi1 += 1e-9;
  }
}
BENCHMARK(BM_RescaledRhs);

static void BM_Jacobian(benchmark::State& state) {
  const Params p = reference_params();
  FullState s{3.1, 0.0, 0.1, 0.2};
  for (auto _ : state) {
    const Mat4 j = jacobian(p, s);
    benchmark::DoNotOptimize(j);
    s.phi1 += 1e-9;
  }
}
BENCHMARK(BM_Jacobian);

static void BM_Energy(benchmark::State& state) {
  const Params p = reference_params();
  FullState s{3.1, 0.0, 0.1, 0.2};
  for (auto _ : state) {
    const double h = energy(p, s);
    benchmark::DoNotOptimize(h);
    s.v2 += 1e-9;
  }
}
BENCHMARK(BM_Energy);

static void BM_IntegrateFull(benchmark::State& state) {
  Params p = reference_params();
  IntegratorConfig cfg;
  cfg.t_max = static_cast<double>(state.range(0));
  cfg.store_stride = 0;
  const FullField field{p};
  const std::array<double, 4> y0{3.14159265358979, 0.0, 0.1, 0.1};
  for (auto _ : state) {
    auto traj = integrate<4>(field, y0, cfg);
    benchmark::DoNotOptimize(traj.y);
    state.counters["steps"] = static_cast<double>(traj.n_accepted);
  }
}
BENCHMARK(BM_IntegrateFull)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
