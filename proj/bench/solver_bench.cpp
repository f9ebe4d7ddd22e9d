// Serial reference against the OpenMP estimators on the disk scene.

#include <benchmark/benchmark.h>

#include "wos/geometry.hpp"
#include "wos/solver.hpp"

namespace {

using namespace wos;

const ScreenedPoissonProblem& disk_problem() {
  static const ScreenedPoissonProblem p{std::make_shared<DiskEnvironment>(0.3, 2), BoundarySpec::constant(0.0),
                                        SourceSpec::dirac(make_vector({8, 0}))};
  return p;
}

WalkConfig config(const benchmark::State& state, int workers) {
  WalkConfig w;
  w.n_walks = state.range(0);
  w.screening = 1.0;
  w.workers = workers;
  return w;
}

using ValueFn = ValueEstimate (*)(const ScreenedPoissonProblem&, const WalkConfig&, const Vector&);
using GradientFn = GradientEstimate (*)(const ScreenedPoissonProblem&, const WalkConfig&, const Vector&);

template <auto Solve>
void run(benchmark::State& state, int workers) {
  const auto cfg = config(state, workers);
  const Vector x = make_vector({-8, 0});
  for (auto _ : state) benchmark::DoNotOptimize(Solve(disk_problem(), cfg, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void value_reference(benchmark::State& s) { run<reference::solve_value>(s, 1); }
void value_parallel(benchmark::State& s) { run<static_cast<ValueFn>(solve_value)>(s, 0); }
void gradient_reference(benchmark::State& s) { run<reference::solve_gradient>(s, 1); }
void gradient_parallel(benchmark::State& s) { run<static_cast<GradientFn>(solve_gradient)>(s, 0); }

}  // namespace

BENCHMARK(value_reference)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(value_parallel)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(gradient_reference)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(gradient_parallel)->RangeMultiplier(10)->Range(1'000, 100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
