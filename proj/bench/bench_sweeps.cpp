// Parallel sweeps against the serial reference on the same inputs.

#include <benchmark/benchmark.h>

#include "fplab/reference.hpp"
#include "fplab/verifier.hpp"

namespace {

using namespace fplab;

const Alpha kAlpha = Alpha::rational(5, 12);

void BM_MainTheoremParallel(benchmark::State& state) {
  const auto e1 = example_e1_space(static_cast<int>(state.range(0)));
  const auto F = CClassFn::scaled(0.5);
  const auto gp = GaugePair::linear(2.0, 1.0);
  const auto G = IntegralGauge::power_self();
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_cclass_integral_suzuki(e1.space, e1.map, kAlpha, F, gp, G));
  }
  state.counters["pairs"] = static_cast<double>(e1.space.size() * (e1.space.size() - 1));
}

void BM_MainTheoremReference(benchmark::State& state) {
  const auto e1 = example_e1_space(static_cast<int>(state.range(0)));
  const auto F = CClassFn::scaled(0.5);
  const auto gp = GaugePair::linear(2.0, 1.0);
  // The reference has no log-space route, so keep distances representable.
  const auto G = IntegralGauge::identity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::check_cclass_integral_suzuki(e1.space, e1.map, kAlpha.value(), F, gp, G));
  }
  state.counters["pairs"] = static_cast<double>(e1.space.size() * (e1.space.size() - 1));
}

void BM_MainTheoremParallelIdentityGauge(benchmark::State& state) {
  const auto e1 = example_e1_space(static_cast<int>(state.range(0)));
  const auto F = CClassFn::scaled(0.5);
  const auto gp = GaugePair::linear(2.0, 1.0);
  const auto G = IntegralGauge::identity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_cclass_integral_suzuki(e1.space, e1.map, kAlpha, F, gp, G));
  }
}

void BM_CClassGridParallel(benchmark::State& state) {
  const auto F = catalog_cclass(static_cast<int>(state.range(0)));
  CClassGrid grid;
  grid.s_points = grid.t_points = 200;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cclass(F, grid));
}

void BM_CClassGridReference(benchmark::State& state) {
  const auto F = catalog_cclass(static_cast<int>(state.range(0)));
  CClassGrid grid;
  grid.s_points = grid.t_points = 200;
  for (auto _ : state) benchmark::DoNotOptimize(reference::verify_cclass(F, grid));
}

}  // namespace

BENCHMARK(BM_MainTheoremParallel)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MainTheoremParallelIdentityGauge)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MainTheoremReference)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CClassGridParallel)->Arg(3)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CClassGridReference)->Arg(3)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
