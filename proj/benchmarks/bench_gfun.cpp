#include <benchmark/benchmark.h>

#include <algorithm>

#include "epiq/gfun/genfn.hpp"

namespace {

using namespace epiq::gfun;

void BM_HerdThresholdPowerlaw(benchmark::State& state) {
  const auto d = DegreeDistribution::simple_powerlaw(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(herd_threshold(d));
}
BENCHMARK(BM_HerdThresholdPowerlaw);

void BM_TotalRemovedCurve(benchmark::State& state) {
  const auto d = DegreeDistribution::ba_analytic(1);
  for (auto _ : state) {
    double best = 1.0;
    for (int i = 1; i < 1000; ++i) best = std::min(best, total_removed(d, i / 1000.0, 2.0 / 3.0));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_TotalRemovedCurve)->Unit(benchmark::kMillisecond);

}  // namespace
