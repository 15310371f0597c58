#include <benchmark/benchmark.h>

#include "epiq/gfun/distribution.hpp"
#include "epiq/netgen/generators.hpp"
#include "epiq/netgen/stats.hpp"

namespace {

using namespace epiq;

void BM_GenBA(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(netgen::gen_ba({n, 10}, Seed{++s}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GenBA)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ConfigModel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto seq = netgen::sample_degree_sequence(gfun::DegreeDistribution::simple_powerlaw(3.0), n, Seed{1});
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(netgen::gen_config_model(seq, Seed{++s}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ConfigModel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Clustering(benchmark::State& state) {
  const auto g = netgen::gen_ba({10000, 10}, Seed{3});
  for (auto _ : state) benchmark::DoNotOptimize(netgen::average_clustering(g));
}
BENCHMARK(BM_Clustering)->Unit(benchmark::kMillisecond);

void BM_SampledPath(benchmark::State& state) {
  const auto g = netgen::gen_ba({10000, 10}, Seed{3});
  const auto pairs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(netgen::average_shortest_path(g, pairs, Seed{4}));
}
BENCHMARK(BM_SampledPath)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
