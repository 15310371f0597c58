#include <benchmark/benchmark.h>

#include "epiq/netgen/generators.hpp"
#include "epiq/sim/sir.hpp"

namespace {

using namespace epiq;

const netgen::Graph& ba10() {
  static const auto g = netgen::gen_ba({10000, 10}, Seed{5});
  return g;
}

void run(benchmark::State& state, const sim::QuarantinePolicy& policy) {
  sim::EpidemicParams params;
  params.beta = static_cast<double>(state.range(0)) / 100.0;
  std::uint64_t s = 0;
  std::int64_t infections = 0;
  for (auto _ : state) {
    const auto out = sim::run_sir(ba10(), params, policy, Seed{++s});
    infections += static_cast<std::int64_t>(out.total_infected);
  }
  state.SetItemsProcessed(infections);
}

void BM_SirNoQuarantine(benchmark::State& state) { run(state, sim::NoQuarantine{}); }
BENCHMARK(BM_SirNoQuarantine)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SirSingleQuarantine(benchmark::State& state) { run(state, sim::FractionAffected{{0.5}}); }
BENCHMARK(BM_SirSingleQuarantine)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SirInfectedCount(benchmark::State& state) { run(state, sim::InfectedCount{50}); }
BENCHMARK(BM_SirInfectedCount)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
