// Serial against OpenMP execution of the three batch kernels.

#include <benchmark/benchmark.h>

#include "icstab/closure.hpp"
#include "icstab/monte_carlo.hpp"
#include "icstab/sim.hpp"

using namespace icstab;

namespace {

const ChannelParams kT1{{10, 5, 5, 10, 2}, {800, 800}, {0.5, 0.4}};
const StrategyPair kSic{Decoder::Sic, Decoder::Sic, {}};

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_MonteCarlo(benchmark::State& state) {
  const LinkQuery q{kSic, Link::One, Scenario::Both, kT1};
  for (auto _ : state) benchmark::DoNotOptimize(mc_success_count(q, 1 << 20, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}

void BM_ClosureSweep(benchmark::State& state) {
  SweepSpec spec = SweepSpec::power_sweep(800.0);
  spec.q1_values = uniform_grid(0.0, 1.0, 6);
  spec.q2_values = spec.q1_values;
  for (auto _ : state)
    benchmark::DoNotOptimize(closure_over_access_and_power(kSic, kT1.topology, kT1.thresholds, spec, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.cell_count()));
}

void BM_SeedBatch(benchmark::State& state) {
  SimConfig cfg;
  cfg.channel = kT1;
  cfg.strategy = kSic;
  cfg.arrivals = {0.4, 0.4};
  cfg.horizon = 200'000;
  const auto seeds = seed_list(3, 8);
  for (auto _ : state) benchmark::DoNotOptimize(run_seeds(cfg, seeds, {}, mode(state)));
  state.SetItemsProcessed(state.iterations() * 8 * 200'000);
}

}  // namespace

BENCHMARK(BM_MonteCarlo)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClosureSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SeedBatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
