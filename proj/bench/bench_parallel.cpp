// Serial reference vs OpenMP paths for verification campaigns and roof
// restarts.

#include <benchmark/benchmark.h>

#include "qent/campaign.hpp"
#include "qent/random.hpp"
#include "qent/roof.hpp"

namespace {

using namespace qent;

void campaign(benchmark::State& state, CheckId id, BipartiteDims dims, Execution exec) {
    const CampaignConfig cfg{static_cast<std::size_t>(state.range(0)), 1, std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(run_check(id, dims, cfg, exec).worst_residual);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void roof(benchmark::State& state, BipartiteDims dims, bool parallel) {
    const DensityMatrix rho = random_mixed_state(dims, dims.total() == 4 ? 4 : 3, 17);
    OptimizerConfig cfg;
    cfg.restarts = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const RoofResult r = parallel ? convex_roof(rho, RoofMeasure::Concurrence, cfg)
                                      : convex_roof_serial(rho, RoofMeasure::Concurrence, cfg);
        benchmark::DoNotOptimize(r.value);
    }
}

}  // namespace

BENCHMARK_CAPTURE(campaign, tracenorm_6x6_serial, CheckId::TracenormVsSchmidt, BipartiteDims(6, 6), Execution::Serial)
    ->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(campaign, tracenorm_6x6_parallel, CheckId::TracenormVsSchmidt, BipartiteDims(6, 6), Execution::Parallel)
    ->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(campaign, chen_8_serial, CheckId::Chen, BipartiteDims(8, 8), Execution::Serial)
    ->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(campaign, chen_8_parallel, CheckId::Chen, BipartiteDims(8, 8), Execution::Parallel)
    ->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(roof, qubits_serial, BipartiteDims(2, 2), false)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(roof, qubits_parallel, BipartiteDims(2, 2), true)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(roof, qutrits_serial, BipartiteDims(3, 3), false)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(roof, qutrits_parallel, BipartiteDims(3, 3), true)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
