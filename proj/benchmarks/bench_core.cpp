#include <benchmark/benchmark.h>

#include <cmath>

#include "gossiploc/gossip.hpp"
#include "gossiploc/metrics.hpp"
#include "gossiploc/network.hpp"
#include "gossiploc/spectral.hpp"

namespace {

using namespace gossiploc;

Scenario mesh_scenario(double half_width) {
    const Framework fw = sinc_mesh_framework(half_width, 0.5, std::sqrt(2.0) / 2.0);
    return make_scenario(fw, {0, 1}, uniform_selection(fw), Box::standard(3), 1);
}

void BM_SlotUpdate(benchmark::State& state) {
    const Scenario scen = mesh_scenario(static_cast<double>(state.range(0)));
    GossipState gs = init_state(scen, 7);
    for (auto _ : state) {
        apply_event(gs, sample_event(gs), 1.0);
        benchmark::DoNotOptimize(gs.estimates.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SlotUpdate)->Arg(2)->Arg(4)->Arg(8);

void BM_LaplacianAssembly(benchmark::State& state) {
    const Scenario scen = mesh_scenario(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        const ExpectedLaplacian lap = expected_laplacian(scen);
        benchmark::DoNotOptimize(lap.full.data());
    }
}
BENCHMARK(BM_LaplacianAssembly)->Arg(2)->Arg(4);

void BM_RigiditySVD(benchmark::State& state) {
    const Scenario scen = mesh_scenario(2.0);
    for (auto _ : state) {
        const RigidityReport report = rigidity_test(scen.fw);
        benchmark::DoNotOptimize(report.rigidity_matrix_rank);
    }
}
BENCHMARK(BM_RigiditySVD);

void BM_BearingError(benchmark::State& state) {
    const Scenario scen = mesh_scenario(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(total_bearing_error(scen, scen.initial_estimates));
    }
}
BENCHMARK(BM_BearingError)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
