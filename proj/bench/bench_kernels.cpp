#include <benchmark/benchmark.h>

#include "tsw/kernels.hpp"

using namespace tsw;

namespace {

const StringParams kRigid{0.5, 1e-3, Stiffness::rigid()};
const StringParams kElastic{0.5, 1e-3, Stiffness::finite(60e3)};
const WinchGeometry kWinch{5e-3, 50e-3, 0.2};

Exec exec_of(const benchmark::State &state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_SolveBatch(benchmark::State &state) {
    std::vector<SolveQuery> queries;
    for (double th : linspace(0.0, 250.0, 200))
        for (double ph : linspace(0.0, 40.0, 50)) queries.push_back({th, ph});
    for (auto _ : state) benchmark::DoNotOptimize(solve_batch(kElastic, kWinch, {20.0, 0.0}, queries, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(queries.size()));
}

void BM_RatioMap(benchmark::State &state) {
    const auto thetas = linspace(0.0, 250.0, 101);
    const auto phis = linspace(0.0, 30.0, 31);
    for (auto _ : state) benchmark::DoNotOptimize(ratio_map(kRigid, kWinch, {}, thetas, phis, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(thetas.size() * phis.size()));
}

void BM_ForceGrid(benchmark::State &state) {
    const auto thetas = linspace(0.0, 300.0, 301);
    const auto torques = linspace(0.0, 0.16, 33);
    for (auto _ : state) benchmark::DoNotOptimize(force_grid(kElastic, kWinch, 0.5, thetas, torques, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(thetas.size() * torques.size()));
}

} // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_SolveBatch)->Arg(0)->Arg(1);
BENCHMARK(BM_RatioMap)->Arg(0)->Arg(1);
BENCHMARK(BM_ForceGrid)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
