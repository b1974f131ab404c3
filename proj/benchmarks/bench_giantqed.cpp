// bench_giantqed.cpp — solver, oracle and scattering timings
#include <benchmark/benchmark.h>

#include <numbers>

#include "giantqed/boundstates.hpp"
#include "giantqed/oracle.hpp"
#include "giantqed/scattering.hpp"

using namespace giantqed;

static void BM_SmallAtom(benchmark::State& state) {
    const auto c = build_single_atom(1, 1, 1.0, 0.0);
    SolveOptions o;
    o.with_profiles = false;
    for (auto _ : state) benchmark::DoNotOptimize(solve_single_atom(c, o));
}
BENCHMARK(BM_SmallAtom);

static void BM_ChainBoundStates(benchmark::State& state) {
    const auto c = build_chain(Topology::Nested, static_cast<int>(state.range(0)), 2, 1, 10.0, 0.0);
    SolveOptions o;
    o.with_profiles = false;
    for (auto _ : state) benchmark::DoNotOptimize(solve_general(c, o));
}
BENCHMARK(BM_ChainBoundStates)->Arg(4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_OracleWindow(benchmark::State& state) {
    const auto h = build_matrix(build_chain(Topology::Separate, 10, 1, 1, 5.0, 0.0), state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(diagonalize_outside(h, 2.0 * (1.0 + 10.0 / static_cast<double>(state.range(0)))));
}
BENCHMARK(BM_OracleWindow)->Arg(401)->Arg(1601)->Unit(benchmark::kMillisecond);

static void BM_ReflectanceSweep(benchmark::State& state) {
    const auto c = build_two_atoms(Topology::Braided, 2, 1, 1.0, 0.0);
    std::vector<double> grid;
    for (int i = 0; i < 200; ++i) grid.push_back(std::numbers::pi * (i + 0.5) / 200.0);
    const auto route = static_cast<Route>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reflectance_sweep(c, grid, GridAxis::WaveVector, route));
}
BENCHMARK(BM_ReflectanceSweep)->Arg(static_cast<int>(Route::Matrix))->Arg(static_cast<int>(Route::TwoAtom))->Arg(static_cast<int>(Route::Lattice));

BENCHMARK_MAIN();
