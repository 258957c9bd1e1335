// Serial vs OpenMP kernels: exhaustive search and Monte-Carlo runs.

#include <benchmark/benchmark.h>

#include <random>

#include "csp/oracle.hpp"
#include "csp/workload.hpp"

namespace {

csp::Instance bench_instance(int n) {
    csp::GeneratorConfig cfg;
    cfg.n = n;
    cfg.m = 8;
    cfg.seed = 12345;
    cfg.commercial_fraction = 0.5;
    cfg.low_capacity = 1e6;
    cfg.base_capacity = 2e6;
    return csp::generate_instance(cfg);
}

// Large demands on a short horizon: little pruning, close to the 2^n worst case.
csp::Instance dense_instance(int n) {
    csp::GeneratorConfig cfg;
    cfg.n = n;
    cfg.m = 2;
    cfg.seed = 777;
    cfg.commercial_fraction = 1.0;
    cfg.base_capacity = cfg.low_capacity = 3e6;
    cfg.max_duration = 2;
    cfg.utility_mode = csp::UtilityMode::Quadratic;
    cfg.quad_a = 1e-12;
    return csp::generate_instance(cfg);
}

void BM_BruteForceSerial(benchmark::State& state) {
    const auto inst = dense_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(csp::brute_force_opt(inst).opt_value);
}

void BM_BruteForceParallel(benchmark::State& state) {
    const auto inst = dense_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(csp::brute_force_opt_parallel(inst).opt_value);
}

void BM_MonteCarloSerial(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<int>(state.range(0)));
    const auto params = csp::AlgorithmParams::from_bounds(inst.bounds());
    for (auto _ : state) benchmark::DoNotOptimize(csp::online_objectives_serial(inst, 1000, 1, params));
    state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_MonteCarloParallel(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<int>(state.range(0)));
    const auto params = csp::AlgorithmParams::from_bounds(inst.bounds());
    for (auto _ : state) benchmark::DoNotOptimize(csp::online_objectives(inst, 1000, 1, params));
    state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_SingleOnlineRun(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(csp::run_online(inst, ++seed).decision.objective);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_BruteForceSerial)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(15)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(15)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingleOnlineRun)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
