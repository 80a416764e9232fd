// Parallel kernels against their serial reference twins.
//
//   ./bench_kernels --benchmark_filter=Efficacy
//   OMP_NUM_THREADS=4 ./bench_kernels

#include "quadent/reference.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace quadent;

namespace {

const std::vector<PhotonBudget> budgets{{6.75}, {250.0}};

CovarianceMatrix calibrated_state() {
    return apply_loss(entangled_pair(calibrate_source({})), LossChannel::symmetric(0.85));
}

void BM_SpectrumParallel(benchmark::State& state) {
    const FrequencyGrid grid{1e5, 2e7, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum_sweep(SourceSpectrumModel{}, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SpectrumSerial(benchmark::State& state) {
    const FrequencyGrid grid{1e5, 2e7, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::spectrum_sweep(SourceSpectrumModel{}, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EfficacyParallel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EfficacyGridSpec spec{{0.0, 1.5, n}, {0.0, 3.0, n}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(efficacy_grid(spec, budgets));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_EfficacySerial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EfficacyGridSpec spec{{0.0, 1.5, n}, {0.0, 3.0, n}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::efficacy_grid(spec, budgets));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_EstimateParallel(benchmark::State& state) {
    const CovarianceMatrix cm = calibrated_state();
    EstimatorConfig config;
    config.traces = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_criteria(cm, config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateSerial(benchmark::State& state) {
    const CovarianceMatrix cm = calibrated_state();
    EstimatorConfig config;
    config.traces = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::estimate_criteria(cm, config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LossSweepParallel(benchmark::State& state) {
    const SqueezerSpec source = calibrate_source({});
    std::vector<double> losses;
    for (int i = 0; i < state.range(0); ++i) {
        losses.push_back(0.99 * i / static_cast<double>(state.range(0)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(loss_sweep_experiment(source, 1.0, losses, EstimatorConfig{}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LossSweepSerial(benchmark::State& state) {
    const SqueezerSpec source = calibrate_source({});
    std::vector<double> losses;
    for (int i = 0; i < state.range(0); ++i) {
        losses.push_back(0.99 * i / static_cast<double>(state.range(0)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::loss_sweep_experiment(source, 1.0, losses, EstimatorConfig{}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SpectrumParallel)->Arg(76)->Arg(4096)->UseRealTime();
BENCHMARK(BM_SpectrumSerial)->Arg(76)->Arg(4096)->UseRealTime();
BENCHMARK(BM_EfficacyParallel)->Arg(50)->Arg(200)->UseRealTime();
BENCHMARK(BM_EfficacySerial)->Arg(50)->Arg(200)->UseRealTime();
BENCHMARK(BM_EstimateParallel)->Arg(10)->Arg(100)->UseRealTime();
BENCHMARK(BM_EstimateSerial)->Arg(10)->Arg(100)->UseRealTime();
BENCHMARK(BM_LossSweepParallel)->Arg(101)->UseRealTime();
BENCHMARK(BM_LossSweepSerial)->Arg(101)->UseRealTime();

BENCHMARK_MAIN();
