// Copyright 2026 The chsh-stochastic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts. The thread
// count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>

#include "chsh/game.hpp"
#include "chsh/stochastic.hpp"
#include "chsh/tsirelson.hpp"

namespace {

using namespace chsh;

const Strategy& ns_strategy() {
    static const Strategy s = NSBox{1.0 / std::numbers::sqrt2};
    return s;
}

void BM_SimulateSerial(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_rounds_serial(ns_strategy(), n, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

void BM_SimulateParallel(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_rounds(ns_strategy(), n, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}

OptimizeOptions optimize_options(benchmark::State& state) {
    OptimizeOptions o;
    o.restarts = static_cast<int>(state.range(0));
    o.seed = 7;
    return o;
}

void BM_OptimizeSerial(benchmark::State& state) {
    const OptimizeOptions o = optimize_options(state);
    for (auto _ : state) benchmark::DoNotOptimize(optimize_serial(o).score);
}

void BM_OptimizeParallel(benchmark::State& state) {
    const OptimizeOptions o = optimize_options(state);
    for (auto _ : state) benchmark::DoNotOptimize(optimize(o).score);
}

// Non-unistochastic input, so every restart runs to its stopping rule.
StochasticMatrix dilation_witness() {
    RealMatrix w(3, 3);
    w << 1, 1, 0, 0, 1, 1, 1, 0, 1;
    return StochasticMatrix(w / 2.0);
}

void BM_DilationSerial(benchmark::State& state) {
    const StochasticMatrix g = dilation_witness();
    DilationOptions o;
    o.max_restarts = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_unitary_dilation_serial(g, o).best_residual);
}

void BM_DilationParallel(benchmark::State& state) {
    const StochasticMatrix g = dilation_witness();
    DilationOptions o;
    o.max_restarts = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_unitary_dilation(g, o).best_residual);
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimizeSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeParallel)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DilationSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DilationParallel)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
