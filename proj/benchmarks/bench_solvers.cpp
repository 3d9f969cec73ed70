// Copyright 2026 The qbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qbattery/dynamics.hpp"

namespace {

using namespace qbattery;

SystemParams onset_params() {
    SystemParams p;
    p.eta = 1.5;
    p.g1 = p.g2 = 0.7;
    p.delta = 2.0;
    return p;
}

void BM_Ode(benchmark::State& state) {
    const TimeGrid grid(20.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_ode_aux(onset_params(), {}, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ode)->RangeMultiplier(4)->Range(500, 32000)->Complexity(benchmark::oN);

void BM_LaplacePoles(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_laplace(onset_params(), {}));
}
BENCHMARK(BM_LaplacePoles);

void BM_LaplaceEvaluate(benchmark::State& state) {
    const TimeGrid grid(20.0, static_cast<std::size_t>(state.range(0)));
    const auto solution = solve_laplace(onset_params(), {});
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(solution, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LaplaceEvaluate)->RangeMultiplier(4)->Range(500, 32000)->Complexity(benchmark::oN);

void BM_Quadrature(benchmark::State& state) {
    const TimeGrid grid(20.0, static_cast<std::size_t>(state.range(0)));
    SolverOptions opts;
    opts.extrapolate_quadrature = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_quadrature(onset_params(), {}, grid, opts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Quadrature)
    ->ArgsProduct({{500, 1000, 2000, 4000, 8000}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
