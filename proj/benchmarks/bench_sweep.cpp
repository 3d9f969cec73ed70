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

#include "qbattery/sweep.hpp"

namespace {

using namespace qbattery;

SystemParams onset_params() {
    SystemParams p;
    p.eta = 1.5;
    p.g1 = p.g2 = 0.7;
    return p;
}

const TimeGrid kHorizon(20.0, 8000);

void BM_ScanDelta(benchmark::State& state) {
    SweepOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    const auto deltas = linspace(0.0, 2.0, 41);
    for (auto _ : state) benchmark::DoNotOptimize(scan_delta(onset_params(), deltas, {}, kHorizon, opts));
}
BENCHMARK(BM_ScanDelta)->Arg(1)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FindCritical(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(find_critical_detuning(onset_params(), {}, {}, kHorizon));
}
BENCHMARK(BM_FindCritical)->Unit(benchmark::kMillisecond);

void BM_PhaseDiagram(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto etas = linspace(0.0, 2.0, n);
    const auto deltas = linspace(0.0, 2.0, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(phase_diagram(etas, deltas, onset_params(), {}, kHorizon));
}
BENCHMARK(BM_PhaseDiagram)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
