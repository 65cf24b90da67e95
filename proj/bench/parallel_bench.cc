// Copyright 2026 The noisetransfer Authors
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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "noisetransfer/domains.h"
#include "noisetransfer/montecarlo.h"

namespace {

nt::TrialConfig trial_config(benchmark::State& state) {
    nt::TrialConfig cfg;
    cfg.trials = state.range(0);
    cfg.seed = 7;
    cfg.delta2 = 0.1;
    return cfg;
}

void BM_TrialsSerial(benchmark::State& state) {
    const auto cfg = trial_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(nt::run_trials_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsParallel(benchmark::State& state) {
    const auto cfg = trial_config(state);
    for (auto _ : state) benchmark::DoNotOptimize(nt::run_trials(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

const nt::StateFamily kCat = [](double a) { return nt::StateModel::cat(a); };
const nt::StateFamily kGkp = [](double d2) { return nt::StateModel::gkp(0, d2); };

void BM_SweepSerial(benchmark::State& state) {
    const auto& family = state.range(1) == 0 ? kCat : kGkp;
    const auto params = state.range(1) == 0 ? nt::linspace(0.0, 3.0, state.range(0)) : nt::linspace(0.02, 0.3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nt::sweep_variance_serial(family, params));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto& family = state.range(1) == 0 ? kCat : kGkp;
    const auto params = state.range(1) == 0 ? nt::linspace(0.0, 3.0, state.range(0)) : nt::linspace(0.02, 0.3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(nt::sweep_variance(family, params));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrialsParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
// Second argument: 0 = cat family over alpha, 1 = GKP family over Delta^2.
BENCHMARK(BM_SweepSerial)->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
