/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The prachsim Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Serial reference loop versus the OpenMP trial engine, plus the hot kernels
// of one trial.

#include "prach/interference.hpp"
#include "prach/parallel.hpp"
#include "prach/receiver.hpp"

#include <benchmark/benchmark.h>

using namespace prach;

namespace {

struct Fixture {
    Scenario scenario;
    PrachDetector detector;

    Fixture()
        : scenario([] {
              const auto base = default_base_config();
              const int roots[] = {0};
              return make_inter_cell(base.target, roots, 3, -9.0, base);
          }()),
          detector(22, 1, scenario.geometry, scenario.detector, scenario.target.channel.n_rx_ants)
    {
    }

    int trial(std::int64_t i) const
    {
        const auto sub = synthesize_subframe(scenario, -16.0, i, 1);
        return static_cast<int>(detector.detect(sub.rx).detections.size());
    }
};

const Fixture& fixture()
{
    static const Fixture f;
    return f;
}

void BM_TrialsSerial(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state) {
        auto out = run_trials_serial<int>(state.range(0), [&](std::int64_t i) { return f.trial(i); });
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsParallel(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state) {
        auto out = run_trials_parallel<int>(state.range(0), [&](std::int64_t i) { return f.trial(i); },
                                            static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = static_cast<double>(state.range(1) ? state.range(1) : available_threads());
}

void BM_FadingGains(benchmark::State& state)
{
    const auto p = default_channel_profile();
    for (auto _ : state) benchmark::DoNotOptimize(fading_gains(p, 1920, 0.0, 0, 4, 1.92e6));
}

void BM_ApplyChannel(benchmark::State& state)
{
    const auto& f = fixture();
    const auto tx = synthesize_preamble(f.scenario.target.identity, f.scenario.geometry, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(apply_channel(tx, f.scenario.target.channel, 0.0, ++seed));
}

void BM_Detect(benchmark::State& state)
{
    const auto& f = fixture();
    const auto rx = synthesize_subframe(f.scenario, -16.0, 0, 1).rx;
    for (auto _ : state) benchmark::DoNotOptimize(f.detector.detect(rx));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Args({64, 0})->Args({64, 1})->Args({64, 2})->Args({64, 4})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FadingGains)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyChannel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Detect)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
