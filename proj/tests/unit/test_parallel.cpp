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


#include "prach/interference.hpp"
#include "prach/parallel.hpp"
#include "prach/receiver.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace prach;

TEST_CASE("serial and parallel engines fill the same slots")
{
    auto fn = [](std::int64_t i) { return std::sin(double(i)) * double(i * i); };
    const auto ref = run_trials_serial<double>(1000, fn);
    for (int threads : {0, 1, 2, 4, 7}) {
        INFO("threads " << threads);
        CHECK(run_trials_parallel<double>(1000, fn, threads) == ref);
    }
    CHECK(run_trials<double>(1000, fn, {ExecPolicy::serial, 0}) == ref);
    CHECK(run_trials_parallel<double>(0, fn).empty());
    CHECK(available_threads() >= 1);
}

TEST_CASE("an exception in one trial reaches the caller")
{
    auto fn = [](std::int64_t i) -> int {
        if (i == 37) throw std::runtime_error("trial 37");
        return int(i);
    };
    CHECK_THROWS_WITH(run_trials_parallel<int>(100, fn, 3), "trial 37");
    CHECK_THROWS_WITH(run_trials_serial<int>(100, fn), "trial 37");
}

TEST_CASE("whole-chain trials agree between engines")
{
    const auto b = default_base_config();
    const auto s = baseline(b);
    const PrachDetector det(22, 1, s.geometry, s.detector, 2);
    auto fn = [&](std::int64_t t) {
        const auto sub = synthesize_subframe(s, -16.0, t, 11);
        const auto r = det.detect(sub.rx);
        return r.detections.empty() ? -1.0 : r.detections.front().peak_value;
    };
    const auto ref = run_trials_serial<double>(40, fn);
    CHECK(run_trials_parallel<double>(40, fn, 2) == ref);
    CHECK(run_trials_parallel<double>(40, fn, 4) == ref);
}
