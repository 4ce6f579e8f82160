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


#pragma once

// Trial engines. Each trial writes only its own slot, so the result vector is
// the same for the serial loop and for any OpenMP thread count; reductions are
// done afterwards in index order.

#include <cstdint>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prach {

enum class ExecPolicy { serial, parallel };

struct RunOptions {
    ExecPolicy policy = ExecPolicy::parallel;
    int threads = 0;  // 0: OpenMP default
};

int available_threads();

// Reference implementation.
template <class Result, class Fn>
std::vector<Result> run_trials_serial(std::int64_t n, Fn&& fn)
{
    std::vector<Result> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
}

template <class Result, class Fn>
std::vector<Result> run_trials_parallel(std::int64_t n, Fn&& fn, int threads = 0)
{
    std::vector<Result> out(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#ifdef _OPENMP
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    (void)threads;
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

template <class Result, class Fn>
std::vector<Result> run_trials(std::int64_t n, Fn&& fn, const RunOptions& options)
{
    if (options.policy == ExecPolicy::serial) return run_trials_serial<Result>(n, fn);
    return run_trials_parallel<Result>(n, fn, options.threads);
}

}  // namespace prach
