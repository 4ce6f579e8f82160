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


#include "prach/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace prach {

namespace {

// The FFTW planner is not re-entrant; plan creation and destruction go
// through this lock. Execution with new-array functions needs no locking.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

Fft::Fft(int size, Direction direction) : size_(size), direction_(direction), plan_(nullptr)
{
    if (size <= 0) throw InternalError("FFT size must be positive, got " + std::to_string(size));
    std::vector<Complex> in(static_cast<std::size_t>(size)), out(static_cast<std::size_t>(size));
    const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    plan_ = fftw_plan_dft_1d(size, reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_ == nullptr) throw InternalError("FFTW could not plan a transform of size " + std::to_string(size));
}

Fft::~Fft()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

const Fft& Fft::get(int size, Direction direction)
{
    // Intentionally never destroyed: plans stay valid until process exit.
    static auto* cache = new std::map<std::pair<int, Direction>, std::unique_ptr<Fft>>();
    std::lock_guard lock(planner_mutex());
    auto& slot = (*cache)[{size, direction}];
    if (!slot) slot.reset(new Fft(size, direction));
    return *slot;
}

void Fft::execute(std::span<const Complex> in, std::span<Complex> out) const
{
    if (in.size() != static_cast<std::size_t>(size_) || out.size() != static_cast<std::size_t>(size_)) {
        throw InternalError("FFT buffer length does not match plan size " + std::to_string(size_));
    }
    // Plans are out-of-place; route aliased calls through a scratch copy.
    if (in.data() == out.data()) {
        ComplexSequence scratch(in.begin(), in.end());
        fftw_execute_dft(static_cast<fftw_plan>(plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        return;
    }
    // FFTW preserves the input of out-of-place complex transforms.
    fftw_execute_dft(static_cast<fftw_plan>(plan_),
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

ComplexSequence Fft::operator()(std::span<const Complex> in) const
{
    ComplexSequence out(in.size());
    execute(in, out);
    return out;
}

}  // namespace prach
