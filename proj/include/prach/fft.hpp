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

#include "prach/common.hpp"

#include <memory>
#include <span>

namespace prach {

// Unnormalized DFT of a fixed size backed by an FFTW plan. Plans are created
// once per (size, direction) and shared; execute() is safe to call from
// concurrent threads.
//
//   forward: X[k] = sum_n x[n] exp(-2*pi*i*k*n/N)
//   inverse: x[n] = sum_k X[k] exp(+2*pi*i*k*n/N)   (no 1/N)
class Fft {
public:
    enum class Direction { forward, inverse };

    static const Fft& get(int size, Direction direction);

    int size() const { return size_; }
    Direction direction() const { return direction_; }

    // `in` and `out` must both have size() elements; they may alias.
    void execute(std::span<const Complex> in, std::span<Complex> out) const;
    ComplexSequence operator()(std::span<const Complex> in) const;

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft();

private:
    Fft(int size, Direction direction);

    int size_;
    Direction direction_;
    void* plan_;
};

}  // namespace prach
