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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace prach {

using Complex = std::complex<double>;

// Ordered complex baseband samples; the currency of every DSP stage.
using ComplexSequence = std::vector<Complex>;

// One ComplexSequence per receive antenna, all of equal length.
using AntennaSamples = std::vector<ComplexSequence>;

// Long-sequence (format 0) Zadoff-Chu length.
inline constexpr int kZcLength = 839;

inline constexpr double kPi = 3.14159265358979323846;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user-facing configuration (ranges, schema, invariants).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Valid request for something this simulator deliberately does not model.
class UnsupportedError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Broken internal contract between stages (length mismatches and the like).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace prach
