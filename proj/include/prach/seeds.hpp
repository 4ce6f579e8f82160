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

// Splittable seed derivation. A child seed is a pure function of its parent
// and a key, so any (master, point, trial, ue) tuple maps to the same stream
// no matter which worker or in which order it is evaluated.

#include <bit>
#include <cstdint>
#include <initializer_list>

namespace prach::seeds {

// SplitMix64 output function.
constexpr std::uint64_t mix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive(std::uint64_t parent, std::uint64_t key)
{
    return mix(mix(parent) ^ (key * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

constexpr std::uint64_t derive(std::uint64_t parent, std::initializer_list<std::uint64_t> keys)
{
    for (auto k : keys) parent = derive(parent, k);
    return parent;
}

// Key for a real-valued grid coordinate (e.g. a target SNR). Uses the bit
// pattern so adding or reordering grid points never renumbers the others.
inline std::uint64_t key_of(double value)
{
    if (value == 0.0) value = 0.0;  // fold -0.0 onto +0.0
    return std::bit_cast<std::uint64_t>(value);
}

// Stream tags keep independent consumers of one trial seed apart.
enum class Stream : std::uint64_t { channel = 1, noise = 2, timing = 3 };

inline constexpr std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

}  // namespace prach::seeds
