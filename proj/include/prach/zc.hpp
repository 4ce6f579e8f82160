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

// Zadoff-Chu root sequences, cyclic shifts and the preamble-index to
// (root, shift) resolution used by long PRACH preambles.

#include "prach/common.hpp"

namespace prach {

struct ZcRootSequence {
    int u = 0;                 // physical root, coprime to n_zc
    int n_zc = kZcLength;
    ComplexSequence samples;   // x_u(n), |x_u(n)| = 1
};

struct ShiftPlan {
    int v = 0;          // shift number within the root
    int c_v = 0;        // cyclic shift in sequence samples
    int n_cs = 0;       // zero-correlation-zone spacing; 0 means one preamble per root
    int root_hop = 0;   // consecutive logical roots consumed before this one
};

struct PreambleIdentity {
    int logical_root_index = 22;
    int preamble_index = 32;
    int cyclic_shift_idx = 1;
    bool high_speed = false;

    friend bool operator==(const PreambleIdentity&, const PreambleIdentity&) = default;
};

struct ResolvedPreamble {
    int u = 0;
    ShiftPlan plan;
};

inline constexpr int kMaxLogicalRoot = 837;
inline constexpr int kPreamblesPerCell = 64;

bool is_prime(int n);

// x_u(n) = exp(-i*pi*u*n*(n+1)/n_zc), 0 <= n < n_zc.
ZcRootSequence generate_root_sequence(int u, int n_zc = kZcLength);

// output[n] = seq.samples[(n + c_v) mod n_zc]
ComplexSequence cyclic_shift(const ZcRootSequence& seq, int c_v);

// Unrestricted-set N_CS for long preambles, read from ncs_unrestricted.csv.
int ncs_from_config(int cyclic_shift_idx, bool high_speed);

// Format-0 logical root index to physical root u, read from
// root_mapping_format0.csv.
int logical_to_physical_root(int logical_index);

// floor(n_zc / n_cs), or 1 when n_cs == 0.
int shifts_per_root(int n_cs, int n_zc = kZcLength);

void validate(const PreambleIdentity& identity);

ResolvedPreamble resolve_preamble(const PreambleIdentity& identity);

}  // namespace prach
