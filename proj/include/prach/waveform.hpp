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

// Format-0 preamble synthesis: the shifted ZC sequence is DFT-precoded, placed
// on 839 PRACH subcarriers (1.25 kHz spacing) and turned into a CP + SEQ + GP
// subframe at 1.92 MS/s.

#include "prach/common.hpp"
#include "prach/zc.hpp"

#include <span>

namespace prach {

struct FrameGeometry {
    int n_ulrb = 6;
    double sample_rate = 1.92e6;
    int subframe_samples = 1920;
    int cp_samples = 198;
    int seq_samples = 1536;
    int gp_samples = 186;
    double prach_scs = 1250.0;
    int freq_offset_rb = 0;

    // Signed frequency index, in PRACH subcarriers relative to DC, of the
    // first of the 839 occupied subcarriers.
    int first_subcarrier() const;
    // Transform bin (0 <= bin < seq_samples) carrying sequence element n.
    int bin_of(int n) const;
    double seq_duration_s() const { return seq_samples / sample_rate; }
};

// Half-guard, in PRACH subcarriers, between the lower edge of the PRACH
// resource blocks and the first occupied subcarrier.
inline constexpr int kPrachHalfGuard = 7;
// PRACH subcarriers per 15 kHz uplink subcarrier.
inline constexpr int kPrachScsRatio = 12;

FrameGeometry derive_geometry(int n_ulrb, int format, int freq_offset_rb = 0);

void validate(const FrameGeometry& geometry);

// Places an 839-element frequency-domain sequence on the PRACH bins of a
// seq_samples grid; all other bins are zero.
ComplexSequence map_to_subcarriers(std::span<const Complex> sequence, const FrameGeometry& geometry);

// 839-point DFT of a time-domain ZC sequence (the subcarrier values).
ComplexSequence zc_spectrum(std::span<const Complex> sequence);

struct PreambleWaveform {
    ComplexSequence samples;   // subframe_samples long
    PreambleIdentity identity;
    FrameGeometry geometry;
};

// SEQ is the inverse transform of the mapped grid scaled so its mean
// per-sample power is amplitude^2; CP repeats the tail of SEQ; GP is zero.
PreambleWaveform synthesize_preamble(const PreambleIdentity& identity, const FrameGeometry& geometry,
                                     double amplitude = 1.0);

}  // namespace prach
