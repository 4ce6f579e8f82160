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


#include "prach/waveform.hpp"

#include "prach/fft.hpp"

#include <cmath>
#include <string>

namespace prach {

int FrameGeometry::first_subcarrier() const
{
    // Lowest uplink subcarrier of the PRACH allocation, in 15 kHz units
    // relative to DC, then converted to PRACH subcarriers. The extra half
    // uplink subcarrier is the SC-FDMA half-subcarrier shift.
    const int first_ul_subcarrier = 12 * freq_offset_rb - 6 * n_ulrb;
    return kPrachHalfGuard + kPrachScsRatio * first_ul_subcarrier + kPrachScsRatio / 2;
}

int FrameGeometry::bin_of(int n) const
{
    const int k = first_subcarrier() + n;
    return ((k % seq_samples) + seq_samples) % seq_samples;
}

void validate(const FrameGeometry& g)
{
    if (g.cp_samples + g.seq_samples + g.gp_samples != g.subframe_samples) {
        throw InternalError("frame geometry does not close: CP + SEQ + GP != subframe");
    }
    if (g.gp_samples <= 0) throw InternalError("frame geometry needs a guard period");
    if (std::abs(g.seq_samples * g.prach_scs - g.sample_rate) > 1e-6 * g.sample_rate) {
        throw InternalError("SEQ length does not put transform bins on PRACH subcarriers");
    }
}

FrameGeometry derive_geometry(int n_ulrb, int format, int freq_offset_rb)
{
    if (format != 0) throw UnsupportedError("PRACH format " + std::to_string(format) + " is not modeled (format 0 only)");
    if (n_ulrb != 6) throw UnsupportedError("NULRB " + std::to_string(n_ulrb) + " is not modeled (6 only)");
    if (freq_offset_rb < 0 || freq_offset_rb > n_ulrb - 6) {
        throw ConfigError("PRACH frequency offset " + std::to_string(freq_offset_rb) + " RB does not fit in " +
                          std::to_string(n_ulrb) + " uplink RBs");
    }
    FrameGeometry g;
    g.n_ulrb = n_ulrb;
    g.freq_offset_rb = freq_offset_rb;
    g.sample_rate = 1.92e6;
    g.prach_scs = 1250.0;
    // Format 0 at 30.72 MS/s: CP 3168, SEQ 24576. 1.92 MS/s is 1/16 of that.
    g.cp_samples = 3168 / 16;
    g.seq_samples = 24576 / 16;
    g.subframe_samples = 1920;
    g.gp_samples = g.subframe_samples - g.cp_samples - g.seq_samples;
    validate(g);
    return g;
}

ComplexSequence map_to_subcarriers(std::span<const Complex> sequence, const FrameGeometry& geometry)
{
    if (sequence.size() != static_cast<std::size_t>(kZcLength)) {
        throw InternalError("subcarrier mapping expects 839 values, got " + std::to_string(sequence.size()));
    }
    ComplexSequence grid(static_cast<std::size_t>(geometry.seq_samples));
    for (int n = 0; n < kZcLength; ++n) grid[static_cast<std::size_t>(geometry.bin_of(n))] = sequence[static_cast<std::size_t>(n)];
    return grid;
}

ComplexSequence zc_spectrum(std::span<const Complex> sequence)
{
    if (sequence.size() != static_cast<std::size_t>(kZcLength)) {
        throw InternalError("ZC spectrum expects 839 values, got " + std::to_string(sequence.size()));
    }
    return Fft::get(kZcLength, Fft::Direction::forward)(sequence);
}

PreambleWaveform synthesize_preamble(const PreambleIdentity& identity, const FrameGeometry& geometry, double amplitude)
{
    validate(geometry);
    const auto resolved = resolve_preamble(identity);
    const auto root = generate_root_sequence(resolved.u);
    const auto grid = map_to_subcarriers(zc_spectrum(cyclic_shift(root, resolved.plan.c_v)), geometry);

    // With the unnormalized inverse transform, mean |seq|^2 equals the grid
    // energy (Parseval), so the scale follows from the grid alone.
    double grid_energy = 0.0;
    for (const auto& g : grid) grid_energy += std::norm(g);
    const double scale = amplitude / std::sqrt(grid_energy);

    auto seq = Fft::get(geometry.seq_samples, Fft::Direction::inverse)(grid);
    for (auto& s : seq) s *= scale;

    PreambleWaveform wf{ComplexSequence(static_cast<std::size_t>(geometry.subframe_samples)), identity, geometry};
    const auto cp = static_cast<std::size_t>(geometry.cp_samples);
    const auto n_seq = static_cast<std::size_t>(geometry.seq_samples);
    for (std::size_t i = 0; i < cp; ++i) wf.samples[i] = seq[n_seq - cp + i];
    for (std::size_t i = 0; i < n_seq; ++i) wf.samples[cp + i] = seq[i];
    return wf;
}

}  // namespace prach
