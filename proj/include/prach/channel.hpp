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

// Tapped-delay-line Rayleigh fading (sum of sinusoids), independent receive
// antennas, per-UE SNR scaling and complex white Gaussian noise.

#include "prach/common.hpp"
#include "prach/waveform.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace prach {

enum class FadingModel { gmeds_rayleigh, ideal };
enum class MimoCorrelation { low };

struct ChannelProfile {
    int n_rx_ants = 2;
    std::vector<double> tap_delays_ns;
    std::vector<double> tap_powers_db;
    double doppler_hz = 70.0;
    int n_terms = 16;
    MimoCorrelation mimo_correlation = MimoCorrelation::low;
    FadingModel model = FadingModel::gmeds_rayleigh;
    bool normalize_path_gains = true;
    std::uint64_t seed = 1;
};

struct TapProfile {
    std::vector<double> delays_ns;
    std::vector<double> powers_db;
};

// 9-tap ETU profile from etu_profile.csv.
TapProfile etu_profile();

// ETU, 70 Hz, 2 antennas, 16 oscillators, normalized gains.
ChannelProfile default_channel_profile();

void validate(const ChannelProfile& profile);

// Linear tap powers, scaled to sum to one when normalize_path_gains is set.
std::vector<double> linear_tap_powers(const ChannelProfile& profile);

// Expected received power for a unit-power transmitter.
double nominal_power_gain(const ChannelProfile& profile);

// Complex gain of one tap at t0 + n/sample_rate. In-phase and quadrature
// branches are sums of n_terms unit-power sinusoids with Doppler frequencies
// doppler_hz*cos(alpha) on interleaved angle sets and phases drawn from
// (seed, antenna, tap). For the ideal model tap 0 has unit gain and every
// other tap is zero.
ComplexSequence fading_gains(const ChannelProfile& profile, int n_samples, double t0, int antenna, int tap,
                             double sample_rate);

// Number of coefficients of the fractional-delay interpolator.
inline constexpr int kInterpolatorLength = 17;

// Hann-windowed sinc coefficients h[k], k = -8..8, for the fractional part
// `frac` in [0, 1) of a delay; normalized to unit DC gain. frac == 0 gives an
// exact unit impulse.
std::vector<double> fractional_delay_kernel(double frac);

// y[n] = x(n - delay) via the interpolator; zero outside the input span.
ComplexSequence delay_signal(std::span<const Complex> x, double delay_samples);

// Per-antenna noiseless received waveform. Channel realizations are drawn
// from (profile.seed, trial_seed); timing_offset_samples must lie in
// [0, gp_samples).
AntennaSamples apply_channel(const PreambleWaveform& tx, const ChannelProfile& profile, double timing_offset_samples,
                             std::uint64_t trial_seed);

struct RxSubframe {
    AntennaSamples antennas;
    double noise_variance = 1.0;
};

struct Contribution {
    AntennaSamples samples;
    double snr_db = 0.0;
    // Expected per-sample SEQ power of `samples` per antenna; the SNR scale is
    // taken relative to this, not to the realized power of one fading draw.
    double nominal_power = 1.0;
};

// Scales every contribution to 10^(snr_db/10) (noise variance fixed at 1),
// sums them and adds CN(0, 1) noise seeded from trial_seed. Contributions at
// -inf dB are skipped.
RxSubframe mix_and_add_noise(std::span<const Contribution> contributions, int n_rx_ants,
                             const FrameGeometry& geometry, std::uint64_t trial_seed);

}  // namespace prach
