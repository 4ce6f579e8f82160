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


#include "prach/channel.hpp"

#include "prach/assets.hpp"
#include "prach/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace prach {

TapProfile etu_profile()
{
    static const TapProfile profile = [] {
        const auto table = assets::parse_two_column_csv(assets::load("etu_profile.csv"), "delay_ns,power_db");
        return TapProfile{table.first, table.second};
    }();
    return profile;
}

ChannelProfile default_channel_profile()
{
    ChannelProfile p;
    const auto etu = etu_profile();
    p.tap_delays_ns = etu.delays_ns;
    p.tap_powers_db = etu.powers_db;
    return p;
}

void validate(const ChannelProfile& p)
{
    if (p.n_rx_ants < 1) throw ConfigError("channel.n_rx_ants must be at least 1");
    if (p.tap_delays_ns.empty()) throw ConfigError("channel delay profile has no taps");
    if (p.tap_delays_ns.size() != p.tap_powers_db.size()) {
        throw ConfigError("channel delay profile: delay and power lists differ in length");
    }
    for (std::size_t i = 0; i < p.tap_delays_ns.size(); ++i) {
        if (!std::isfinite(p.tap_delays_ns[i]) || p.tap_delays_ns[i] < 0.0) {
            throw ConfigError("channel delay profile: negative or non-finite delay");
        }
        if (i > 0 && p.tap_delays_ns[i] <= p.tap_delays_ns[i - 1]) {
            throw ConfigError("channel delay profile: delays must be strictly increasing");
        }
        if (!std::isfinite(p.tap_powers_db[i])) throw ConfigError("channel delay profile: non-finite tap power");
    }
    if (!std::isfinite(p.doppler_hz) || p.doppler_hz < 0.0) throw ConfigError("channel.doppler_hz must be >= 0");
    if (p.n_terms < 1) throw ConfigError("channel.n_terms must be at least 1");
}

std::vector<double> linear_tap_powers(const ChannelProfile& p)
{
    std::vector<double> lin;
    double total = 0.0;
    for (double db : p.tap_powers_db) {
        lin.push_back(std::pow(10.0, db / 10.0));
        total += lin.back();
    }
    if (p.normalize_path_gains) {
        for (auto& v : lin) v /= total;
    }
    return lin;
}

double nominal_power_gain(const ChannelProfile& p)
{
    if (p.model == FadingModel::ideal) return 1.0;
    double total = 0.0;
    for (double v : linear_tap_powers(p)) total += v;
    return total;
}

ComplexSequence fading_gains(const ChannelProfile& p, int n_samples, double t0, int antenna, int tap,
                             double sample_rate)
{
    if (n_samples < 0) throw InternalError("fading_gains: negative sample count");
    if (tap < 0 || tap >= static_cast<int>(p.tap_delays_ns.size())) {
        throw InternalError("fading_gains: tap " + std::to_string(tap) + " out of range");
    }
    const auto n = static_cast<std::size_t>(n_samples);
    if (p.model == FadingModel::ideal) return ComplexSequence(n, tap == 0 ? Complex{1.0, 0.0} : Complex{});

    const double power = linear_tap_powers(p)[static_cast<std::size_t>(tap)];
    const int terms = p.n_terms;
    std::mt19937_64 rng(seeds::derive(p.seed, {seeds::tag(seeds::Stream::channel), static_cast<std::uint64_t>(antenna),
                                               static_cast<std::uint64_t>(tap)}));
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * kPi);

    // Oscillator k < terms feeds the in-phase branch, the rest quadrature.
    // Each is a phasor advanced by a fixed rotation per sample; the real part
    // is cos(2*pi*f*t + theta).
    const auto n_osc = static_cast<std::size_t>(2 * terms);
    std::vector<double> zr(n_osc), zi(n_osc), sr(n_osc), si(n_osc);
    for (int i = 0; i < 2; ++i) {
        const double offset = (i == 0 ? 1.0 : -1.0) * kPi / (8.0 * terms);
        for (int k = 1; k <= terms; ++k) {
            const double alpha = kPi / (2.0 * terms) * (k - 0.5) + offset;
            const double f = p.doppler_hz * std::cos(alpha);
            const double theta = phase_dist(rng);
            const auto j = static_cast<std::size_t>(i * terms + k - 1);
            zr[j] = std::cos(2.0 * kPi * f * t0 + theta);
            zi[j] = std::sin(2.0 * kPi * f * t0 + theta);
            sr[j] = std::cos(2.0 * kPi * f / sample_rate);
            si[j] = std::sin(2.0 * kPi * f / sample_rate);
        }
    }

    const double scale = std::sqrt(2.0 / terms) * std::sqrt(power / 2.0);
    const auto half = static_cast<std::size_t>(terms);
    ComplexSequence g(n);
    for (std::size_t s = 0; s < n; ++s) {
        double in_phase = 0.0, quadrature = 0.0;
#pragma omp simd reduction(+ : in_phase)
        for (std::size_t j = 0; j < half; ++j) in_phase += zr[j];
#pragma omp simd reduction(+ : quadrature)
        for (std::size_t j = half; j < n_osc; ++j) quadrature += zr[j];
        g[s] = Complex{in_phase * scale, quadrature * scale};
#pragma omp simd
        for (std::size_t j = 0; j < n_osc; ++j) {
            const double r = zr[j] * sr[j] - zi[j] * si[j];
            zi[j] = zr[j] * si[j] + zi[j] * sr[j];
            zr[j] = r;
        }
    }
    return g;
}

std::vector<double> fractional_delay_kernel(double frac)
{
    if (!(frac >= 0.0 && frac < 1.0)) throw InternalError("fractional delay must lie in [0, 1)");
    constexpr int half = kInterpolatorLength / 2;
    std::vector<double> h(kInterpolatorLength, 0.0);
    if (frac == 0.0) {
        h[half] = 1.0;
        return h;
    }
    double sum = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double x = k - frac;
        const double sinc = std::sin(kPi * x) / (kPi * x);
        const double window = 0.5 + 0.5 * std::cos(kPi * k / (half + 1));
        h[static_cast<std::size_t>(k + half)] = sinc * window;
        sum += sinc * window;
    }
    for (auto& v : h) v /= sum;
    return h;
}

ComplexSequence delay_signal(std::span<const Complex> x, double delay_samples)
{
    if (!std::isfinite(delay_samples) || delay_samples < 0.0) throw InternalError("delay must be finite and >= 0");
    const auto whole = static_cast<long>(std::floor(delay_samples));
    const auto h = fractional_delay_kernel(delay_samples - static_cast<double>(whole));
    constexpr long half = kInterpolatorLength / 2;
    const auto len = static_cast<long>(x.size());
    ComplexSequence y(x.size());
    for (long n = 0; n < len; ++n) {
        // Taps k with 0 <= n - whole - k < len.
        const long k_lo = std::max(-half, n - whole - len + 1);
        const long k_hi = std::min(half, n - whole);
        double re = 0.0, im = 0.0;
        for (long k = k_lo; k <= k_hi; ++k) {
            const double c = h[static_cast<std::size_t>(k + half)];
            const Complex v = x[static_cast<std::size_t>(n - whole - k)];
            re += c * v.real();
            im += c * v.imag();
        }
        y[static_cast<std::size_t>(n)] = {re, im};
    }
    return y;
}

AntennaSamples apply_channel(const PreambleWaveform& tx, const ChannelProfile& profile, double timing_offset_samples,
                             std::uint64_t trial_seed)
{
    validate(profile);
    const auto& g = tx.geometry;
    if (!std::isfinite(timing_offset_samples) || timing_offset_samples < 0.0 ||
        timing_offset_samples >= g.gp_samples) {
        throw ConfigError("timing offset " + std::to_string(timing_offset_samples) + " samples outside [0, " +
                          std::to_string(g.gp_samples) + ")");
    }
    const auto n = tx.samples.size();
    AntennaSamples out(static_cast<std::size_t>(profile.n_rx_ants));

    if (profile.model == FadingModel::ideal) {
        const auto delayed = delay_signal(tx.samples, timing_offset_samples);
        for (auto& a : out) a = delayed;
        return out;
    }

    ChannelProfile instance = profile;
    instance.seed = seeds::derive(profile.seed, trial_seed);

    const auto n_taps = profile.tap_delays_ns.size();
    std::vector<ComplexSequence> delayed(n_taps);
    for (std::size_t t = 0; t < n_taps; ++t) {
        delayed[t] = delay_signal(tx.samples, profile.tap_delays_ns[t] * 1e-9 * g.sample_rate + timing_offset_samples);
    }
    for (int a = 0; a < profile.n_rx_ants; ++a) {
        auto& y = out[static_cast<std::size_t>(a)];
        y.assign(n, Complex{});
        for (std::size_t t = 0; t < n_taps; ++t) {
            const auto gain = fading_gains(instance, static_cast<int>(n), 0.0, a, static_cast<int>(t), g.sample_rate);
            const auto& d = delayed[t];
            for (std::size_t s = 0; s < n; ++s) {
                y[s] += Complex{gain[s].real() * d[s].real() - gain[s].imag() * d[s].imag(),
                                gain[s].real() * d[s].imag() + gain[s].imag() * d[s].real()};
            }
        }
    }
    return out;
}

RxSubframe mix_and_add_noise(std::span<const Contribution> contributions, int n_rx_ants, const FrameGeometry& geometry,
                             std::uint64_t trial_seed)
{
    if (n_rx_ants < 1) throw InternalError("mix_and_add_noise: need at least one antenna");
    const auto n = static_cast<std::size_t>(geometry.subframe_samples);
    RxSubframe rx{AntennaSamples(static_cast<std::size_t>(n_rx_ants), ComplexSequence(n)), 1.0};

    for (const auto& c : contributions) {
        if (c.samples.size() != static_cast<std::size_t>(n_rx_ants)) {
            throw InternalError("contribution antenna count does not match the receiver");
        }
        if (std::isinf(c.snr_db) && c.snr_db < 0.0) continue;
        if (!std::isfinite(c.snr_db)) throw ConfigError("SNR must be finite or -inf");
        if (!(c.nominal_power > 0.0)) throw InternalError("contribution nominal power must be positive");
        const double scale = std::sqrt(std::pow(10.0, c.snr_db / 10.0) * rx.noise_variance / c.nominal_power);
        for (std::size_t a = 0; a < c.samples.size(); ++a) {
            if (c.samples[a].size() != n) throw InternalError("contribution length does not match the subframe");
            for (std::size_t s = 0; s < n; ++s) rx.antennas[a][s] += scale * c.samples[a][s];
        }
    }

    const double sigma = std::sqrt(rx.noise_variance / 2.0);
    for (std::size_t a = 0; a < rx.antennas.size(); ++a) {
        std::mt19937_64 rng(seeds::derive(trial_seed, {seeds::tag(seeds::Stream::noise), a}));
        std::normal_distribution<double> gauss(0.0, sigma);
        for (auto& s : rx.antennas[a]) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            s += Complex{re, im};
        }
    }
    return rx;
}

}  // namespace prach
