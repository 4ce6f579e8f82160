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
#include "prach/stats.hpp"

#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace prach;

namespace {

ChannelProfile etu(int n_rx = 2)
{
    auto p = default_channel_profile();
    p.n_rx_ants = n_rx;
    return p;
}

ChannelProfile ideal(int n_rx = 2)
{
    auto p = etu(n_rx);
    p.model = FadingModel::ideal;
    return p;
}

double seq_power(const ComplexSequence& x)
{
    return oracle::mean_power(x, 198, 198 + 1536);
}

}  // namespace

TEST_CASE("ETU profile asset")
{
    const auto t = etu_profile();
    REQUIRE(t.delays_ns.size() == 9u);
    CHECK(t.delays_ns == std::vector<double>{0, 50, 120, 200, 230, 500, 1600, 2300, 5000});
    CHECK(t.powers_db == std::vector<double>{-1, -1, -1, 0, 0, 0, -3, -5, -7});
    CHECK(t.delays_ns.back() * 1e-9 * 1.92e6 == doctest::Approx(9.6));
}

TEST_CASE("path gain normalization")
{
    auto p = etu();
    const auto lin = linear_tap_powers(p);
    CHECK(std::accumulate(lin.begin(), lin.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    p.normalize_path_gains = false;
    const auto raw = linear_tap_powers(p);
    CHECK(raw[3] == doctest::Approx(1.0));
    CHECK(raw[8] == doctest::Approx(std::pow(10.0, -0.7)));
    CHECK(nominal_power_gain(p) == doctest::Approx(std::accumulate(raw.begin(), raw.end(), 0.0)));
}

TEST_CASE("channel profile validation")
{
    auto p = etu();
    p.tap_powers_db.pop_back();
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = etu();
    p.tap_delays_ns[2] = p.tap_delays_ns[1];
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = etu();
    p.n_rx_ants = 0;
    CHECK_THROWS_AS(validate(p), ConfigError);
    p = etu();
    p.doppler_hz = -1;
    CHECK_THROWS_AS(validate(p), ConfigError);
}

TEST_CASE("fading gains: zero Doppler freezes, seeds reproduce")
{
    auto p = etu();
    p.doppler_hz = 0.0;
    const auto g = fading_gains(p, 1920, 0.0, 0, 3, 1.92e6);
    for (const auto& v : g) CHECK(v == g.front());

    p = etu();
    CHECK(fading_gains(p, 500, 0.1, 1, 2, 1.92e6) == fading_gains(p, 500, 0.1, 1, 2, 1.92e6));
    CHECK(fading_gains(p, 10, 0.0, 0, 2, 1.92e6) != fading_gains(p, 10, 0.0, 1, 2, 1.92e6));
    CHECK(fading_gains(p, 10, 0.0, 0, 2, 1.92e6) != fading_gains(p, 10, 0.0, 0, 3, 1.92e6));
}

TEST_CASE("ideal model is a single unit tap")
{
    const auto p = ideal();
    for (const auto& v : fading_gains(p, 16, 0.0, 0, 0, 1.92e6)) CHECK(v == Complex{1.0, 0.0});
    for (const auto& v : fading_gains(p, 16, 0.0, 1, 4, 1.92e6)) CHECK(v == Complex{});
}

TEST_CASE("tap gain power and Rayleigh envelope over 10^4 seeds")
{
    auto p = etu();
    const auto lin = linear_tap_powers(p);
    constexpr int n_seeds = 10000;
    for (int tap = 0; tap < 9; ++tap) {
        std::vector<double> mags;
        double power = 0.0;
        for (int s = 0; s < n_seeds; ++s) {
            p.seed = static_cast<std::uint64_t>(s) * 7919 + 1;
            const auto g = fading_gains(p, 1, 0.0, 0, tap, 1.92e6)[0];
            mags.push_back(std::abs(g));
            power += std::norm(g);
        }
        power /= n_seeds;
        const double expected = lin[static_cast<std::size_t>(tap)];
        INFO("tap " << tap);
        CHECK(std::abs(power / expected - 1.0) < 0.03);
        const double d = stats::ks_statistic(mags, [&](double r) { return 1.0 - std::exp(-r * r / expected); });
        CHECK(stats::ks_pvalue(d, mags.size()) > 0.01);
    }
}

TEST_CASE("fading autocorrelation follows the Clarke model")
{
    // E[g(t) g*(t + tau)] / P = J0(2 pi f_d tau) for isotropic scattering.
    auto p = etu();
    p.doppler_hz = 70.0;
    const int lag = 3840;  // 2 ms
    Complex acc{};
    double power = 0.0;
    for (int s = 0; s < 3000; ++s) {
        p.seed = static_cast<std::uint64_t>(s) + 99;
        const auto g = fading_gains(p, lag + 1, 0.0, 0, 3, 1.92e6);
        acc += g[0] * std::conj(g[static_cast<std::size_t>(lag)]);
        power += std::norm(g[0]);
    }
    const double rho = acc.real() / power;
    const double j0 = std::cyl_bessel_j(0.0, 2.0 * kPi * 70.0 * lag / 1.92e6);
    CHECK(std::abs(rho - j0) < 0.06);
    CHECK(std::abs(acc.imag() / power) < 0.06);
}

TEST_CASE("fractional delay interpolator")
{
    const auto h0 = fractional_delay_kernel(0.0);
    for (int k = 0; k < kInterpolatorLength; ++k) CHECK(h0[static_cast<std::size_t>(k)] == (k == 8 ? 1.0 : 0.0));
    gen::for_all(10, 31, [](gen::Source& g) {
        const auto h = fractional_delay_kernel(g.real(0.0, 0.999));
        CHECK(std::accumulate(h.begin(), h.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    });
    CHECK_THROWS_AS(fractional_delay_kernel(1.0), InternalError);
}

TEST_CASE("integer delay is an exact shift, fractional delay tracks a slow tone")
{
    gen::for_all(5, 32, [](gen::Source& g) {
        const auto x = g.complex_vector(300);
        const int d = g.integer(0, 40);
        const auto y = delay_signal(x, d);
        for (int n = 0; n < 300; ++n) {
            const Complex expected = n >= d ? x[static_cast<std::size_t>(n - d)] : Complex{};
            REQUIRE(y[static_cast<std::size_t>(n)] == expected);
        }
    });

    const double f = 0.03;
    ComplexSequence tone(400);
    for (int n = 0; n < 400; ++n) tone[static_cast<std::size_t>(n)] = std::polar(1.0, 2 * kPi * f * n);
    const double d = 7.37;
    const auto y = delay_signal(tone, d);
    double worst = 0.0;
    for (int n = 50; n < 350; ++n) {
        worst = std::max(worst, std::abs(y[static_cast<std::size_t>(n)] - std::polar(1.0, 2 * kPi * f * (n - d))));
    }
    CHECK(worst < 2e-3);
}

TEST_CASE("ideal channel is an identity or a pure delay")
{
    const auto g = derive_geometry(6, 0);
    const auto tx = synthesize_preamble({22, 32, 1, false}, g, 1.0);
    const auto out = apply_channel(tx, ideal(), 0.0, 5);
    REQUIRE(out.size() == 2u);
    for (const auto& a : out) CHECK(a == tx.samples);

    const auto shifted = apply_channel(tx, ideal(), 3.0, 5);
    for (const auto& a : shifted) {
        for (std::size_t n = 0; n < a.size(); ++n) {
            REQUIRE(a[n] == (n >= 3 ? tx.samples[n - 3] : Complex{}));
        }
    }
    CHECK_THROWS_AS(apply_channel(tx, ideal(), 186.0, 5), ConfigError);
    CHECK_THROWS_AS(apply_channel(tx, ideal(), -1.0, 5), ConfigError);
}

TEST_CASE("ETU channel preserves mean power over 10^3 seeds")
{
    const auto g = derive_geometry(6, 0);
    const auto tx = synthesize_preamble({22, 32, 1, false}, g, 1.0);
    const auto p = etu();
    double power[2] = {0.0, 0.0};
    constexpr int n = 1000;
    for (int s = 0; s < n; ++s) {
        const auto out = apply_channel(tx, p, 0.0, static_cast<std::uint64_t>(s));
        for (int a = 0; a < 2; ++a) power[a] += seq_power(out[static_cast<std::size_t>(a)]) / n;
    }
    CHECK(std::abs(power[0] - 1.0) < 0.03);
    CHECK(std::abs(power[1] - 1.0) < 0.03);
}

TEST_CASE("ETU channel is deterministic per trial seed")
{
    const auto g = derive_geometry(6, 0);
    const auto tx = synthesize_preamble({22, 0, 1, false}, g, 1.0);
    CHECK(apply_channel(tx, etu(), 1.5, 42) == apply_channel(tx, etu(), 1.5, 42));
    CHECK(apply_channel(tx, etu(), 1.5, 42) != apply_channel(tx, etu(), 1.5, 43));
}

TEST_CASE("noise-only subframe has unit variance and is white")
{
    const auto g = derive_geometry(6, 0);
    ComplexSequence all;
    for (std::uint64_t s = 0; s < 53; ++s) {
        const auto rx = mix_and_add_noise({}, 1, g, s);
        CHECK(rx.noise_variance == 1.0);
        all.insert(all.end(), rx.antennas[0].begin(), rx.antennas[0].end());
    }
    const double n = static_cast<double>(all.size());
    REQUIRE(n >= 1e5);
    CHECK(std::abs(oracle::mean_power(all, 0, all.size()) - 1.0) < 0.02);
    for (std::size_t lag = 1; lag <= 10; ++lag) {
        Complex acc{};
        for (std::size_t i = 0; i + lag < all.size(); ++i) acc += all[i + lag] * std::conj(all[i]);
        INFO("lag " << lag);
        CHECK(std::abs(acc) / n < 3.0 / std::sqrt(n));
    }
}

TEST_CASE("SNR scaling of contributions")
{
    const auto g = derive_geometry(6, 0);
    const auto a = apply_channel(synthesize_preamble({22, 32, 1, false}, g, 1.0), ideal(), 0.0, 1);
    const auto b = apply_channel(synthesize_preamble({5, 7, 1, false}, g, 1.0), ideal(), 0.0, 1);
    const auto noise = mix_and_add_noise({}, 2, g, 77);

    auto signal_power = [&](std::vector<Contribution> c) {
        const auto rx = mix_and_add_noise(c, 2, g, 77);
        double p = 0.0;
        for (int ant = 0; ant < 2; ++ant) {
            ComplexSequence diff(rx.antennas[0].size());
            for (std::size_t i = 0; i < diff.size(); ++i) {
                diff[i] = rx.antennas[static_cast<std::size_t>(ant)][i] - noise.antennas[static_cast<std::size_t>(ant)][i];
            }
            p += seq_power(diff) / 2;
        }
        return p;
    };
    CHECK(signal_power({{a, 0.0, 1.0}}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(signal_power({{a, -10.0, 1.0}, {b, -20.0, 1.0}}) / 0.11 - 1.0) < 0.05);
    CHECK(signal_power({{a, 10.0, 4.0}}) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("a contribution at -inf dB leaves the subframe bit-identical")
{
    const auto g = derive_geometry(6, 0);
    const auto a = apply_channel(synthesize_preamble({22, 32, 1, false}, g, 1.0), etu(), 0.0, 3);
    const auto b = apply_channel(synthesize_preamble({22, 0, 1, false}, g, 1.0), etu(), 0.0, 4);
    const double ninf = -std::numeric_limits<double>::infinity();
    const auto one = mix_and_add_noise(std::vector<Contribution>{{a, -5.0, 1.0}}, 2, g, 9);
    const auto two = mix_and_add_noise(std::vector<Contribution>{{a, -5.0, 1.0}, {b, ninf, 1.0}}, 2, g, 9);
    CHECK(one.antennas == two.antennas);
}

TEST_CASE("mixing checks shapes")
{
    const auto g = derive_geometry(6, 0);
    const auto a = apply_channel(synthesize_preamble({}, g, 1.0), ideal(1), 0.0, 1);
    CHECK_THROWS_AS(mix_and_add_noise(std::vector<Contribution>{{a, 0.0, 1.0}}, 2, g, 1), InternalError);
    CHECK(mix_and_add_noise({}, 2, g, 5).antennas == mix_and_add_noise({}, 2, g, 5).antennas);
    CHECK(mix_and_add_noise({}, 2, g, 5).antennas != mix_and_add_noise({}, 2, g, 6).antennas);
}
