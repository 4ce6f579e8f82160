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


#include "prach/interference.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace prach;

namespace {

constexpr double kOff = -std::numeric_limits<double>::infinity();

BaseConfig ideal_base()
{
    auto b = default_base_config();
    b.target = {22, 32, 1, false};
    b.channel.model = FadingModel::ideal;
    return b;
}

}  // namespace

TEST_CASE("baseline scenario")
{
    const auto s = baseline(default_base_config());
    CHECK(s.kind == ScenarioKind::none);
    CHECK(s.interferers.empty());
    CHECK(s.target.role == UeRole::target);
    CHECK(to_string(ScenarioKind::inter_cell) == "inter_cell");
}

TEST_CASE("intra-cell construction")
{
    const auto b = default_base_config();
    const int idx[] = {0, 37};
    const auto s = make_intra_cell({22, 32, 1, false}, idx, -20.0, b);
    CHECK(s.kind == ScenarioKind::intra_cell);
    REQUIRE(s.interferers.size() == 2u);
    for (const auto& ue : s.interferers) {
        CHECK(ue.role == UeRole::interferer);
        CHECK(same_cell(ue.identity, s.target.identity));
        CHECK(ue.snr_db == -20.0);
    }
    CHECK(s.interferers[1].identity.preamble_index == 37);

    const int own[] = {32};
    CHECK_THROWS_AS(make_intra_cell({22, 32, 1, false}, own, -20.0, b), ConfigError);
    const int bad[] = {64};
    CHECK_THROWS_AS(make_intra_cell({22, 32, 1, false}, bad, -20.0, b), ConfigError);
}

TEST_CASE("inter-cell construction")
{
    const auto b = default_base_config();
    const int roots[] = {0, 4};
    const auto s = make_inter_cell({22, 32, 1, false}, roots, 3, -9.0, b);
    CHECK(s.kind == ScenarioKind::inter_cell);
    REQUIRE(s.interferers.size() == 2u);
    CHECK(s.interferers[0].identity.logical_root_index == 0);
    CHECK(s.interferers[1].identity.preamble_index == 3);
    CHECK_FALSE(same_cell(s.interferers[0].identity, s.target.identity));

    const int own[] = {22};
    CHECK_THROWS_AS(make_inter_cell({22, 32, 1, false}, own, 3, -9.0, b), ConfigError);
    const int bad[] = {838};
    CHECK_THROWS_AS(make_inter_cell({22, 32, 1, false}, bad, 3, -9.0, b), ConfigError);
}

TEST_CASE("scenario validation")
{
    auto s = baseline(default_base_config());
    s.interferers.push_back({UeRole::interferer, {22, 1, 1, false}, 0.0, 0.0, default_channel_profile()});
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.kind = ScenarioKind::inter_cell;
    CHECK_THROWS_AS(validate(s), ConfigError);
    s.kind = ScenarioKind::intra_cell;
    CHECK_NOTHROW(validate(s));
    s.interferers[0].identity = s.target.identity;
    CHECK_THROWS_AS(validate(s), ConfigError);
}

TEST_CASE("synthesis is deterministic and seeds do not depend on the interferer")
{
    const auto b = default_base_config();
    const int idx[] = {0};
    const auto s = make_intra_cell(b.target, idx, -20.0, b);
    const auto a1 = synthesize_subframe(s, -15.0, 7, 99);
    const auto a2 = synthesize_subframe(s, -15.0, 7, 99);
    CHECK(a1.rx.antennas == a2.rx.antennas);
    CHECK(synthesize_subframe(s, -15.0, 8, 99).rx.antennas != a1.rx.antennas);
    CHECK(trial_seed(99, -15.0, 7) == trial_seed(99, -15.0, 7));
    CHECK(trial_seed(99, -15.0, 7) != trial_seed(99, -17.0, 7));
}

TEST_CASE("an interferer at -inf dB leaves the subframe bit-identical to the baseline")
{
    const auto b = default_base_config();
    const int idx[] = {0, 37};
    const int roots[] = {0};
    gen::for_all(5, 51, [&](gen::Source& g) {
        const double snr = g.real(-30.0, 0.0);
        const auto trial = g.integer(0, 100000);
        const auto base_sub = synthesize_subframe(baseline(b), snr, trial, 5);
        const auto intra = synthesize_subframe(make_intra_cell(b.target, idx, kOff, b), snr, trial, 5);
        const auto inter = synthesize_subframe(make_inter_cell(b.target, roots, 3, kOff, b), snr, trial, 5);
        CHECK(intra.rx.antennas == base_sub.rx.antennas);
        CHECK(inter.rx.antennas == base_sub.rx.antennas);
        CHECK(intra.truth.cell_ues.size() == 1u);
    });
}

TEST_CASE("ground truth lists in-cell transmissions only")
{
    auto b = default_base_config();
    b.target_timing_offset_samples = 3.0;
    b.interferer_timing_offset_samples = 5.0;
    const int idx[] = {0};
    const auto intra = synthesize_subframe(make_intra_cell(b.target, idx, -20.0, b), -10.0, 0, 1);
    REQUIRE(intra.truth.cell_ues.size() == 2u);
    CHECK(intra.truth.ta_true_s == doctest::Approx(3.0 / 1.92e6));
    CHECK(intra.truth.cell_ues[1].preamble_index == 0);
    CHECK(intra.truth.cell_ues[1].ta_true_s == doctest::Approx(5.0 / 1.92e6));

    const int roots[] = {4};
    const auto inter = synthesize_subframe(make_inter_cell(b.target, roots, 3, -20.0, b), -10.0, 0, 1);
    CHECK(inter.truth.cell_ues.size() == 1u);
}

TEST_CASE("intra-cell target and interferer peak in their own windows")
{
    const auto b = ideal_base();
    const int idx[] = {0};
    const auto s = make_intra_cell(b.target, idx, 20.0, b);
    const PrachDetector det(22, 1, s.geometry, s.detector, 2);
    for (int t = 0; t < 5; ++t) {
        const auto sub = synthesize_subframe(s, 20.0, t, 3);
        const auto report = det.detect(sub.rx);
        const auto* target = report.find(32);
        const auto* intf = report.find(0);
        REQUIRE(target != nullptr);
        REQUIRE(intf != nullptr);
        CHECK(target->window_start != intf->window_start);
        CHECK(report.detections.size() == 2u);
    }
}

TEST_CASE("an inter-cell preamble spreads over the target root's delay axis")
{
    auto b = ideal_base();
    const int roots[] = {0};
    const auto s = make_inter_cell(b.target, roots, 3, 0.0, b);
    const PrachDetector det(22, 1, s.geometry, s.detector, 2);

    // Same-root reference: the target alone, noiseless.
    RxSubframe clean{apply_channel(synthesize_preamble(b.target, s.geometry, 1.0), b.channel, 0.0, 0), 1.0};
    const auto clean_pdps = det.pdps(clean);
    double same_root_peak = 0.0;
    for (double v : clean_pdps[0].values) same_root_peak = std::max(same_root_peak, v);

    RxSubframe other{apply_channel(synthesize_preamble(s.interferers[0].identity, s.geometry, 1.0), b.channel, 0.0, 0),
                     1.0};
    const auto pdp = det.pdps(other)[0].values;
    double peak = 0.0, mean = 0.0;
    for (double v : pdp) {
        peak = std::max(peak, v);
        mean += v / pdp.size();
    }
    // Flat cross-correlation of magnitude sqrt(839): about 1/839 of the peak
    // per sequence lag, spread over every bin.
    CHECK(peak / same_root_peak < 10.0 / 839.0);
    CHECK(mean / same_root_peak > 0.1 / 839.0);
}
