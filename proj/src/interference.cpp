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

#include "prach/seeds.hpp"

#include <cmath>
#include <string>

namespace prach {

std::string to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::none: return "none";
    case ScenarioKind::intra_cell: return "intra_cell";
    case ScenarioKind::inter_cell: return "inter_cell";
    case ScenarioKind::mixed: return "mixed";
    }
    return "unknown";
}

BaseConfig default_base_config()
{
    BaseConfig base;
    base.geometry = derive_geometry(6, 0, 0);
    base.channel = default_channel_profile();
    return base;
}

bool same_cell(const PreambleIdentity& a, const PreambleIdentity& b)
{
    return a.logical_root_index == b.logical_root_index && a.cyclic_shift_idx == b.cyclic_shift_idx &&
           a.high_speed == b.high_speed;
}

namespace {

UeDescriptor make_ue(UeRole role, const PreambleIdentity& id, double snr_db, double offset, const ChannelProfile& ch)
{
    validate(id);
    return {role, id, snr_db, offset, ch};
}

}  // namespace

void validate(const Scenario& s)
{
    validate(s.geometry);
    validate(s.target.identity);
    validate(s.detector, ncs_from_config(s.target.identity.cyclic_shift_idx, false));
    if (s.target.role != UeRole::target) throw ConfigError("scenario target must have the target role");
    for (const auto& ue : s.interferers) {
        if (ue.role != UeRole::interferer) throw ConfigError("scenario interferers must have the interferer role");
        validate(ue.identity);
        if (ue.identity == s.target.identity) {
            throw ConfigError("interferer uses the target's own preamble (contention is not modeled)");
        }
        const bool intra = same_cell(ue.identity, s.target.identity);
        if (s.kind == ScenarioKind::intra_cell && !intra) {
            throw ConfigError("intra-cell interferer must share the target's root sequence index");
        }
        if (s.kind == ScenarioKind::inter_cell && ue.identity.logical_root_index == s.target.identity.logical_root_index) {
            throw ConfigError("inter-cell interferer must use a root sequence index different from the target's");
        }
    }
    if (s.kind == ScenarioKind::none && !s.interferers.empty()) {
        throw ConfigError("interference-free scenario cannot list interferers");
    }
}

Scenario baseline(const BaseConfig& base)
{
    Scenario s;
    s.target = make_ue(UeRole::target, base.target, 0.0, base.target_timing_offset_samples, base.channel);
    s.geometry = base.geometry;
    s.detector = base.detector;
    s.kind = ScenarioKind::none;
    validate(s);
    return s;
}

Scenario make_intra_cell(const PreambleIdentity& target, std::span<const int> interferer_preamble_indices,
                         double snr_db_interferer, const BaseConfig& base)
{
    BaseConfig b = base;
    b.target = target;
    Scenario s = baseline(b);
    s.kind = ScenarioKind::intra_cell;
    for (int idx : interferer_preamble_indices) {
        if (idx == target.preamble_index) {
            throw ConfigError("intra-cell interferer preamble index " + std::to_string(idx) +
                              " equals the target's");
        }
        PreambleIdentity id = target;
        id.preamble_index = idx;
        s.interferers.push_back(
            make_ue(UeRole::interferer, id, snr_db_interferer, base.interferer_timing_offset_samples, base.channel));
    }
    validate(s);
    return s;
}

Scenario make_inter_cell(const PreambleIdentity& target, std::span<const int> interferer_logical_roots,
                         int interferer_preamble_index, double snr_db_interferer, const BaseConfig& base)
{
    BaseConfig b = base;
    b.target = target;
    Scenario s = baseline(b);
    s.kind = ScenarioKind::inter_cell;
    for (int root : interferer_logical_roots) {
        if (root == target.logical_root_index) {
            throw ConfigError("inter-cell interferer root sequence index " + std::to_string(root) +
                              " equals the target's");
        }
        PreambleIdentity id = target;
        id.logical_root_index = root;
        id.preamble_index = interferer_preamble_index;
        s.interferers.push_back(
            make_ue(UeRole::interferer, id, snr_db_interferer, base.interferer_timing_offset_samples, base.channel));
    }
    validate(s);
    return s;
}

std::uint64_t trial_seed(std::uint64_t master_seed, double target_snr_db, std::int64_t trial_index)
{
    return seeds::derive(master_seed, {seeds::key_of(target_snr_db), static_cast<std::uint64_t>(trial_index)});
}

SynthesizedSubframe synthesize_subframe(const Scenario& scenario, double target_snr_db, std::int64_t trial_index,
                                        std::uint64_t master_seed)
{
    const std::uint64_t seed = trial_seed(master_seed, target_snr_db, trial_index);
    const int n_rx = scenario.target.channel.n_rx_ants;

    std::vector<Contribution> contributions;
    SynthesizedSubframe out;
    const double fs = scenario.geometry.sample_rate;

    auto add_ue = [&](const UeDescriptor& ue, double snr_db, std::uint64_t ue_id) {
        if (ue.channel.n_rx_ants != n_rx) throw ConfigError("all UEs must be received on the same antennas");
        if (std::isinf(snr_db) && snr_db < 0.0) return;
        const auto wf = synthesize_preamble(ue.identity, scenario.geometry, 1.0);
        const std::uint64_t ue_seed = seeds::derive(seed, {seeds::tag(seeds::Stream::channel), ue_id});
        contributions.push_back(
            {apply_channel(wf, ue.channel, ue.timing_offset_samples, ue_seed), snr_db, nominal_power_gain(ue.channel)});
    };

    add_ue(scenario.target, target_snr_db, 0);
    out.truth.preamble_index = scenario.target.identity.preamble_index;
    out.truth.ta_true_s = scenario.target.timing_offset_samples / fs;
    out.truth.cell_ues.push_back({out.truth.preamble_index, out.truth.ta_true_s});

    for (std::size_t i = 0; i < scenario.interferers.size(); ++i) {
        const auto& ue = scenario.interferers[i];
        add_ue(ue, ue.snr_db, i + 1);
        if (same_cell(ue.identity, scenario.target.identity) && !(std::isinf(ue.snr_db) && ue.snr_db < 0.0)) {
            out.truth.cell_ues.push_back({ue.identity.preamble_index, ue.timing_offset_samples / fs});
        }
    }

    out.rx = mix_and_add_noise(contributions, n_rx, scenario.geometry, seed);
    return out;
}

}  // namespace prach
