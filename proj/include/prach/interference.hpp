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

// Target UE plus intra-cell (same root, other preamble) or inter-cell (other
// root) interferers, each with its own channel instance and SNR.

#include "prach/channel.hpp"
#include "prach/receiver.hpp"
#include "prach/waveform.hpp"
#include "prach/zc.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace prach {

enum class UeRole { target, interferer };
enum class ScenarioKind { none, intra_cell, inter_cell, mixed };

std::string to_string(ScenarioKind kind);

struct UeDescriptor {
    UeRole role = UeRole::target;
    PreambleIdentity identity;
    double snr_db = 0.0;
    double timing_offset_samples = 0.0;
    ChannelProfile channel;
};

// Everything a scenario shares with the interference-free setup.
struct BaseConfig {
    PreambleIdentity target;
    FrameGeometry geometry;
    ChannelProfile channel;
    DetectorConfig detector;
    double target_timing_offset_samples = 0.0;
    double interferer_timing_offset_samples = 0.0;
};

BaseConfig default_base_config();

struct Scenario {
    UeDescriptor target;
    std::vector<UeDescriptor> interferers;
    FrameGeometry geometry;
    DetectorConfig detector;
    ScenarioKind kind = ScenarioKind::none;
};

void validate(const Scenario& scenario);

Scenario baseline(const BaseConfig& base);

// Interferers share the target's root and cyclic shift configuration and use
// the given preamble indices.
Scenario make_intra_cell(const PreambleIdentity& target, std::span<const int> interferer_preamble_indices,
                         double snr_db_interferer, const BaseConfig& base);

// Interferers use the given logical roots and one common preamble index.
Scenario make_inter_cell(const PreambleIdentity& target, std::span<const int> interferer_logical_roots,
                         int interferer_preamble_index, double snr_db_interferer, const BaseConfig& base);

// A UE belongs to the target's cell when it resolves through the same logical
// root and cyclic shift configuration.
bool same_cell(const PreambleIdentity& a, const PreambleIdentity& b);

struct CellTransmission {
    int preamble_index = 0;
    double ta_true_s = 0.0;
};

struct GroundTruth {
    int preamble_index = 0;
    double ta_true_s = 0.0;
    // Every UE transmitting in the target's cell, target first.
    std::vector<CellTransmission> cell_ues;
};

struct SynthesizedSubframe {
    RxSubframe rx;
    GroundTruth truth;
};

// Seed of one trial: depends on the master seed, the target SNR and the trial
// index only, so every interference setting of a grid point sees the same
// target channel and noise.
std::uint64_t trial_seed(std::uint64_t master_seed, double target_snr_db, std::int64_t trial_index);

SynthesizedSubframe synthesize_subframe(const Scenario& scenario, double target_snr_db, std::int64_t trial_index,
                                        std::uint64_t master_seed);

}  // namespace prach
