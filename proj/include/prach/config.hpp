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

// YAML run configuration. Sections: ue, prach, channel, detector, sweep.
// Unknown keys, wrong types and out-of-range values raise ConfigError naming
// the key path. An empty document yields the default spec.

#include "prach/interference.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace prach {

struct SweepConfig {
    ScenarioKind scenario = ScenarioKind::none;
    std::vector<double> target_snr_db;
    std::vector<double> interferer_snr_db{-27.0, -23.0, -17.0};
    std::vector<int> interferer_preamble_indices{0};
    std::vector<int> interferer_root_indices{0};
    int interferer_preamble_index = 3;
    bool simultaneous = false;
    int subframes = 1000;
    std::uint64_t seed = 1;
};

struct SweepSpec {
    BaseConfig base;
    SweepConfig sweep;
};

std::vector<double> default_target_snr_grid();

SweepSpec default_spec();

void validate(const SweepSpec& spec);

SweepSpec parse_config(std::string_view text);

SweepSpec load_config(const std::filesystem::path& path);

}  // namespace prach
