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


#include "prach/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

namespace prach {

namespace {

std::string type_name(const YAML::Node& n)
{
    switch (n.Type()) {
    case YAML::NodeType::Null: return "null";
    case YAML::NodeType::Scalar: return "scalar '" + n.Scalar() + "'";
    case YAML::NodeType::Sequence: return "list";
    case YAML::NodeType::Map: return "mapping";
    default: return "undefined";
    }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& path, const char* expected)
{
    if (!n.IsScalar()) throw ConfigError(path + ": expected " + expected + ", got " + type_name(n));
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(path + ": expected " + expected + ", got " + type_name(n));
    }
}

int as_int(const YAML::Node& n, const std::string& path) { return scalar<int>(n, path, "an integer"); }

double as_double(const YAML::Node& n, const std::string& path) { return scalar<double>(n, path, "a number"); }

bool as_bool(const YAML::Node& n, const std::string& path) { return scalar<bool>(n, path, "a boolean"); }

std::string as_string(const YAML::Node& n, const std::string& path) { return scalar<std::string>(n, path, "a string"); }

std::uint64_t as_u64(const YAML::Node& n, const std::string& path)
{
    return scalar<std::uint64_t>(n, path, "a non-negative integer");
}

template <class T, class Fn>
std::vector<T> as_list(const YAML::Node& n, const std::string& path, Fn&& item)
{
    std::vector<T> out;
    if (n.IsScalar()) {
        out.push_back(item(n, path));
        return out;
    }
    if (!n.IsSequence()) throw ConfigError(path + ": expected a list, got " + type_name(n));
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(item(n[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string choice(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> supported,
                   std::initializer_list<const char*> known_unsupported = {})
{
    const auto value = as_string(n, path);
    for (const char* s : supported) {
        if (value == s) return value;
    }
    for (const char* s : known_unsupported) {
        if (value == s) throw UnsupportedError(path + ": '" + value + "' is not modeled");
    }
    std::string list;
    for (const char* s : supported) list += (list.empty() ? "" : ", ") + std::string(s);
    throw ConfigError(path + ": unknown value '" + value + "' (expected one of: " + list + ")");
}

using Handler = std::function<void(const YAML::Node&, const std::string&)>;

void walk_section(const YAML::Node& section, const std::string& name, const std::map<std::string, Handler>& handlers)
{
    if (section.IsNull()) return;
    if (!section.IsMap()) throw ConfigError(name + ": expected a mapping, got " + type_name(section));
    for (const auto& kv : section) {
        const auto key = kv.first.as<std::string>();
        const auto path = name + "." + key;
        auto it = handlers.find(key);
        if (it == handlers.end()) throw ConfigError(path + ": unknown key");
        it->second(kv.second, path);
    }
}

}  // namespace

std::vector<double> default_target_snr_grid()
{
    std::vector<double> grid;
    for (int s = -30; s <= -10; s += 2) grid.push_back(s);
    return grid;
}

SweepSpec default_spec()
{
    SweepSpec spec;
    spec.base = default_base_config();
    spec.sweep.target_snr_db = default_target_snr_grid();
    return spec;
}

void validate(const SweepSpec& spec)
{
    const auto& s = spec.sweep;
    if (s.subframes < 1) throw ConfigError("sweep.subframes must be at least 1");
    if (s.target_snr_db.empty()) throw ConfigError("sweep.target_snr_db must not be empty");
    for (std::size_t i = 0; i < s.target_snr_db.size(); ++i) {
        if (!std::isfinite(s.target_snr_db[i])) throw ConfigError("sweep.target_snr_db: values must be finite");
        if (i > 0 && s.target_snr_db[i] <= s.target_snr_db[i - 1]) {
            throw ConfigError("sweep.target_snr_db must be strictly increasing");
        }
    }
    for (double v : s.interferer_snr_db) {
        if (std::isnan(v) || (std::isinf(v) && v > 0)) throw ConfigError("sweep.interferer_snr_db: invalid value");
    }
    if (s.scenario != ScenarioKind::none && s.interferer_snr_db.empty()) {
        throw ConfigError("sweep.interferer_snr_db must not be empty for an interference scenario");
    }
    if (s.scenario == ScenarioKind::mixed) throw UnsupportedError("sweep.scenario: 'mixed' sweeps are not modeled");
    if (s.scenario == ScenarioKind::intra_cell && s.interferer_preamble_indices.empty()) {
        throw ConfigError("sweep.interferer_preamble_indices must not be empty");
    }
    if (s.scenario == ScenarioKind::inter_cell && s.interferer_root_indices.empty()) {
        throw ConfigError("sweep.interferer_root_indices must not be empty");
    }
    // Build every scenario once so identity and detector errors surface here.
    const auto& b = spec.base;
    baseline(b);
    for (double lvl : s.interferer_snr_db) {
        if (s.scenario == ScenarioKind::intra_cell) make_intra_cell(b.target, s.interferer_preamble_indices, lvl, b);
        if (s.scenario == ScenarioKind::inter_cell) {
            make_inter_cell(b.target, s.interferer_root_indices, s.interferer_preamble_index, lvl, b);
        }
    }
}

SweepSpec parse_config(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config is not valid YAML: ") + e.what());
    }

    SweepSpec spec = default_spec();
    if (root.IsNull()) return spec;
    if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");

    auto& base = spec.base;
    auto& sw = spec.sweep;
    int n_ulrb = 6;
    int format = 0;
    int freq_offset = 0;

    const std::map<std::string, Handler> ue = {
        {"n_ulrb", [&](auto& n, auto& p) { n_ulrb = as_int(n, p); }},
        {"duplex_mode", [&](auto& n, auto& p) { choice(n, p, {"FDD"}, {"TDD"}); }},
        {"cyclic_prefix", [&](auto& n, auto& p) { choice(n, p, {"Normal"}, {"Extended"}); }},
        {"n_tx_ants",
         [&](auto& n, auto& p) {
             const int v = as_int(n, p);
             if (v < 1) throw ConfigError(p + ": must be at least 1");
             if (v != 1) throw UnsupportedError(p + ": only one transmit antenna is modeled");
         }},
        {"target_timing_offset_samples", [&](auto& n, auto& p) { base.target_timing_offset_samples = as_double(n, p); }},
        {"interferer_timing_offset_samples",
         [&](auto& n, auto& p) { base.interferer_timing_offset_samples = as_double(n, p); }},
    };
    const std::map<std::string, Handler> prach = {
        {"format", [&](auto& n, auto& p) { format = as_int(n, p); }},
        {"root_sequence_index", [&](auto& n, auto& p) { base.target.logical_root_index = as_int(n, p); }},
        {"cyclic_shift_index", [&](auto& n, auto& p) { base.target.cyclic_shift_idx = as_int(n, p); }},
        {"high_speed", [&](auto& n, auto& p) { base.target.high_speed = as_bool(n, p); }},
        {"freq_offset", [&](auto& n, auto& p) { freq_offset = as_int(n, p); }},
        {"preamble_index", [&](auto& n, auto& p) { base.target.preamble_index = as_int(n, p); }},
    };
    const std::map<std::string, Handler> channel = {
        {"n_rx_ants", [&](auto& n, auto& p) { base.channel.n_rx_ants = as_int(n, p); }},
        {"delay_profile", [&](auto& n, auto& p) { choice(n, p, {"ETU"}, {"EPA", "EVA"}); }},
        {"doppler_hz", [&](auto& n, auto& p) { base.channel.doppler_hz = as_double(n, p); }},
        {"mimo_correlation", [&](auto& n, auto& p) { choice(n, p, {"Low"}, {"Medium", "High"}); }},
        {"seed", [&](auto& n, auto& p) { base.channel.seed = as_u64(n, p); }},
        {"n_terms", [&](auto& n, auto& p) { base.channel.n_terms = as_int(n, p); }},
        {"model_type",
         [&](auto& n, auto& p) {
             base.channel.model = choice(n, p, {"GMEDS", "ideal"}, {"Dent"}) == "GMEDS" ? FadingModel::gmeds_rayleigh
                                                                                        : FadingModel::ideal;
         }},
        {"init_phase", [&](auto& n, auto& p) { choice(n, p, {"Random"}); }},
        {"normalize_path_gains", [&](auto& n, auto& p) { base.channel.normalize_path_gains = as_bool(n, p); }},
        {"normalize_tx_ants", [&](auto& n, auto& p) { as_bool(n, p); }},
    };
    const std::map<std::string, Handler> detector = {
        {"n_ca", [&](auto& n, auto& p) { base.detector.n_ca = as_int(n, p); }},
        {"p_fa", [&](auto& n, auto& p) { base.detector.p_fa_target = as_double(n, p); }},
        {"search_window", [&](auto& n, auto& p) { base.detector.search_window_samples = as_int(n, p); }},
        {"ta_tolerance_us", [&](auto& n, auto& p) { base.detector.ta_tolerance_s = as_double(n, p) * 1e-6; }},
        {"noise_floor",
         [&](auto& n, auto& p) {
             base.detector.noise_floor =
                 choice(n, p, {"estimated", "genie"}) == "genie" ? NoiseFloorMode::genie : NoiseFloorMode::estimated;
         }},
        {"report",
         [&](auto& n, auto& p) {
             base.detector.report = choice(n, p, {"all", "strongest"}) == "all" ? ReportMode::all : ReportMode::strongest;
         }},
        {"leakage_margin", [&](auto& n, auto& p) { base.detector.leakage_margin = as_double(n, p); }},
    };
    const std::map<std::string, Handler> sweep = {
        {"scenario",
         [&](auto& n, auto& p) {
             const auto v = choice(n, p, {"none", "intra_cell", "inter_cell", "mixed"});
             sw.scenario = v == "none"         ? ScenarioKind::none
                           : v == "intra_cell" ? ScenarioKind::intra_cell
                           : v == "inter_cell" ? ScenarioKind::inter_cell
                                               : ScenarioKind::mixed;
         }},
        {"target_snr_db", [&](auto& n, auto& p) { sw.target_snr_db = as_list<double>(n, p, as_double); }},
        {"interferer_snr_db", [&](auto& n, auto& p) { sw.interferer_snr_db = as_list<double>(n, p, as_double); }},
        {"interferer_preamble_indices",
         [&](auto& n, auto& p) { sw.interferer_preamble_indices = as_list<int>(n, p, as_int); }},
        {"interferer_root_indices", [&](auto& n, auto& p) { sw.interferer_root_indices = as_list<int>(n, p, as_int); }},
        {"interferer_preamble_index", [&](auto& n, auto& p) { sw.interferer_preamble_index = as_int(n, p); }},
        {"simultaneous", [&](auto& n, auto& p) { sw.simultaneous = as_bool(n, p); }},
        {"subframes", [&](auto& n, auto& p) { sw.subframes = as_int(n, p); }},
        {"seed", [&](auto& n, auto& p) { sw.seed = as_u64(n, p); }},
    };
    const std::map<std::string, const std::map<std::string, Handler>*> sections = {
        {"ue", &ue}, {"prach", &prach}, {"channel", &channel}, {"detector", &detector}, {"sweep", &sweep}};

    for (const auto& kv : root) {
        const auto name = kv.first.as<std::string>();
        auto it = sections.find(name);
        if (it == sections.end()) throw ConfigError(name + ": unknown section");
        walk_section(kv.second, name, *it->second);
    }

    base.geometry = derive_geometry(n_ulrb, format, freq_offset);
    validate(base.channel);
    validate(base.target);
    validate(spec);
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

}  // namespace prach
