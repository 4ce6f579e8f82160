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

// Monte-Carlo CDR sweeps, noise-only false-alarm calibration, the trend
// (observation) suite and CSV / plot-script emission.

#include "prach/config.hpp"
#include "prach/interference.hpp"
#include "prach/parallel.hpp"
#include "prach/receiver.hpp"
#include "prach/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prach {

struct TrialOutcome {
    bool correct = false;
    int n_false = 0;
};

// Correct: the report holds the target index with |ta - ta_true| within the
// tolerance. False: any detection not matching an in-cell transmission by
// index and TA.
TrialOutcome score(const DetectionReport& report, const GroundTruth& truth, double ta_tolerance_s);

struct CdrPoint {
    std::string scenario_kind = "none";
    double target_snr_db = 0.0;
    std::optional<double> interferer_snr_db;
    std::string interferer_param;
    std::int64_t n_trials = 0;
    std::int64_t n_correct = 0;
    double cdr = 0.0;
    stats::Interval ci;
    std::int64_t n_false = 0;
    std::uint64_t seed = 0;
};

// One curve of a sweep: a fixed scenario swept over the target SNR grid.
struct Curve {
    Scenario scenario;
    std::optional<double> interferer_snr_db;
    std::string interferer_param;
};

std::vector<Curve> build_curves(const SweepSpec& spec);

std::vector<CdrPoint> run_curve(const Curve& curve, std::span<const double> snr_grid, int n_subframes,
                                std::uint64_t master_seed, const RunOptions& options = {});

std::vector<CdrPoint> run_cdr_sweep(const SweepSpec& spec, const RunOptions& options = {});

struct PfaResult {
    std::int64_t n_subframes = 0;
    int windows_per_subframe = 0;
    std::int64_t window_detections = 0;
    std::int64_t subframes_with_detection = 0;
    double per_window_rate = 0.0;
    stats::Interval per_window_ci;
    double per_subframe_rate = 0.0;
    stats::Interval per_subframe_ci;
    double p_fa_target = 0.0;
    double threshold_relative = 0.0;
};

// Noise-only subframes through the whole-cell detector. A threshold override
// replaces the calibrated T_r.
PfaResult run_pfa_calibration(const BaseConfig& base, std::int64_t n_subframes, std::uint64_t seed,
                              const RunOptions& options = {}, std::optional<double> threshold_relative = {});

// Paired comparison of a weaker-interference curve against a stronger one.
// A violation is a point where the stronger curve is significantly better
// (non-overlapping CIs) while the weaker curve is below `saturation`; a
// significant drop is the opposite.
struct TrendCheck {
    bool passed = false;
    int violations = 0;
    int significant_drops = 0;
    std::string detail;
};

TrendCheck check_non_increasing(std::span<const CdrPoint> weaker, std::span<const CdrPoint> stronger,
                                double saturation = 0.999);

// At every grid point, max - min CDR across curves must not exceed the Wilson
// width of the pooled mean CDR at the per-curve trial count.
struct SpreadCheck {
    bool passed = false;
    double worst_spread = 0.0;
    double worst_allowed = 0.0;
    double worst_snr_db = 0.0;
    std::string detail;
};

SpreadCheck check_spread(const std::vector<std::vector<CdrPoint>>& curves);

struct ObservationCheck {
    std::string name;
    std::string description;
    bool informational = false;
    bool passed = false;
    std::string detail;
    std::vector<CdrPoint> points;
};

struct ObservationLedger {
    std::vector<ObservationCheck> checks;
    bool all_passed() const;
};

struct ObservationOptions {
    int n_subframes = 500;
    std::vector<double> snr_grid;
    std::uint64_t seed = 1;
    bool informational = true;
};

ObservationLedger run_observation_suite(const BaseConfig& base, const ObservationOptions& options,
                                        const RunOptions& run = {});

// Exact CSV layout: header plus one row per point, LF line ends.
std::string format_csv(std::span<const CdrPoint> points);

// Self-contained matplotlib script with the points embedded.
std::string plot_script(std::span<const CdrPoint> points, const std::string& title);

// Writes <stem>.csv and plot_<stem>.py into `dir`; returns the CSV path.
std::filesystem::path emit_results(std::span<const CdrPoint> points, const std::filesystem::path& dir,
                                   const std::string& stem = "cdr");

}  // namespace prach
