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

// Receive chain and signature detector: CP/GP removal, demapping, per-root
// frequency-domain correlation, non-coherent PDP accumulation, noise-floor
// estimation, per-window thresholding, peak search and TA estimation.

#include "prach/channel.hpp"
#include "prach/common.hpp"
#include "prach/waveform.hpp"
#include "prach/zc.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace prach {

enum class NoiseFloorMode { estimated, genie };
enum class ReportMode { all, strongest };

struct DetectorConfig {
    int n_ca = 1024;
    int n_nca = 1;
    double p_fa_target = 1e-3;
    int search_window_samples = 15;
    double ta_tolerance_s = 1.04e-6;
    NoiseFloorMode noise_floor = NoiseFloorMode::estimated;
    ReportMode report = ReportMode::all;
    // Sidelobe margin of the leakage mask; 0 disables the mask.
    double leakage_margin = 4.0;
};

// Largest search window that keeps signature windows disjoint.
int max_search_window(int n_cs, int n_ca);

void validate(const DetectorConfig& cfg, int n_cs);

struct PowerDelayProfile {
    std::vector<double> values;  // n_ca accumulated powers
    double noise_floor = 0.0;
    int n_acc = 0;
};

struct Detection {
    int preamble_index = 0;
    double peak_value = 0.0;
    int peak_offset_samples = 0;
    int window_start = 0;
    double ta_seconds = 0.0;
};

struct DetectionReport {
    std::vector<Detection> detections;
    double threshold_relative = 0.0;
    double threshold_absolute = 0.0;

    const Detection* find(int preamble_index) const;
};

AntennaSamples remove_cp_gp(const AntennaSamples& rx, const FrameGeometry& geometry);

// Forward transform of each SEQ portion and extraction of the 839 PRACH bins.
// Frequency shift and decimation are identities at 1.92 MS/s with the PRACH
// centred on DC.
AntennaSamples demap_subcarriers(const AntennaSamples& seq_time, const FrameGeometry& geometry);

// Frequency-domain matched filter for one root. The delay-domain output is
// scaled so white noise of variance s2 per time sample gives variance
// n_ca*s2 per delay bin.
class RootCorrelator {
public:
    RootCorrelator(int u, const FrameGeometry& geometry, int n_ca);

    int u() const { return u_; }
    int n_ca() const { return n_ca_; }
    ComplexSequence correlate(std::span<const Complex> demapped) const;
    AntennaSamples correlate(const AntennaSamples& demapped) const;

private:
    int u_;
    int n_ca_;
    double scale_;
    ComplexSequence conj_spectrum_;
};

AntennaSamples correlate_root(const AntennaSamples& demapped, const ZcRootSequence& root, const DetectorConfig& cfg,
                              const FrameGeometry& geometry);

// values[t] = sum over the given delay-domain sequences of |z[t]|^2; n_acc is
// the number of sequences (antennas times repetitions).
PowerDelayProfile accumulate_pdp(std::span<const ComplexSequence> delay_domain, const DetectorConfig& cfg);

// Bias correction for the mean of the smallest n - m of n i.i.d. Gamma(n_acc)
// samples: (1 - p) / P(Gamma(n_acc + 1) <= q), with p = m / n and q the
// Gamma(n_acc) quantile at 1 - p.
double censoring_correction(int n_values, int n_censored, int n_acc);

int censored_count(int n_values);

// Mean after dropping the top ceil(0.05 n) values, times the censoring
// correction. Never returns less than the smallest positive double.
double estimate_noise_floor(std::span<const double> values, int n_acc);

// Relative threshold T_r: the per-sample exceedance q = 1 - (1 - p_fa)^(1/L)
// of a Gamma(n_acc, 1) variable, divided by n_acc.
double threshold_from_pfa(double p_fa_target, int n_acc, int window_len);

// PDP bin at which a signature with cyclic shift c_v peaks at zero delay.
int window_start(int c_v, int n_ca);

double ta_from_peak(int peak_offset_samples, int window_start, const DetectorConfig& cfg,
                    const FrameGeometry& geometry);

// Signatures hosted by one root: preamble indices and their cyclic shifts.
struct RootContext {
    int u = 0;
    int n_cs = 0;
    std::vector<int> preamble_indices;
    std::vector<int> shifts;  // c_v per preamble, same order
};

// Finds, in each signature window, the strongest sample above
// T_det = T_r * noise_floor. Candidates are then taken in descending power and
// dropped when they are within the correlator's sidelobe envelope of the
// already accepted stronger peaks. Only peaks above the kMaskerPfa level
// contribute to the envelope.
DetectionReport detect_signatures(const PowerDelayProfile& pdp, const RootContext& root, const DetectorConfig& cfg,
                                  const FrameGeometry& geometry, double threshold_relative);

// Per-window false-alarm probability of the level a peak must exceed before
// it may mask weaker peaks.
inline constexpr double kMaskerPfa = 1e-6;

// Upper bound of the normalized squared sidelobe of the zero-padded
// correlator at `distance` bins from a peak.
double sidelobe_bound(double distance, int n_ca);

// Whole-cell detector: all 64 preambles of (logical root, cyclic shift
// index), one correlator per physical root in use.
class PrachDetector {
public:
    PrachDetector(int logical_root_index, int cyclic_shift_idx, const FrameGeometry& geometry,
                  const DetectorConfig& cfg, int n_rx_ants);

    const DetectorConfig& config() const { return cfg_; }
    double threshold_relative() const { return threshold_relative_; }
    int window_count() const;

    DetectionReport detect(const RxSubframe& rx) const;
    // Same as detect() with an explicit relative threshold.
    DetectionReport detect(const RxSubframe& rx, double threshold_relative) const;
    // Per-root PDPs of a subframe (in root order), with noise floors.
    std::vector<PowerDelayProfile> pdps(const RxSubframe& rx) const;

private:
    FrameGeometry geometry_;
    DetectorConfig cfg_;
    int n_rx_ants_;
    double threshold_relative_;
    std::vector<RootContext> roots_;
    std::vector<RootCorrelator> correlators_;
};

}  // namespace prach
