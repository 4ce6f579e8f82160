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


#include "prach/receiver.hpp"

#include "prach/fft.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace prach {

const Detection* DetectionReport::find(int preamble_index) const
{
    for (const auto& d : detections) {
        if (d.preamble_index == preamble_index) return &d;
    }
    return nullptr;
}

int max_search_window(int n_cs, int n_ca)
{
    if (n_cs == 0) return n_ca;
    return static_cast<int>((static_cast<long>(n_cs) * n_ca) / kZcLength);
}

void validate(const DetectorConfig& cfg, int n_cs)
{
    if (cfg.n_ca < kZcLength || (cfg.n_ca & (cfg.n_ca - 1)) != 0) {
        throw ConfigError("detector.n_ca must be a power of two >= 839, got " + std::to_string(cfg.n_ca));
    }
    if (cfg.n_nca != 1) throw UnsupportedError("only one non-coherent repetition is modeled for format 0");
    if (!(cfg.p_fa_target > 0.0 && cfg.p_fa_target < 1.0)) throw ConfigError("detector.p_fa must lie in (0, 1)");
    const int cap = max_search_window(n_cs, cfg.n_ca);
    if (cfg.search_window_samples < 1 || cfg.search_window_samples > cap) {
        throw ConfigError("detector.search_window must lie in [1, " + std::to_string(cap) + "], got " +
                          std::to_string(cfg.search_window_samples));
    }
    if (!(cfg.ta_tolerance_s >= 0.0)) throw ConfigError("detector.ta_tolerance_us must be >= 0");
    if (!(cfg.leakage_margin >= 0.0)) throw ConfigError("detector leakage margin must be >= 0");
}

AntennaSamples remove_cp_gp(const AntennaSamples& rx, const FrameGeometry& g)
{
    AntennaSamples out;
    out.reserve(rx.size());
    for (const auto& a : rx) {
        if (a.size() != static_cast<std::size_t>(g.subframe_samples)) {
            throw InternalError("received subframe has " + std::to_string(a.size()) + " samples, expected " +
                                std::to_string(g.subframe_samples));
        }
        out.emplace_back(a.begin() + g.cp_samples, a.begin() + g.cp_samples + g.seq_samples);
    }
    return out;
}

AntennaSamples demap_subcarriers(const AntennaSamples& seq_time, const FrameGeometry& g)
{
    const auto& fft = Fft::get(g.seq_samples, Fft::Direction::forward);
    AntennaSamples out;
    out.reserve(seq_time.size());
    ComplexSequence spectrum(static_cast<std::size_t>(g.seq_samples));
    for (const auto& a : seq_time) {
        if (a.size() != static_cast<std::size_t>(g.seq_samples)) {
            throw InternalError("SEQ portion has " + std::to_string(a.size()) + " samples, expected " +
                                std::to_string(g.seq_samples));
        }
        fft.execute(a, spectrum);
        ComplexSequence bins(static_cast<std::size_t>(kZcLength));
        for (int n = 0; n < kZcLength; ++n) bins[static_cast<std::size_t>(n)] = spectrum[static_cast<std::size_t>(g.bin_of(n))];
        out.push_back(std::move(bins));
    }
    return out;
}

RootCorrelator::RootCorrelator(int u, const FrameGeometry& geometry, int n_ca)
    : u_(u), n_ca_(n_ca), scale_(std::sqrt(static_cast<double>(n_ca) / geometry.seq_samples) / kZcLength)
{
    if (n_ca < kZcLength) throw InternalError("correlator size must be >= 839");
    conj_spectrum_ = zc_spectrum(generate_root_sequence(u).samples);
    for (auto& x : conj_spectrum_) x = std::conj(x);
}

ComplexSequence RootCorrelator::correlate(std::span<const Complex> demapped) const
{
    if (demapped.size() != static_cast<std::size_t>(kZcLength)) {
        throw InternalError("correlator expects 839 demapped bins");
    }
    ComplexSequence padded(static_cast<std::size_t>(n_ca_));
    for (std::size_t k = 0; k < conj_spectrum_.size(); ++k) padded[k] = demapped[k] * conj_spectrum_[k] * scale_;
    Fft::get(n_ca_, Fft::Direction::inverse).execute(padded, padded);
    return padded;
}

AntennaSamples RootCorrelator::correlate(const AntennaSamples& demapped) const
{
    AntennaSamples out;
    out.reserve(demapped.size());
    for (const auto& a : demapped) out.push_back(correlate(a));
    return out;
}

AntennaSamples correlate_root(const AntennaSamples& demapped, const ZcRootSequence& root, const DetectorConfig& cfg,
                              const FrameGeometry& geometry)
{
    return RootCorrelator(root.u, geometry, cfg.n_ca).correlate(demapped);
}

PowerDelayProfile accumulate_pdp(std::span<const ComplexSequence> delay_domain, const DetectorConfig& cfg)
{
    if (delay_domain.empty()) throw InternalError("PDP accumulation needs at least one sequence");
    PowerDelayProfile pdp;
    pdp.values.assign(static_cast<std::size_t>(cfg.n_ca), 0.0);
    for (const auto& z : delay_domain) {
        if (z.size() != pdp.values.size()) throw InternalError("delay-domain length does not match n_ca");
        for (std::size_t t = 0; t < z.size(); ++t) pdp.values[t] += std::norm(z[t]);
    }
    pdp.n_acc = static_cast<int>(delay_domain.size());
    return pdp;
}

int censored_count(int n_values)
{
    return static_cast<int>(std::ceil(0.05 * n_values));
}

double censoring_correction(int n_values, int n_censored, int n_acc)
{
    if (n_censored <= 0) return 1.0;
    if (n_censored >= n_values) throw InternalError("cannot censor every PDP value");
    const double p = static_cast<double>(n_censored) / n_values;
    const double q = boost::math::gamma_q_inv(static_cast<double>(n_acc), p);
    return (1.0 - p) / boost::math::gamma_p(static_cast<double>(n_acc) + 1.0, q);
}

double estimate_noise_floor(std::span<const double> values, int n_acc)
{
    if (values.empty()) throw InternalError("noise floor of an empty PDP");
    const int n = static_cast<int>(values.size());
    const int m = censored_count(n);
    std::vector<double> sorted(values.begin(), values.end());
    std::nth_element(sorted.begin(), sorted.begin() + (n - m), sorted.end());
    const double kept = std::accumulate(sorted.begin(), sorted.begin() + (n - m), 0.0);
    const double floor = kept / (n - m) * censoring_correction(n, m, n_acc);
    return std::max(floor, std::numeric_limits<double>::min());
}

double threshold_from_pfa(double p_fa_target, int n_acc, int window_len)
{
    if (!(p_fa_target > 0.0 && p_fa_target < 1.0)) {
        throw ConfigError("target false-alarm probability must lie in (0, 1)");
    }
    if (n_acc < 1 || window_len < 1) throw ConfigError("threshold needs n_acc >= 1 and L >= 1");
    // 1 - (1 - p)^(1/L), computed without cancellation for small p.
    const double q = -std::expm1(std::log1p(-p_fa_target) / window_len);
    return boost::math::gamma_q_inv(static_cast<double>(n_acc), q) / n_acc;
}

int window_start(int c_v, int n_ca)
{
    const auto lag = static_cast<long>(std::lround(static_cast<double>(c_v) * n_ca / kZcLength));
    return static_cast<int>(((n_ca - lag) % n_ca + n_ca) % n_ca);
}

double ta_from_peak(int peak_offset_samples, int start, const DetectorConfig& cfg, const FrameGeometry& geometry)
{
    const int offset = ((peak_offset_samples - start) % cfg.n_ca + cfg.n_ca) % cfg.n_ca;
    return offset * geometry.seq_duration_s() / cfg.n_ca;
}

double sidelobe_bound(double distance, int n_ca)
{
    if (distance <= 0.0) return 1.0;
    const double s = std::sin(kPi * distance / n_ca);
    return std::min(1.0, 1.0 / (static_cast<double>(kZcLength) * kZcLength * s * s));
}

DetectionReport detect_signatures(const PowerDelayProfile& pdp, const RootContext& root, const DetectorConfig& cfg,
                                  const FrameGeometry& geometry, double threshold_relative)
{
    if (pdp.values.size() != static_cast<std::size_t>(cfg.n_ca)) throw InternalError("PDP length does not match n_ca");
    if (root.preamble_indices.size() != root.shifts.size()) throw InternalError("root context lists disagree");

    DetectionReport report;
    report.threshold_relative = threshold_relative;
    report.threshold_absolute = threshold_relative * pdp.noise_floor;

    std::vector<Detection> candidates;
    for (std::size_t i = 0; i < root.shifts.size(); ++i) {
        const int start = window_start(root.shifts[i], cfg.n_ca);
        int best = -1;
        double best_value = 0.0;
        for (int k = 0; k < cfg.search_window_samples; ++k) {
            const int t = (start + k) % cfg.n_ca;
            const double v = pdp.values[static_cast<std::size_t>(t)];
            if (best < 0 || v > best_value) {
                best = t;
                best_value = v;
            }
        }
        if (best >= 0 && best_value > report.threshold_absolute) {
            candidates.push_back({root.preamble_indices[i], best_value, best, start,
                                  ta_from_peak(best, start, cfg, geometry)});
        }
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Detection& a, const Detection& b) { return a.peak_value > b.peak_value; });
    // Only peaks that noise alone would almost never produce can mask others.
    const double masker_level = threshold_from_pfa(kMaskerPfa, pdp.n_acc, cfg.search_window_samples) * pdp.noise_floor;
    for (const auto& c : candidates) {
        double envelope = 0.0;
        for (const auto& a : report.detections) {
            if (a.peak_value <= masker_level) continue;
            const int diff = std::abs(c.peak_offset_samples - a.peak_offset_samples);
            const int circ = std::min(diff, cfg.n_ca - diff);
            envelope += cfg.leakage_margin * a.peak_value * sidelobe_bound(std::max(circ - 0.5, 0.0), cfg.n_ca);
        }
        if (c.peak_value > envelope) report.detections.push_back(c);
    }
    std::sort(report.detections.begin(), report.detections.end(),
              [](const Detection& a, const Detection& b) { return a.preamble_index < b.preamble_index; });
    return report;
}

PrachDetector::PrachDetector(int logical_root_index, int cyclic_shift_idx, const FrameGeometry& geometry,
                             const DetectorConfig& cfg, int n_rx_ants)
    : geometry_(geometry), cfg_(cfg), n_rx_ants_(n_rx_ants)
{
    validate(geometry_);
    if (n_rx_ants < 1) throw ConfigError("detector needs at least one receive antenna");
    const int n_cs = ncs_from_config(cyclic_shift_idx, false);
    validate(cfg_, n_cs);
    threshold_relative_ = threshold_from_pfa(cfg_.p_fa_target, n_rx_ants_ * cfg_.n_nca, cfg_.search_window_samples);

    for (int p = 0; p < kPreamblesPerCell; ++p) {
        const auto r = resolve_preamble({logical_root_index, p, cyclic_shift_idx, false});
        auto it = std::find_if(roots_.begin(), roots_.end(), [&](const RootContext& c) { return c.u == r.u; });
        if (it == roots_.end()) {
            roots_.push_back({r.u, n_cs, {}, {}});
            correlators_.emplace_back(r.u, geometry_, cfg_.n_ca);
            it = roots_.end() - 1;
        }
        it->preamble_indices.push_back(p);
        it->shifts.push_back(r.plan.c_v);
    }
}

int PrachDetector::window_count() const
{
    int n = 0;
    for (const auto& r : roots_) n += static_cast<int>(r.shifts.size());
    return n;
}

std::vector<PowerDelayProfile> PrachDetector::pdps(const RxSubframe& rx) const
{
    if (rx.antennas.size() != static_cast<std::size_t>(n_rx_ants_)) {
        throw InternalError("subframe antenna count does not match the detector");
    }
    const auto demapped = demap_subcarriers(remove_cp_gp(rx.antennas, geometry_), geometry_);
    std::vector<PowerDelayProfile> out;
    out.reserve(correlators_.size());
    for (const auto& corr : correlators_) {
        const auto z = corr.correlate(demapped);
        auto pdp = accumulate_pdp(z, cfg_);
        pdp.noise_floor = cfg_.noise_floor == NoiseFloorMode::genie
                              ? pdp.n_acc * static_cast<double>(cfg_.n_ca) * rx.noise_variance
                              : estimate_noise_floor(pdp.values, pdp.n_acc);
        out.push_back(std::move(pdp));
    }
    return out;
}

DetectionReport PrachDetector::detect(const RxSubframe& rx) const
{
    return detect(rx, threshold_relative_);
}

DetectionReport PrachDetector::detect(const RxSubframe& rx, double threshold_relative) const
{
    const auto profiles = pdps(rx);
    DetectionReport report;
    report.threshold_relative = threshold_relative;
    for (std::size_t r = 0; r < roots_.size(); ++r) {
        auto part = detect_signatures(profiles[r], roots_[r], cfg_, geometry_, threshold_relative);
        report.threshold_absolute = std::max(report.threshold_absolute, part.threshold_absolute);
        report.detections.insert(report.detections.end(), part.detections.begin(), part.detections.end());
    }
    if (cfg_.report == ReportMode::strongest && report.detections.size() > 1) {
        const auto best = std::max_element(report.detections.begin(), report.detections.end(),
                                           [](const Detection& a, const Detection& b) {
                                               return a.peak_value < b.peak_value;
                                           });
        report.detections = {*best};
    }
    std::sort(report.detections.begin(), report.detections.end(),
              [](const Detection& a, const Detection& b) { return a.preamble_index < b.preamble_index; });
    return report;
}

}  // namespace prach
