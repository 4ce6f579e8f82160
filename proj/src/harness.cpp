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


#include "prach/harness.hpp"

#include "prach/seeds.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

namespace prach {

TrialOutcome score(const DetectionReport& report, const GroundTruth& truth, double ta_tolerance_s)
{
    TrialOutcome out;
    auto matches = [&](const Detection& d, const CellTransmission& ue) {
        return d.preamble_index == ue.preamble_index && std::abs(d.ta_seconds - ue.ta_true_s) <= ta_tolerance_s;
    };
    for (const auto& d : report.detections) {
        if (matches(d, {truth.preamble_index, truth.ta_true_s})) out.correct = true;
        const bool known = std::any_of(truth.cell_ues.begin(), truth.cell_ues.end(),
                                       [&](const CellTransmission& ue) { return matches(d, ue); });
        if (!known) ++out.n_false;
    }
    return out;
}

namespace {

std::string join_param(const char* key, std::span<const int> values)
{
    std::string s = std::string(key) + "=";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "+" : "") + std::to_string(values[i]);
    return s;
}

}  // namespace

std::vector<Curve> build_curves(const SweepSpec& spec)
{
    const auto& b = spec.base;
    const auto& s = spec.sweep;
    std::vector<Curve> curves;
    switch (s.scenario) {
    case ScenarioKind::none:
        curves.push_back({baseline(b), std::nullopt, ""});
        break;
    case ScenarioKind::intra_cell:
        for (double lvl : s.interferer_snr_db) {
            if (s.simultaneous) {
                curves.push_back({make_intra_cell(b.target, s.interferer_preamble_indices, lvl, b), lvl,
                                  join_param("preamble", s.interferer_preamble_indices)});
                continue;
            }
            for (int idx : s.interferer_preamble_indices) {
                const int one[] = {idx};
                curves.push_back({make_intra_cell(b.target, one, lvl, b), lvl, join_param("preamble", one)});
            }
        }
        break;
    case ScenarioKind::inter_cell:
        for (double lvl : s.interferer_snr_db) {
            if (s.simultaneous) {
                curves.push_back({make_inter_cell(b.target, s.interferer_root_indices, s.interferer_preamble_index, lvl, b),
                                  lvl, join_param("root", s.interferer_root_indices)});
                continue;
            }
            for (int root : s.interferer_root_indices) {
                const int one[] = {root};
                curves.push_back(
                    {make_inter_cell(b.target, one, s.interferer_preamble_index, lvl, b), lvl, join_param("root", one)});
            }
        }
        break;
    case ScenarioKind::mixed:
        throw UnsupportedError("mixed-interference sweeps are not modeled");
    }
    return curves;
}

std::vector<CdrPoint> run_curve(const Curve& curve, std::span<const double> snr_grid, int n_subframes,
                                std::uint64_t master_seed, const RunOptions& options)
{
    const auto& sc = curve.scenario;
    validate(sc);
    const PrachDetector detector(sc.target.identity.logical_root_index, sc.target.identity.cyclic_shift_idx,
                                 sc.geometry, sc.detector, sc.target.channel.n_rx_ants);
    std::vector<CdrPoint> points;
    for (double snr : snr_grid) {
        const auto outcomes = run_trials<TrialOutcome>(
            n_subframes,
            [&](std::int64_t trial) {
                const auto sub = synthesize_subframe(sc, snr, trial, master_seed);
                return score(detector.detect(sub.rx), sub.truth, sc.detector.ta_tolerance_s);
            },
            options);
        CdrPoint p;
        p.scenario_kind = to_string(sc.kind);
        p.target_snr_db = snr;
        p.interferer_snr_db = curve.interferer_snr_db;
        p.interferer_param = curve.interferer_param;
        p.n_trials = n_subframes;
        for (const auto& o : outcomes) {
            p.n_correct += o.correct ? 1 : 0;
            p.n_false += o.n_false;
        }
        p.cdr = static_cast<double>(p.n_correct) / static_cast<double>(p.n_trials);
        p.ci = stats::wilson(p.n_correct, p.n_trials);
        p.seed = master_seed;
        points.push_back(p);
    }
    return points;
}

std::vector<CdrPoint> run_cdr_sweep(const SweepSpec& spec, const RunOptions& options)
{
    validate(spec);
    std::vector<CdrPoint> all;
    for (const auto& curve : build_curves(spec)) {
        auto pts = run_curve(curve, spec.sweep.target_snr_db, spec.sweep.subframes, spec.sweep.seed, options);
        all.insert(all.end(), pts.begin(), pts.end());
    }
    return all;
}

PfaResult run_pfa_calibration(const BaseConfig& base, std::int64_t n_subframes, std::uint64_t seed,
                              const RunOptions& options, std::optional<double> threshold_relative)
{
    if (n_subframes < 1) throw ConfigError("p_fa calibration needs at least one subframe");
    const auto& id = base.target;
    const PrachDetector detector(id.logical_root_index, id.cyclic_shift_idx, base.geometry, base.detector,
                                 base.channel.n_rx_ants);
    const double tr = threshold_relative.value_or(detector.threshold_relative());
    const auto counts = run_trials<int>(
        n_subframes,
        [&](std::int64_t i) {
            const auto rx = mix_and_add_noise({}, base.channel.n_rx_ants, base.geometry,
                                              seeds::derive(seed, static_cast<std::uint64_t>(i)));
            return static_cast<int>(detector.detect(rx, tr).detections.size());
        },
        options);

    PfaResult r;
    r.n_subframes = n_subframes;
    r.windows_per_subframe = detector.window_count();
    r.p_fa_target = base.detector.p_fa_target;
    r.threshold_relative = tr;
    for (int c : counts) {
        r.window_detections += c;
        r.subframes_with_detection += c > 0 ? 1 : 0;
    }
    const std::int64_t windows = n_subframes * r.windows_per_subframe;
    r.per_window_rate = static_cast<double>(r.window_detections) / static_cast<double>(windows);
    r.per_window_ci = stats::wilson(r.window_detections, windows);
    r.per_subframe_rate = static_cast<double>(r.subframes_with_detection) / static_cast<double>(n_subframes);
    r.per_subframe_ci = stats::wilson(r.subframes_with_detection, n_subframes);
    return r;
}

TrendCheck check_non_increasing(std::span<const CdrPoint> weaker, std::span<const CdrPoint> stronger,
                                double saturation)
{
    if (weaker.size() != stronger.size()) throw InternalError("trend check: curves differ in length");
    TrendCheck t;
    for (std::size_t i = 0; i < weaker.size(); ++i) {
        const auto& w = weaker[i];
        const auto& s = stronger[i];
        if (w.target_snr_db != s.target_snr_db) throw InternalError("trend check: grids differ");
        const bool disjoint = !stats::overlap(w.ci, s.ci);
        if (w.cdr < saturation && s.cdr > w.cdr && disjoint) {
            ++t.violations;
            t.detail += fmt::format("violation at {} dB: {:.3f} -> {:.3f}; ", w.target_snr_db, w.cdr, s.cdr);
        }
        if (w.cdr > s.cdr && disjoint) ++t.significant_drops;
    }
    t.passed = t.violations == 0 && t.significant_drops >= 1;
    t.detail += fmt::format("{} violations, {} significant drops", t.violations, t.significant_drops);
    return t;
}

SpreadCheck check_spread(const std::vector<std::vector<CdrPoint>>& curves)
{
    SpreadCheck s;
    s.passed = true;
    if (curves.empty()) return s;
    const auto n_points = curves.front().size();
    double worst_margin = -1e300;
    for (std::size_t i = 0; i < n_points; ++i) {
        double lo = 1.0, hi = 0.0, sum = 0.0;
        std::int64_t n = 0;
        for (const auto& c : curves) {
            if (c.size() != n_points) throw InternalError("spread check: curves differ in length");
            lo = std::min(lo, c[i].cdr);
            hi = std::max(hi, c[i].cdr);
            sum += c[i].cdr;
            n = c[i].n_trials;
        }
        const double pooled = sum / static_cast<double>(curves.size());
        const auto successes = static_cast<std::int64_t>(std::llround(pooled * static_cast<double>(n)));
        const double allowed = stats::wilson(successes, n).width();
        const double spread = hi - lo;
        if (spread > allowed) s.passed = false;
        if (spread - allowed > worst_margin) {
            worst_margin = spread - allowed;
            s.worst_spread = spread;
            s.worst_allowed = allowed;
            s.worst_snr_db = curves.front()[i].target_snr_db;
        }
    }
    s.detail = fmt::format("worst spread {:.3f} vs allowed {:.3f} at {} dB", s.worst_spread, s.worst_allowed,
                           s.worst_snr_db);
    return s;
}

bool ObservationLedger::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ObservationCheck& c) { return c.informational || c.passed; });
}

namespace {

std::vector<CdrPoint> intra_curve(const BaseConfig& b, int index, double level, const ObservationOptions& o,
                                  const RunOptions& run)
{
    const int one[] = {index};
    const Curve c{make_intra_cell(b.target, one, level, b), level, join_param("preamble", one)};
    return run_curve(c, o.snr_grid, o.n_subframes, o.seed, run);
}

std::vector<CdrPoint> inter_curve(const BaseConfig& b, int root, int preamble, double level,
                                  const ObservationOptions& o, const RunOptions& run)
{
    const int one[] = {root};
    const Curve c{make_inter_cell(b.target, one, preamble, level, b), level, join_param("root", one)};
    return run_curve(c, o.snr_grid, o.n_subframes, o.seed, run);
}

void append(std::vector<CdrPoint>& dst, const std::vector<CdrPoint>& src)
{
    dst.insert(dst.end(), src.begin(), src.end());
}

ObservationCheck trend(const std::string& name, const std::string& what, const std::vector<CdrPoint>& weaker,
                       const std::vector<CdrPoint>& stronger)
{
    const auto t = check_non_increasing(weaker, stronger);
    ObservationCheck c{name, what, false, t.passed, t.detail, {}};
    append(c.points, weaker);
    append(c.points, stronger);
    return c;
}

ObservationCheck spread(const std::string& name, const std::string& what, bool informational,
                        const std::vector<std::vector<CdrPoint>>& curves)
{
    const auto s = check_spread(curves);
    ObservationCheck c{name, what, informational, s.passed, s.detail, {}};
    for (const auto& cv : curves) append(c.points, cv);
    return c;
}

}  // namespace

ObservationLedger run_observation_suite(const BaseConfig& base, const ObservationOptions& options,
                                        const RunOptions& run)
{
    ObservationOptions o = options;
    if (o.snr_grid.empty()) o.snr_grid = default_target_snr_grid();
    ObservationLedger ledger;
    const int intra_indices[] = {0, 3, 37, 42, 63};
    const int inter_roots[] = {0, 1, 2, 3, 4};
    constexpr int inter_preamble = 3;

    // Intra-cell level trend, per interferer preamble index.
    std::map<int, std::vector<CdrPoint>> intra_low;
    for (int idx : {0, 37}) {
        intra_low[idx] = intra_curve(base, idx, -27.0, o, run);
        const auto high = intra_curve(base, idx, -17.0, o, run);
        ledger.checks.push_back(trend("intra_level_trend_p" + std::to_string(idx),
                                      fmt::format("intra-cell preamble {}: CDR at -17 dB <= CDR at -27 dB", idx),
                                      intra_low[idx], high));
    }

    // Insensitivity to the interferer's identity at low interference.
    std::vector<std::vector<CdrPoint>> by_index;
    for (int idx : intra_indices) {
        by_index.push_back(intra_low.count(idx) ? intra_low[idx] : intra_curve(base, idx, -27.0, o, run));
    }
    ledger.checks.push_back(spread("intra_index_insensitivity",
                                   "intra-cell -27 dB: CDR spread across preamble indices within pooled CI", false,
                                   by_index));

    std::map<int, std::vector<CdrPoint>> inter_low;
    std::vector<std::vector<CdrPoint>> by_root;
    for (int root : inter_roots) {
        inter_low[root] = inter_curve(base, root, inter_preamble, -24.0, o, run);
        by_root.push_back(inter_low[root]);
    }
    ledger.checks.push_back(spread("inter_root_insensitivity",
                                   "inter-cell -24 dB: CDR spread across root indices within pooled CI", false,
                                   by_root));

    // Inter-cell level trend, per interferer root.
    std::map<int, std::vector<CdrPoint>> inter_high;
    for (int root : {0, 4}) {
        inter_high[root] = inter_curve(base, root, inter_preamble, -9.0, o, run);
        ledger.checks.push_back(trend("inter_level_trend_r" + std::to_string(root),
                                      fmt::format("inter-cell root {}: CDR at -9 dB <= CDR at -24 dB", root),
                                      inter_low[root], inter_high[root]));
    }

    if (o.informational) {
        std::vector<std::vector<CdrPoint>> moderate;
        for (int idx : intra_indices) moderate.push_back(intra_curve(base, idx, -23.0, o, run));
        ledger.checks.push_back(spread("intra_index_sensitivity",
                                       "intra-cell -23 dB: CDR spread across preamble indices (informational)", true,
                                       moderate));
        std::vector<std::vector<CdrPoint>> strong;
        for (int root : inter_roots) {
            strong.push_back(inter_high.count(root) ? inter_high[root]
                                                    : inter_curve(base, root, inter_preamble, -9.0, o, run));
        }
        ledger.checks.push_back(spread("inter_root_sensitivity",
                                       "inter-cell -9 dB: CDR spread across root indices (informational)", true,
                                       strong));
    }
    return ledger;
}

std::string format_csv(std::span<const CdrPoint> points)
{
    std::string out = "scenario_kind,target_snr_db,interferer_snr_db,interferer_param,n_trials,n_correct,cdr,ci_lo,"
                      "ci_hi,n_false,seed\n";
    for (const auto& p : points) {
        out += fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{},{}\n", p.scenario_kind, p.target_snr_db,
                           p.interferer_snr_db ? fmt::format("{}", *p.interferer_snr_db) : std::string(),
                           p.interferer_param, p.n_trials, p.n_correct, p.cdr, p.ci.lo, p.ci.hi, p.n_false, p.seed);
    }
    return out;
}

namespace {

std::string py_str(const std::string& text)
{
    std::string out = "'";
    for (char ch : text) {
        if (ch == '\\' || ch == '\'') out += '\\';
        out += ch;
    }
    return out + "'";
}

}  // namespace

std::string plot_script(std::span<const CdrPoint> points, const std::string& title)
{
    std::string rows;
    for (const auto& p : points) {
        rows += fmt::format("    ({}, {}, {}, {}, {:.6f}, {:.6f}, {:.6f}),\n", py_str(p.scenario_kind),
                            p.target_snr_db,
                            p.interferer_snr_db ? fmt::format("{}", *p.interferer_snr_db) : std::string("None"),
                            py_str(p.interferer_param), p.cdr, p.ci.lo, p.ci.hi);
    }
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "# CDR versus target SNR, one curve per interference setting.\n";
    s += "import sys\nfrom collections import OrderedDict\n\n";
    s += "import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n";
    s += "TITLE = " + py_str(title) + "\n";
    s += "# (scenario, target_snr_db, interferer_snr_db, interferer_param, cdr, ci_lo, ci_hi)\n";
    s += "POINTS = [\n" + rows + "]\n\n";
    s += R"(
def curves():
    out = OrderedDict()
    for kind, snr, isnr, param, cdr, lo, hi in POINTS:
        if kind == "none":
            label = "no interferer"
        else:
            label = f"{kind} I-UE {isnr:g} dB {param}"
        out.setdefault(label, []).append((snr, cdr, lo, hi))
    return out


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else __file__.rsplit(".", 1)[0] + ".png"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, pts in curves().items():
        pts.sort()
        x = [p[0] for p in pts]
        y = [p[1] for p in pts]
        err = [[p[1] - p[2] for p in pts], [p[3] - p[1] for p in pts]]
        ax.errorbar(x, y, yerr=err, marker="o", ms=3, capsize=2, label=label)
    ax.set_xlabel("SNRdB [T-UE]")
    ax.set_ylabel("Correct detection rate")
    ax.set_ylim(0, 1.02)
    ax.grid(True, alpha=0.3)
    ax.set_title(TITLE)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    print(path)


if __name__ == "__main__":
    main()
)";
    return s;
}

std::filesystem::path emit_results(std::span<const CdrPoint> points, const std::filesystem::path& dir,
                                   const std::string& stem)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path.string() + " for writing");
        out << text;
        if (!out) throw Error("write failed for " + path.string());
    };
    const auto csv = dir / (stem + ".csv");
    write(csv, format_csv(points));
    write(dir / ("plot_" + stem + ".py"), plot_script(points, stem));
    return csv;
}

}  // namespace prach
