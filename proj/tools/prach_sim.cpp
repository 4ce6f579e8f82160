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


// prach_sim: command-line front end for CDR sweeps, false-alarm calibration,
// the observation (trend) suite and a built-in loopback self-test.

#include "prach/assets.hpp"
#include "prach/config.hpp"
#include "prach/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAssertion = 2;
constexpr int kQuickSubframes = 200;

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> subframes;
    std::string out = "results";
    bool quick = false;
    int threads = 0;
    bool serial = false;
};

prach::SweepSpec load(const CommonArgs& a)
{
    auto spec = a.config.empty() ? prach::default_spec() : prach::load_config(a.config);
    if (a.seed) spec.sweep.seed = *a.seed;
    if (a.quick) spec.sweep.subframes = kQuickSubframes;
    if (a.subframes) spec.sweep.subframes = *a.subframes;
    prach::validate(spec);
    return spec;
}

prach::RunOptions run_options(const CommonArgs& a)
{
    return {a.serial ? prach::ExecPolicy::serial : prach::ExecPolicy::parallel, a.threads};
}

int cmd_sweep(const CommonArgs& a)
{
    const auto spec = load(a);
    const auto points = prach::run_cdr_sweep(spec, run_options(a));
    const auto csv = prach::emit_results(points, a.out, "cdr");
    fmt::print("{} points written to {}\n", points.size(), csv.string());
    return kExitOk;
}

int cmd_pfa(const CommonArgs& a)
{
    const auto spec = load(a);
    const std::int64_t n = a.subframes ? *a.subframes : (a.quick ? 2000 : 20000);
    const auto r = prach::run_pfa_calibration(spec.base, n, spec.sweep.seed, run_options(a));
    const bool in_band = r.per_window_rate >= r.p_fa_target / 2 && r.per_window_rate <= 2 * r.p_fa_target;
    std::filesystem::create_directories(a.out);
    const auto path = std::filesystem::path(a.out) / "pfa.csv";
    std::ofstream out(path, std::ios::binary);
    out << "p_fa_target,threshold_relative,n_subframes,windows_per_subframe,window_detections,per_window_rate,"
           "ci_lo,ci_hi,per_subframe_rate,seed\n";
    out << fmt::format("{},{:.6f},{},{},{},{:.6g},{:.6g},{:.6g},{:.6g},{}\n", r.p_fa_target, r.threshold_relative,
                       r.n_subframes, r.windows_per_subframe, r.window_detections, r.per_window_rate,
                       r.per_window_ci.lo, r.per_window_ci.hi, r.per_subframe_rate, spec.sweep.seed);
    fmt::print("T_r = {:.4f}; per-window false alarms {}/{} = {:.3g} (95% CI {:.3g}..{:.3g}), target {} [{}]\n",
               r.threshold_relative, r.window_detections, r.n_subframes * r.windows_per_subframe, r.per_window_rate,
               r.per_window_ci.lo, r.per_window_ci.hi, r.p_fa_target, in_band ? "within [p/2, 2p]" : "OUTSIDE [p/2, 2p]");
    fmt::print("per-subframe false-alarm rate {:.3g}; written to {}\n", r.per_subframe_rate, path.string());
    return kExitOk;
}

int cmd_observe(const CommonArgs& a)
{
    const auto spec = load(a);
    prach::ObservationOptions o;
    o.n_subframes = a.subframes ? *a.subframes : (a.quick ? kQuickSubframes : 500);
    o.snr_grid = spec.sweep.target_snr_db;
    o.seed = spec.sweep.seed;
    const auto ledger = prach::run_observation_suite(spec.base, o, run_options(a));
    std::vector<prach::CdrPoint> all;
    for (const auto& c : ledger.checks) {
        fmt::print("{:<5} {:<28} {} ({})\n", c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL"), c.name,
                   c.description, c.detail);
        all.insert(all.end(), c.points.begin(), c.points.end());
    }
    const auto csv = prach::emit_results(all, a.out, "observations");
    fmt::print("curves written to {}\n", csv.string());
    return ledger.all_passed() ? kExitOk : kExitAssertion;
}

int cmd_selftest(const CommonArgs& a)
{
    auto spec = load(a);
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        fmt::print("{} {}\n", ok ? "ok  " : "FAIL", what);
        failures += ok ? 0 : 1;
    };

    for (const auto& name : prach::assets::names()) {
        bool ok = true;
        try {
            prach::assets::load(name);
        } catch (const prach::Error&) {
            ok = false;
        }
        check(ok, "asset digest " + name);
    }

    auto base = spec.base;
    base.channel.model = prach::FadingModel::ideal;
    const auto sc = prach::baseline(base);
    const prach::PrachDetector det(base.target.logical_root_index, base.target.cyclic_shift_idx, base.geometry,
                                   base.detector, base.channel.n_rx_ants);
    const auto sub = prach::synthesize_subframe(sc, 40.0, 0, spec.sweep.seed);
    const auto report = det.detect(sub.rx);
    const auto* hit = report.find(base.target.preamble_index);
    check(report.detections.size() == 1 && hit != nullptr && hit->ta_seconds == 0.0,
          fmt::format("loopback at +40 dB detects preamble {} alone with TA 0", base.target.preamble_index));

    auto delayed = base;
    delayed.target_timing_offset_samples = 3.0;
    const auto sub_d = prach::synthesize_subframe(prach::baseline(delayed), 40.0, 0, spec.sweep.seed);
    const auto* hit_d = det.detect(sub_d.rx).find(base.target.preamble_index);
    check(hit_d != nullptr && std::abs(hit_d->ta_seconds - 3.0 / base.geometry.sample_rate) <= 0.8e-3 / 1024 + 1e-12,
          "3-sample delay recovered within one PDP bin");

    return failures == 0 ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"PRACH preamble detection link-level simulator"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config, "YAML configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", args.seed, "master seed (overrides sweep.seed)");
        sub->add_option("--subframes", args.subframes, "subframes per grid point")->check(CLI::PositiveNumber);
        sub->add_option("--out", args.out, "output directory");
        sub->add_flag("--quick", args.quick, "reduced trial counts");
        sub->add_option("--threads", args.threads, "OpenMP worker count (0: default)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--serial", args.serial, "run the serial reference trial loop");
    };
    auto* sweep = app.add_subcommand("sweep", "CDR versus target SNR");
    auto* pfa = app.add_subcommand("pfa", "noise-only false-alarm calibration");
    auto* observe = app.add_subcommand("observe", "interference trend checks");
    auto* selftest = app.add_subcommand("selftest", "asset checksums and loopback detection");
    for (auto* s : {sweep, pfa, observe, selftest}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(args);
        if (pfa->parsed()) return cmd_pfa(args);
        if (observe->parsed()) return cmd_observe(args);
        if (selftest->parsed()) return cmd_selftest(args);
    } catch (const prach::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return kExitOk;
}
