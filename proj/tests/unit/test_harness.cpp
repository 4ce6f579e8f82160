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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <fstream>
#include <sstream>

using namespace prach;

namespace {

CdrPoint point(double snr, std::int64_t correct, std::int64_t n = 1000)
{
    CdrPoint p;
    p.target_snr_db = snr;
    p.n_trials = n;
    p.n_correct = correct;
    p.cdr = double(correct) / double(n);
    p.ci = stats::wilson(correct, n);
    return p;
}

Detection det(int idx, double ta)
{
    Detection d;
    d.preamble_index = idx;
    d.ta_seconds = ta;
    return d;
}

}  // namespace

TEST_CASE("scoring")
{
    GroundTruth truth{32, 0.0, {{32, 0.0}, {0, 1e-6}}};
    DetectionReport r;
    CHECK_FALSE(score(r, truth, 1.04e-6).correct);

    r.detections = {det(32, 1.0e-6)};
    CHECK(score(r, truth, 1.04e-6).correct);
    r.detections = {det(32, 1.1e-6)};
    auto o = score(r, truth, 1.04e-6);
    CHECK_FALSE(o.correct);
    CHECK(o.n_false == 1);

    // An in-cell interferer detected at its own TA is not a false alarm.
    r.detections = {det(32, 0.0), det(0, 1.5e-6), det(5, 0.0)};
    o = score(r, truth, 1.04e-6);
    CHECK(o.correct);
    CHECK(o.n_false == 1);
}

TEST_CASE("trend check")
{
    std::vector<CdrPoint> weak{point(-20, 300), point(-16, 700), point(-12, 950)};
    std::vector<CdrPoint> strong{point(-20, 290), point(-16, 500), point(-12, 948)};
    auto t = check_non_increasing(weak, strong);
    CHECK(t.passed);
    CHECK(t.significant_drops == 1);
    CHECK(t.violations == 0);

    // No drop at all: fails for want of evidence.
    t = check_non_increasing(weak, weak);
    CHECK_FALSE(t.passed);
    CHECK(t.significant_drops == 0);

    // Stronger interference significantly better: violation.
    strong[0] = point(-20, 500);
    t = check_non_increasing(weak, strong);
    CHECK_FALSE(t.passed);
    CHECK(t.violations == 1);

    // Saturated points are exempt from violations.
    std::vector<CdrPoint> sat_w{point(-10, 1000, 1000000)}, sat_s{point(-10, 1000, 1000)};
    sat_w[0].n_correct = 999999;
    sat_w[0].cdr = 0.999999;
    sat_w[0].ci = stats::wilson(999999, 1000000);
    sat_s[0].cdr = 1.0;
    CHECK(check_non_increasing(sat_w, sat_s).violations == 0);

    std::vector<CdrPoint> shorter{point(-20, 1)};
    CHECK_THROWS_AS(check_non_increasing(weak, shorter), InternalError);
}

TEST_CASE("spread check")
{
    std::vector<std::vector<CdrPoint>> curves{{point(-20, 500), point(-10, 900)},
                                              {point(-20, 520), point(-10, 905)}};
    auto s = check_spread(curves);
    CHECK(s.passed);
    CHECK(s.worst_spread <= s.worst_allowed);
    curves.push_back({point(-20, 700), point(-10, 900)});
    s = check_spread(curves);
    CHECK_FALSE(s.passed);
    CHECK(s.worst_snr_db == -20.0);
    CHECK(check_spread({}).passed);
}

TEST_CASE("CSV layout")
{
    const std::string header =
        "scenario_kind,target_snr_db,interferer_snr_db,interferer_param,n_trials,n_correct,cdr,ci_lo,ci_hi,n_false,seed\n";
    CHECK(format_csv({}) == header);

    CdrPoint p = point(-20, 50, 100);
    p.scenario_kind = "intra_cell";
    p.interferer_snr_db = -27.0;
    p.interferer_param = "preamble=0";
    p.n_false = 2;
    p.seed = 7;
    const std::vector<CdrPoint> pts{p};
    const auto csv = format_csv(pts);
    CHECK(csv == header + "intra_cell,-20,-27,preamble=0,100,50,0.500000,0.403832,0.596168,2,7\n");

    CdrPoint q = point(-12.5, 1, 4);
    const std::vector<CdrPoint> one{q};
    CHECK(format_csv(one) == header + "none,-12.5,,,4,1,0.250000,0.045587,0.699358,0,0\n");
}

TEST_CASE("plot script and result files")
{
    CdrPoint p = point(-20, 50, 100);
    p.interferer_param = "it's";
    const std::vector<CdrPoint> pts{p};
    const auto script = plot_script(pts, "my run");
    CHECK(script.find("POINTS = [") != std::string::npos);
    CHECK(script.find("TITLE = 'my run'") != std::string::npos);
    CHECK(script.find("'it\\'s'") != std::string::npos);
    CHECK(script.find("matplotlib.use(\"Agg\")") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / "prach_harness_test";
    std::filesystem::remove_all(dir);
    const auto csv = emit_results(pts, dir, "x");
    CHECK(csv == dir / "x.csv");
    CHECK(std::filesystem::exists(dir / "plot_x.py"));
    std::ifstream in(csv);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == format_csv(pts));
    std::filesystem::remove_all(dir);
}

TEST_CASE("curve construction")
{
    auto spec = default_spec();
    CHECK(build_curves(spec).size() == 1u);

    spec.sweep.scenario = ScenarioKind::intra_cell;
    spec.sweep.interferer_preamble_indices = {0, 37};
    auto curves = build_curves(spec);
    CHECK(curves.size() == 6u);
    CHECK(curves[1].interferer_param == "preamble=37");
    CHECK(*curves[1].interferer_snr_db == -27.0);

    spec.sweep.simultaneous = true;
    curves = build_curves(spec);
    CHECK(curves.size() == 3u);
    CHECK(curves[0].interferer_param == "preamble=0+37");
    CHECK(curves[0].scenario.interferers.size() == 2u);

    spec.sweep.scenario = ScenarioKind::inter_cell;
    spec.sweep.simultaneous = false;
    spec.sweep.interferer_root_indices = {0, 4};
    curves = build_curves(spec);
    CHECK(curves.size() == 6u);
    CHECK(curves[5].interferer_param == "root=4");

    spec.sweep.scenario = ScenarioKind::mixed;
    CHECK_THROWS_AS(build_curves(spec), UnsupportedError);
}

TEST_CASE("a small sweep is identical under every execution policy")
{
    auto spec = default_spec();
    spec.sweep.scenario = ScenarioKind::inter_cell;
    spec.sweep.interferer_snr_db = {-9.0};
    spec.sweep.target_snr_db = {-20.0, -14.0};
    spec.sweep.subframes = 24;
    const auto serial = format_csv(run_cdr_sweep(spec, {ExecPolicy::serial, 0}));
    CHECK(format_csv(run_cdr_sweep(spec, {ExecPolicy::parallel, 1})) == serial);
    CHECK(format_csv(run_cdr_sweep(spec, {ExecPolicy::parallel, 3})) == serial);
    const auto points = run_cdr_sweep(spec, {ExecPolicy::serial, 0});
    REQUIRE(points.size() == 2u);
    CHECK(points[0].scenario_kind == "inter_cell");
    CHECK(points[0].n_trials == 24);
    CHECK(points[1].cdr >= 0.0);
}

TEST_CASE("false-alarm calibration bookkeeping")
{
    const auto r = run_pfa_calibration(default_base_config(), 200, 3, {ExecPolicy::serial, 0});
    CHECK(r.n_subframes == 200);
    CHECK(r.windows_per_subframe == 64);
    CHECK(r.per_window_rate == doctest::Approx(double(r.window_detections) / (200.0 * 64.0)));
    CHECK(r.threshold_relative == doctest::Approx(threshold_from_pfa(1e-3, 2, 15)));
    CHECK(r.subframes_with_detection <= r.window_detections);

    const auto none = run_pfa_calibration(default_base_config(), 50, 3, {}, 1e9);
    CHECK(none.window_detections == 0);
    const auto all = run_pfa_calibration(default_base_config(), 20, 3, {}, 0.0);
    CHECK(all.subframes_with_detection == 20);
    CHECK(all.window_detections == 20 * 64);
}

TEST_CASE("CI width shrinks as one over the square root of the trial count")
{
    for (double cdr : {0.1, 0.5, 0.9}) {
        for (std::int64_t n : {250, 1000}) {
            const auto a = stats::wilson(std::llround(cdr * n), n).width();
            const auto b = stats::wilson(std::llround(cdr * 2 * n), 2 * n).width();
            const auto c = stats::wilson(std::llround(cdr * 4 * n), 4 * n).width();
            CHECK(b / a == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
            CHECK(c / a == doctest::Approx(0.5).epsilon(0.2));
        }
    }
}

TEST_CASE("noiseless-regime and noise-dominated sweep points")
{
    auto spec = default_spec();
    spec.base.channel.model = FadingModel::ideal;
    spec.sweep.target_snr_db = {40.0};
    spec.sweep.subframes = 100;
    const auto high = run_cdr_sweep(spec);
    REQUIRE(high.size() == 1u);
    CHECK(high[0].cdr == 1.0);
    CHECK(high[0].n_false == 0);

    // At -40 dB under fading only noise can hit the target window within the
    // TA bound: about p_fa * 2 / 15 per subframe.
    spec = default_spec();
    spec.sweep.target_snr_db = {-40.0};
    spec.sweep.subframes = 300;
    const auto low = run_cdr_sweep(spec);
    const double expected = 1e-3 * 2.0 / 15.0;
    CHECK(low[0].ci.lo <= expected);
    CHECK(low[0].ci.hi >= expected);
}

TEST_CASE("a sweep over several interferer levels emits one curve per level")
{
    auto spec = default_spec();
    spec.sweep.scenario = ScenarioKind::intra_cell;
    spec.sweep.subframes = 2;
    const auto csv = format_csv(run_cdr_sweep(spec));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::set<std::string> levels;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const auto a = line.find(',', line.find(',') + 1);
        levels.insert(line.substr(a + 1, line.find(',', a + 1) - a - 1));
    }
    CHECK(rows == 33);
    CHECK(levels == std::set<std::string>{"-27", "-23", "-17"});
}
