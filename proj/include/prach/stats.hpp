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

#include <cstdint>
#include <functional>
#include <span>

namespace prach::stats {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double width() const { return hi - lo; }
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for a binomial proportion.
Interval wilson(std::int64_t successes, std::int64_t trials, double z = kZ95);

bool overlap(const Interval& a, const Interval& b);

// Two-sided one-sample Kolmogorov-Smirnov statistic sup|F_n - F|.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

// Asymptotic p-value of a KS statistic d on n samples (Stephens' small-sample
// adjustment of the Kolmogorov distribution).
double ks_pvalue(double d, std::size_t n);

// CDF of |g| for g ~ CN(0, mean_power).
double rayleigh_cdf(double r, double mean_power);

}  // namespace prach::stats
