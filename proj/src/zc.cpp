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


#include "prach/zc.hpp"

#include "prach/assets.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace prach {

namespace {

struct RootTables {
    std::vector<int> logical_to_u;
    std::vector<int> ncs;
};

const RootTables& tables()
{
    static const RootTables t = [] {
        RootTables out;
        const auto mapping = assets::parse_two_column_csv(assets::load("root_mapping_format0.csv"),
                                                          "logical_index,physical_u");
        for (std::size_t i = 0; i < mapping.first.size(); ++i) {
            if (static_cast<int>(mapping.first[i]) != static_cast<int>(i)) {
                throw InternalError("root_mapping_format0.csv rows out of order");
            }
            out.logical_to_u.push_back(static_cast<int>(mapping.second[i]));
        }
        if (out.logical_to_u.size() != kMaxLogicalRoot + 1) {
            throw InternalError("root_mapping_format0.csv must have 838 rows");
        }
        const auto ncs = assets::parse_two_column_csv(assets::load("ncs_unrestricted.csv"), "cyclic_shift_idx,n_cs");
        for (std::size_t i = 0; i < ncs.first.size(); ++i) {
            if (static_cast<int>(ncs.first[i]) != static_cast<int>(i)) {
                throw InternalError("ncs_unrestricted.csv rows out of order");
            }
            out.ncs.push_back(static_cast<int>(ncs.second[i]));
        }
        return out;
    }();
    return t;
}

}  // namespace

bool is_prime(int n)
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

ZcRootSequence generate_root_sequence(int u, int n_zc)
{
    if (!is_prime(n_zc)) throw ConfigError("ZC length " + std::to_string(n_zc) + " is not prime");
    if (u <= 0 || u >= n_zc) {
        throw ConfigError("ZC root " + std::to_string(u) + " outside (0, " + std::to_string(n_zc) + ")");
    }

    ZcRootSequence seq{u, n_zc, ComplexSequence(static_cast<std::size_t>(n_zc))};
    // Reduce u*n*(n+1) modulo 2*n_zc in integers so the phase stays exact for
    // large n.
    const std::int64_t period = 2 * static_cast<std::int64_t>(n_zc);
    for (std::int64_t n = 0; n < n_zc; ++n) {
        const std::int64_t m = (static_cast<std::int64_t>(u) * ((n * (n + 1)) % period)) % period;
        const double phase = -kPi * static_cast<double>(m) / n_zc;
        seq.samples[static_cast<std::size_t>(n)] = {std::cos(phase), std::sin(phase)};
    }
    return seq;
}

ComplexSequence cyclic_shift(const ZcRootSequence& seq, int c_v)
{
    if (c_v < 0 || c_v >= seq.n_zc) {
        throw ConfigError("cyclic shift " + std::to_string(c_v) + " outside [0, " + std::to_string(seq.n_zc) + ")");
    }
    if (seq.samples.size() != static_cast<std::size_t>(seq.n_zc)) {
        throw InternalError("ZC sequence length does not match n_zc");
    }
    ComplexSequence out(seq.samples.size());
    const auto n_zc = static_cast<std::size_t>(seq.n_zc);
    for (std::size_t n = 0; n < n_zc; ++n) out[n] = seq.samples[(n + static_cast<std::size_t>(c_v)) % n_zc];
    return out;
}

int ncs_from_config(int cyclic_shift_idx, bool high_speed)
{
    if (high_speed) throw UnsupportedError("restricted (high-speed) cyclic shift sets are not modeled");
    const auto& ncs = tables().ncs;
    if (cyclic_shift_idx < 0 || cyclic_shift_idx >= static_cast<int>(ncs.size())) {
        throw ConfigError("cyclic shift index " + std::to_string(cyclic_shift_idx) + " outside [0, " +
                          std::to_string(ncs.size() - 1) + "]");
    }
    return ncs[static_cast<std::size_t>(cyclic_shift_idx)];
}

int logical_to_physical_root(int logical_index)
{
    if (logical_index < 0 || logical_index > kMaxLogicalRoot) {
        throw ConfigError("logical root index " + std::to_string(logical_index) + " outside [0, 837]");
    }
    return tables().logical_to_u[static_cast<std::size_t>(logical_index)];
}

int shifts_per_root(int n_cs, int n_zc)
{
    return n_cs == 0 ? 1 : n_zc / n_cs;
}

void validate(const PreambleIdentity& identity)
{
    if (identity.high_speed) throw UnsupportedError("restricted (high-speed) cyclic shift sets are not modeled");
    if (identity.preamble_index < 0 || identity.preamble_index >= kPreamblesPerCell) {
        throw ConfigError("preamble index " + std::to_string(identity.preamble_index) + " outside [0, 63]");
    }
    if (identity.logical_root_index < 0 || identity.logical_root_index > kMaxLogicalRoot) {
        throw ConfigError("logical root index " + std::to_string(identity.logical_root_index) +
                          " outside [0, 837]");
    }
    ncs_from_config(identity.cyclic_shift_idx, identity.high_speed);
}

ResolvedPreamble resolve_preamble(const PreambleIdentity& identity)
{
    validate(identity);
    const int n_cs = ncs_from_config(identity.cyclic_shift_idx, identity.high_speed);
    const int per_root = shifts_per_root(n_cs);
    ShiftPlan plan;
    plan.n_cs = n_cs;
    plan.v = identity.preamble_index % per_root;
    plan.root_hop = identity.preamble_index / per_root;
    plan.c_v = plan.v * n_cs;
    const int logical = identity.logical_root_index + plan.root_hop;
    if (logical > kMaxLogicalRoot) {
        throw ConfigError("preamble " + std::to_string(identity.preamble_index) + " needs logical root " +
                          std::to_string(logical) + ", beyond 837");
    }
    return {logical_to_physical_root(logical), plan};
}

}  // namespace prach
