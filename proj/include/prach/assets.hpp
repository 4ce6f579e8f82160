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

// Versioned data tables (root mapping, N_CS, ETU profile). The CSV files in
// data/ are compiled into the binary and verified against the SHA-256 digests
// in data/MANIFEST.sha256 before first use.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace prach::assets {

namespace detail {
struct EmbeddedAsset {
    const char* name;
    const char* content;
    const char* sha256;
};
extern const EmbeddedAsset kEmbeddedAssets[];
extern const std::size_t kEmbeddedAssetCount;
}  // namespace detail

// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

// Returns the verified contents of a named asset. Throws InternalError when
// the asset is unknown or its digest does not match the manifest entry.
std::string_view load(std::string_view name);

// Digest recorded in the manifest for `name`.
std::string_view manifest_digest(std::string_view name);

std::vector<std::string> names();

// Parses a two-column numeric CSV with a header row. `expected_header` must
// match the first line exactly.
struct CsvTable {
    std::vector<double> first;
    std::vector<double> second;
};
CsvTable parse_two_column_csv(std::string_view text, std::string_view expected_header);

}  // namespace prach::assets
