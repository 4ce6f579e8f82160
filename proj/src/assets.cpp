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


#include "prach/assets.hpp"

#include "prach/common.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <mutex>
#include <set>

namespace prach::assets {

namespace {

const detail::EmbeddedAsset* find(std::string_view name)
{
    for (std::size_t i = 0; i < detail::kEmbeddedAssetCount; ++i) {
        if (name == detail::kEmbeddedAssets[i].name) return &detail::kEmbeddedAssets[i];
    }
    return nullptr;
}

double parse_number(std::string_view field, std::string_view context)
{
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw InternalError("malformed number '" + std::string(field) + "' in " + std::string(context));
    }
    return value;
}

}  // namespace

std::string sha256_hex(std::string_view bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw InternalError("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string_view load(std::string_view name)
{
    const auto* asset = find(name);
    if (asset == nullptr) throw InternalError("unknown data asset '" + std::string(name) + "'");

    static std::mutex mutex;
    static std::set<std::string, std::less<>> verified;
    std::lock_guard lock(mutex);
    if (!verified.contains(name)) {
        const auto actual = sha256_hex(asset->content);
        if (actual != asset->sha256) {
            throw InternalError("data asset '" + std::string(name) + "' failed checksum: expected " +
                                asset->sha256 + ", got " + actual);
        }
        verified.emplace(name);
    }
    return asset->content;
}

std::string_view manifest_digest(std::string_view name)
{
    const auto* asset = find(name);
    if (asset == nullptr) throw InternalError("unknown data asset '" + std::string(name) + "'");
    return asset->sha256;
}

std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kEmbeddedAssetCount; ++i) out.emplace_back(detail::kEmbeddedAssets[i].name);
    return out;
}

CsvTable parse_two_column_csv(std::string_view text, std::string_view expected_header)
{
    CsvTable table;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != expected_header) {
                throw InternalError("unexpected CSV header '" + std::string(line) + "', wanted '" +
                                    std::string(expected_header) + "'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw InternalError("expected two CSV fields in '" + std::string(line) + "'");
        }
        table.first.push_back(parse_number(line.substr(0, comma), expected_header));
        table.second.push_back(parse_number(line.substr(comma + 1), expected_header));
    }
    if (!header_seen) throw InternalError("empty CSV asset");
    return table;
}

}  // namespace prach::assets
