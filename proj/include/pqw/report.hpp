// Copyright 2026 The pqwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQW_REPORT_HPP
#define PQW_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace pqw {

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t v);

// {"schema", "config", "config_hash", "result"}; the hash covers the
// compact dump of `config`, whose keys nlohmann orders lexicographically.
nlohmann::json report_envelope(const nlohmann::json& config, const nlohmann::json& result);

// Rows are flat objects; the header is the union of keys in first-seen
// order. Nested values are written as compact JSON.
std::string csv_table(const nlohmann::json& rows);

}  // namespace pqw

#endif  // PQW_REPORT_HPP
