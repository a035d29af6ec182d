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

#include "pqw/report.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "pqw/simulate.hpp"

namespace pqw {

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json report_envelope(const nlohmann::json& config, const nlohmann::json& result) {
  return {{"schema", kReportSchema}, {"config", config}, {"config_hash", hex64(fnv1a64(config.dump()))}, {"result", result}};
}

namespace {

std::string csv_cell(const nlohmann::json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string csv_table(const nlohmann::json& rows) {
  std::vector<std::string> header;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_cell(header[i]);
  if (!header.empty()) out += "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out += ",";
      if (row.contains(header[i])) out += csv_cell(row.at(header[i]));
    }
    out += "\n";
  }
  return out;
}

}  // namespace pqw
