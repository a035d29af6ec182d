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

#include "pqw/paths.hpp"

#include <set>
#include <tuple>

namespace pqw {

PathTable enumerate_paths(const HamiltonianSpec& spec, uint64_t j0, int r, bool rescaled, uint64_t cap) {
  if (r < 0) throw InvalidInput("enumerate_paths: r must be >= 0");
  if (j0 >= spec.N()) throw InvalidInput("enumerate_paths: j0 out of range");
  const uint64_t branch = static_cast<uint64_t>(spec.m()) * static_cast<uint64_t>(spec.d());
  uint64_t total = 1;
  for (int s = 0; s < r; ++s) {
    if (total > cap / branch) throw CapExceeded("enumerate_paths: (md)^r above the enumeration cap");
    total *= branch;
  }
  PathTable out;
  out.j0 = j0;
  out.r = r;
  // Neighbour lists may repeat a column across t; a path is identified by (w, j).
  std::set<std::pair<std::vector<int>, std::vector<uint64_t>>> seen;
  std::vector<int> w(r);
  std::vector<uint64_t> t(r);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t x = idx;
    for (int s = 0; s < r; ++s) {
      t[s] = x % static_cast<uint64_t>(spec.d());
      x /= static_cast<uint64_t>(spec.d());
      w[s] = static_cast<int>(x % static_cast<uint64_t>(spec.m()));
      x /= static_cast<uint64_t>(spec.m());
    }
    std::vector<uint64_t> j{j0};
    for (int s = 0; s < r; ++s) j.push_back(spec.neighbor(w[s], j[s], t[s]));
    if (!seen.insert({w, j}).second) continue;
    PathEntry e{w, j, 1.0, 1.0};
    for (int s = 0; s < r; ++s) {
      const cplx h = rescaled ? spec.rescaled_entry(j[s], j[s + 1]) : spec.entry(j[s], j[s + 1]);
      e.weight *= principal_sqrt(std::conj(h));
      e.product *= h;
    }
    out.paths.push_back(std::move(e));
  }
  return out;
}

}  // namespace pqw
