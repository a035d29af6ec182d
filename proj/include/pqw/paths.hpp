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

#ifndef PQW_PATHS_HPP
#define PQW_PATHS_HPP

#include <cstdint>
#include <vector>

#include "pqw/hamiltonians.hpp"

namespace pqw {

// One walk of length r: term labels w_0..w_{r-1} and vertices j_0..j_r.
struct PathEntry {
  std::vector<int> w;
  std::vector<uint64_t> j;
  cplx weight;   // prod_s sqrt(conj(h_s)), the good-branch amplitude factor
  cplx product;  // prod_s h_s
};

struct PathTable {
  uint64_t j0 = 0;
  int r = 0;
  std::vector<PathEntry> paths;
};

// Brute-force enumeration over (w, t) in [m]^r x [d]^r, keeping distinct
// member paths. With `rescaled` the entries are H/c, otherwise H.
PathTable enumerate_paths(const HamiltonianSpec& spec, uint64_t j0, int r, bool rescaled,
                          uint64_t cap = 1000000);

}  // namespace pqw

#endif  // PQW_PATHS_HPP
