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

#ifndef PQW_CERT_HPP
#define PQW_CERT_HPP

#include <memory>
#include <string>

#include "pqw/circuit.hpp"

namespace pqw {

// U is an (alpha, ancillas, eps_bound)-block-encoding of `target` when
// || alpha * block - target || <= eps_bound; `measured` is that distance.
struct BlockEncodingCert {
  std::string target_id;
  double alpha = 1.0;
  int ancillas = 0;
  double eps_bound = 0.0;
  double measured = 0.0;
  Mat target;
  Mat block;  // the extracted upper-left block, unscaled
  Reg system;  // system qubits of `circuit`
  std::shared_ptr<const Circuit> circuit;
  CostProfile cost;

  bool pass(double slack = 1e-12) const { return measured <= eps_bound + slack; }

  nlohmann::json to_json() const {
    return {{"target", target_id}, {"alpha", alpha},        {"ancillas", ancillas},
            {"bound", eps_bound},  {"measured_distance", measured}, {"pass", pass()},
            {"cost", cost.to_json()}};
  }
};

// Fills `measured` from alpha * block against target.
inline void measure(BlockEncodingCert& c) { c.measured = spectral_distance(c.alpha * c.block, c.target); }

}  // namespace pqw

#endif  // PQW_CERT_HPP
