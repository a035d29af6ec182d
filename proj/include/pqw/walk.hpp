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

#ifndef PQW_WALK_HPP
#define PQW_WALK_HPP

#include <memory>
#include <string>
#include <vector>

#include "pqw/cert.hpp"
#include "pqw/hamiltonians.hpp"

namespace pqw {

enum class WalkVariant { Single, Extended, Childs };
const char* variant_name(WalkVariant v);
WalkVariant variant_from_name(const std::string& s);

// Registers that carry the walk state. A_s and B_s are n+1 bits with the
// branch bit on top; the system is the low n bits of A_0.
struct WalkRegisters {
  Reg system;
  std::vector<Reg> A, B;
  std::vector<Reg> W;  // term labels, extended variant only
  std::vector<Reg> F;  // one flag per edge marking a negative real entry
};

struct WalkBuild {
  std::shared_ptr<const HamiltonianSpec> spec;
  int r = 0;
  WalkVariant variant = WalkVariant::Single;
  int b = kExactBits;
  // T, its inverse and the reverse-order swap share one qubit layout.
  std::shared_ptr<const Circuit> T, Tdag, S;
  // The built operator: T (prewalk), T, Q or the Chebyshev circuit.
  std::shared_ptr<const Circuit> circuit;
  WalkRegisters regs;
  int ancilla_count = 0;      // every qubit of `circuit` beyond the system
  int declared_ancillas = 0;  // walk-state qubits beyond the system, flags excluded
  int flag_ancillas = 0;

  const CostProfile& cost() const { return circuit->cost(); }
  nlohmann::json to_json() const;
};

// Pre-walk stage only: |j0>|0> -> (md)^{-r/2} sum over paths |w>|j>.
WalkBuild prewalk(std::shared_ptr<const HamiltonianSpec> spec, int r, WalkVariant variant = WalkVariant::Single);
// T^(r): pre-walk followed by re-weight.
WalkBuild build_T(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant = WalkVariant::Single);
// Reverse order of `num_regs` registers of `width` qubits as disjoint swaps.
Circuit build_S(int num_regs, int width);
// Q^(r) = T^dag S T.
WalkBuild build_Q(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant = WalkVariant::Single);

// (H/d)^r, or (H/(md))^r for the extended variant.
Mat walk_target(const HamiltonianSpec& spec, int r, WalkVariant variant);
// Block distance allowed at precision b: 1e-8 in exact mode, otherwise
// twice the accumulated per-edge bound over r edges.
double walk_error_bound(int r, int b);
BlockEncodingCert certify_block(const WalkBuild& w);

// Block of Q^(r) evaluated as block(Q^(1))^r. Exact for the constructed
// circuits because each edge contributes an independent factor.
Mat edge_factorized_block(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant);

// Childs walk step Q = S (2 T Pi T^dag - 1) on two registers of n+1 bits.
WalkBuild childs_step(std::shared_ptr<const HamiltonianSpec> spec, int b);
// T^dag Q^r T against the Chebyshev polynomial T_r(H/d).
BlockEncodingCert chebyshev_certify(std::shared_ptr<const HamiltonianSpec> spec, int r, int b);
Mat chebyshev(const Mat& x, int r);

// Places a walk's qubits into `host`: the system maps onto `system`, the
// rest onto freshly allocated qubits. Returns the placement.
Reg place_walk(Circuit& host, const WalkBuild& w, const Reg& system, const std::string& tag);
// Appends T, S and T^dag as blocks; S is controlled on `ctrl` when >= 0.
void append_walk(Circuit& host, const WalkBuild& w, const Reg& placement, int ctrl = -1);

}  // namespace pqw

#endif  // PQW_WALK_HPP
