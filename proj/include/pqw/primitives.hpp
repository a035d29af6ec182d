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

#ifndef PQW_PRIMITIVES_HPP
#define PQW_PRIMITIVES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pqw/circuit.hpp"

namespace pqw {

// An associative operator on `width`-bit words, realized as the composite
// block (x, y, z) -> (x, y, z ^ (x o y)).
struct BinaryOp {
  std::string name;
  int width = 1;
  std::function<uint64_t(uint64_t, uint64_t)> fn;
  int cost_bits = 0;  // arithmetic precision charged; 0 means width
};

bool check_associative(const BinaryOp& op, int trials = 256, uint64_t seed = 0x5eed);
Node binary_op_node(const BinaryOp& op, const Reg& x, const Reg& y, const Reg& z);

// Layout: item register first, then b-1 copy registers of the same width.
struct CopyCircuit {
  Circuit circuit;
  std::vector<Reg> regs;
};
CopyCircuit copy_gate(int b, int width = 1);
// Inductive fan-out of src into every register of dsts (assumed |0>).
void add_copy(Circuit& c, const Reg& src, const std::vector<Reg>& dsts);

// Layout: gamma (b bits), target, then b-1 copy ancillas.
// Maps |gamma>|psi> to |gamma> R_axis(2 pi gamma 2^-b)|psi>.
Circuit ctrl_rotation(Axis axis, int b);

struct TreeReduce {
  Circuit circuit;
  std::vector<Reg> inputs;
  Reg output;
  long long op_depth_compute = 0;  // op-block layers before uncompute
};
// Computes x_1 o ... o x_m into `output` and uncomputes the tree. Refuses
// operators that fail the associativity harness.
TreeReduce tree_reduce(const BinaryOp& op, int m, bool uncompute = true);
// Appends the pairwise tree; returns the register holding the result. The
// caller owns uncomputation (append_inverse_range over the added nodes).
Reg add_reduce_tree(Circuit& c, const BinaryOp& op, const std::vector<Reg>& operands);

// Layout: b controls, target, b-1 AND-tree ancillas. Z on the target iff
// every control is |1>.
Circuit ctrl_z_multi(int b);
void add_ctrl_z_multi(Circuit& c, const Reg& controls, int target);
// I - 2|0..0><0..0| on `qubits`.
void add_reflect_zero(Circuit& c, const Reg& qubits);

// Prepares sum_r amps[r] |r> on `sel` (amps normalized, size 2^|sel|) by
// |sel| rounds of multiplexed R_Y and R_Z. Angles are written by composite
// blocks into fresh registers of `angle_bits` bits and uncomputed.
void add_amplitude_prep(Circuit& c, const Reg& sel, const std::vector<cplx>& amps, int angle_bits,
                        const std::string& tag = "prep");

// Fixed-point angle code: round(theta / 2pi * 2^bits) mod 2^bits.
uint64_t angle_code(double theta, int bits);

}  // namespace pqw

#endif  // PQW_PRIMITIVES_HPP
