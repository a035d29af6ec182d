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

#include "pqw/primitives.hpp"

#include <cmath>
#include <random>

namespace pqw {

namespace {
uint64_t low_mask(int w) { return w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1; }
}  // namespace

bool check_associative(const BinaryOp& op, int trials, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const uint64_t m = low_mask(op.width);
  for (int i = 0; i < trials; ++i) {
    uint64_t a = rng() & m, b = rng() & m, c = rng() & m;
    if ((op.fn(op.fn(a, b), c) & m) != (op.fn(a, op.fn(b, c)) & m)) return false;
  }
  return true;
}

Node binary_op_node(const BinaryOp& op, const Reg& x, const Reg& y, const Reg& z) {
  const int w = op.width;
  auto fn = op.fn;
  const uint64_t m = low_mask(w);
  return xor_node(op.name, concat(concat(x, y), z),
                  [fn, w, m](BitKey& k) { k.xor_field(2 * w, w, fn(k.field(0, w), k.field(w, w)) & m); },
                  arithmetic_cost(op.cost_bits ? op.cost_bits : w));
}

void add_copy(Circuit& c, const Reg& src, const std::vector<Reg>& dsts) {
  std::vector<Reg> have{src};
  size_t next = 0;
  while (next < dsts.size()) {
    const size_t batch = std::min(have.size(), dsts.size() - next);
    for (size_t i = 0; i < batch; ++i) {
      const Reg& from = have[i];
      const Reg& to = dsts[next + i];
      for (size_t b = 0; b < from.size(); ++b) c.add_gate("copy", {from[b], to[b]}, gates::CNOT());
    }
    for (size_t i = 0; i < batch; ++i) have.push_back(dsts[next + i]);
    next += batch;
  }
}

CopyCircuit copy_gate(int b, int width) {
  if (b < 1) throw InvalidInput("copy_gate: fanout must be >= 1");
  if (width < 1) throw InvalidInput("copy_gate: width must be >= 1");
  CopyCircuit out;
  for (int i = 0; i < b; ++i) out.regs.push_back(out.circuit.alloc(width, i == 0 ? "item" : "copy" + std::to_string(i)));
  std::vector<Reg> dsts(out.regs.begin() + 1, out.regs.end());
  add_copy(out.circuit, out.regs[0], dsts);
  return out;
}

Circuit ctrl_rotation(Axis axis, int b) {
  if (b < 1) throw InvalidInput("ctrl_rotation: b must be >= 1");
  Circuit c;
  Reg gamma = c.alloc(b, "gamma");
  Reg tgt = c.alloc(1, "target");
  Reg copies = c.alloc(b - 1, "copies");
  const double s2 = 1.0 / std::sqrt(2.0);
  // R_X = H R_Z H; R_Y = S H R_Z H S^dagger with the basis change merged.
  const std::vector<cplx> pre_y = {s2, cplx(0, -s2), s2, cplx(0, s2)};   // H S^dagger
  const std::vector<cplx> post_y = {s2, s2, cplx(0, s2), cplx(0, -s2)};  // S H
  if (axis == Axis::X) c.add_gate("basis", tgt, gates::H());
  if (axis == Axis::Y) c.add_gate("basis", tgt, pre_y);
  std::vector<Reg> dsts;
  for (int i = 0; i < b - 1; ++i) dsts.push_back({copies[i]});
  const size_t copy_begin = c.size();
  add_copy(c, tgt, dsts);
  const size_t copy_end = c.size();
  for (int k = 0; k < b; ++k) {
    const int t = k == 0 ? tgt[0] : copies[k - 1];
    c.add_gate("crz", {gamma[k], t}, gates::CRz(2.0 * M_PI * std::ldexp(1.0, k - b)));
  }
  c.append_inverse_range(copy_begin, copy_end);
  if (axis == Axis::X) c.add_gate("basis", tgt, gates::H());
  if (axis == Axis::Y) c.add_gate("basis", tgt, post_y);
  return c;
}

Reg add_reduce_tree(Circuit& c, const BinaryOp& op, const std::vector<Reg>& operands) {
  if (operands.empty()) throw InvalidInput("add_reduce_tree: no operands");
  std::vector<Reg> level = operands;
  while (level.size() > 1) {
    std::vector<Reg> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      Reg z = c.alloc(op.width, "");
      c.add(binary_op_node(op, level[i], level[i + 1], z));
      next.push_back(z);
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level[0];
}

TreeReduce tree_reduce(const BinaryOp& op, int m, bool uncompute) {
  if (m < 1) throw InvalidInput("tree_reduce: m must be >= 1");
  if (!check_associative(op)) throw InvalidInput("tree_reduce: operator '" + op.name + "' is not associative");
  TreeReduce out;
  for (int i = 0; i < m; ++i) out.inputs.push_back(out.circuit.alloc(op.width, "x" + std::to_string(i)));
  out.output = out.circuit.alloc(op.width, "out");
  const size_t begin = out.circuit.size();
  Reg root = add_reduce_tree(out.circuit, op, out.inputs);
  const size_t end = out.circuit.size();
  out.op_depth_compute = out.circuit.label_depth(op.name);
  for (int b = 0; b < op.width; ++b) out.circuit.add_gate("copy", {root[b], out.output[b]}, gates::CNOT());
  if (uncompute) out.circuit.append_inverse_range(begin, end);
  return out;
}

void add_ctrl_z_multi(Circuit& c, const Reg& controls, int target) {
  if (controls.empty()) throw InvalidInput("ctrl_z_multi: needs at least one control");
  const size_t begin = c.size();
  std::vector<int> level = controls;
  while (level.size() > 1) {
    std::vector<int> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      int a = c.alloc(1, "")[0];
      c.add_gate("and", {level[i], level[i + 1], a}, gates::Toffoli());
      next.push_back(a);
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  const size_t end = c.size();
  c.add_gate("cz", {level[0], target}, gates::CZ());
  c.append_inverse_range(begin, end);
}

Circuit ctrl_z_multi(int b) {
  if (b < 1) throw InvalidInput("ctrl_z_multi: b must be >= 1");
  Circuit c;
  Reg ctl = c.alloc(b, "controls");
  Reg tgt = c.alloc(1, "target");
  add_ctrl_z_multi(c, ctl, tgt[0]);
  return c;
}

void add_reflect_zero(Circuit& c, const Reg& qubits) {
  if (qubits.empty()) return;
  for (int q : qubits) c.add_gate("x", {q}, gates::X());
  if (qubits.size() == 1) {
    c.add_gate("z", {qubits[0]}, gates::Z());
  } else {
    Reg ctl(qubits.begin(), qubits.end() - 1);
    add_ctrl_z_multi(c, ctl, qubits.back());
  }
  for (int q : qubits) c.add_gate("x", {q}, gates::X());
}

uint64_t angle_code(double theta, int bits) {
  long double x = static_cast<long double>(theta) / (2.0L * static_cast<long double>(M_PI));
  x -= std::floor(x);
  long double scaled = std::round(x * std::ldexp(1.0L, bits));
  uint64_t code = static_cast<uint64_t>(scaled);
  return bits >= 64 ? code : code & ((uint64_t{1} << bits) - 1);
}

void add_amplitude_prep(Circuit& c, const Reg& sel, const std::vector<cplx>& amps, int angle_bits,
                        const std::string& tag) {
  const int s = static_cast<int>(sel.size());
  if (s < 1) throw InvalidInput("amplitude_prep: empty register");
  if (amps.size() != (size_t{1} << s)) throw InvalidInput("amplitude_prep: amplitude count must be 2^|sel|");
  if (angle_bits < 1 || angle_bits > 62) throw InvalidInput("amplitude_prep: angle bits out of range");
  const size_t dim = amps.size();
  std::vector<double> p(dim), half(dim);
  for (size_t r = 0; r < dim; ++r) {
    p[r] = std::norm(amps[r]);
    half[r] = p[r] > 0 ? std::arg(amps[r]) : 0.0;
  }
  Reg phi = c.alloc(angle_bits, tag + ".phi");
  Reg beta = c.alloc(angle_bits, tag + ".beta");
  Reg anc = c.alloc(1, tag + ".phase");
  for (int l = 0; l < s; ++l) {
    const int q = sel[s - 1 - l];
    const size_t span = dim >> l;
    std::vector<uint64_t> phi_code(size_t{1} << l), beta_code(size_t{1} << l);
    for (size_t x = 0; x < phi_code.size(); ++x) {
      const size_t u = x * span, w = u + span / 2, v = u + span;
      // atan2 of the two half norms keeps relative precision when one half
      // is tiny, where acos of a near-unit cosine would not.
      double lo = 0, hi = 0;
      for (size_t r = u; r < w; ++r) lo += p[r];
      for (size_t r = w; r < v; ++r) hi += p[r];
      phi_code[x] = angle_code(2.0 * std::atan2(std::sqrt(hi), std::sqrt(lo)), angle_bits);
      beta_code[x] = angle_code(half[w] - half[u], angle_bits);
    }
    const Reg prefix(sel.end() - l, sel.end());
    const int ab = angle_bits;
    auto table = xor_node(tag + ".angles", concat(concat(prefix, phi), beta),
                          [phi_code, beta_code, l, ab](BitKey& k) {
                            const uint64_t x = k.field(0, l);
                            k.xor_field(l, ab, phi_code[x]);
                            k.xor_field(l + ab, ab, beta_code[x]);
                          },
                          arithmetic_cost(angle_bits));
    c.add(table);
    c.add(mux_rotation_node(Axis::Y, phi, q, 1));
    c.add(mux_rotation_node(Axis::Z, beta, q, 1));
    c.add(mux_rotation_node(Axis::Z, beta, anc[0], -1));
    c.add(table);
  }
  if (half[0] != 0.0) c.add_gate(tag + ".phase_fix", {sel[0]}, gates::GlobalPhase(std::polar(1.0, half[0])));
}

}  // namespace pqw
