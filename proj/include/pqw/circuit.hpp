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

#ifndef PQW_CIRCUIT_HPP
#define PQW_CIRCUIT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqw/refsim.hpp"

namespace pqw {

// Qubit indices of a register, least significant bit first.
using Reg = std::vector<int>;

Reg concat(const Reg& a, const Reg& b);
Reg slice(const Reg& r, int begin, int end);

int ceil_log2(long long x);  // ceil_log2(1) == 0

// Arbitrary-width basis-state label.
class BitKey {
 public:
  BitKey() = default;
  explicit BitKey(int nbits) : w_((nbits + 63) / 64, 0) {}

  bool get(int q) const { return (w_[q >> 6] >> (q & 63)) & 1u; }
  void set(int q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    if (v) w_[q >> 6] |= m; else w_[q >> 6] &= ~m;
  }
  void flip(int q) { w_[q >> 6] ^= uint64_t{1} << (q & 63); }

  // Contiguous field [offset, offset+width), width <= 64.
  uint64_t field(int offset, int width) const;
  void set_field(int offset, int width, uint64_t v);
  void xor_field(int offset, int width, uint64_t v) { set_field(offset, width, field(offset, width) ^ v); }

  uint64_t read(const Reg& r) const;
  void write(const Reg& r, uint64_t v);

  bool any_outside(const BitKey& mask) const;
  const std::vector<uint64_t>& words() const { return w_; }
  friend bool operator==(const BitKey& a, const BitKey& b) { return a.w_ == b.w_; }
  friend bool operator<(const BitKey& a, const BitKey& b) { return a.w_ < b.w_; }

 private:
  std::vector<uint64_t> w_;
};

enum Res : int { kGate = 0, kOH = 1, kOP = 2, kGateQ = 3 };
constexpr int kNumRes = 4;
const char* res_name(int r);

// Per-resource depth and size. kGateQ counts oracle queries as unit gates.
struct CostProfile {
  std::array<long long, kNumRes> depth{};
  std::array<long long, kNumRes> size{};

  long long gate_depth(bool queries_as_gates = false) const { return depth[queries_as_gates ? kGateQ : kGate]; }
  long long gate_size(bool queries_as_gates = false) const { return size[queries_as_gates ? kGateQ : kGate]; }

  // Sequential composition on overlapping wires: depths and sizes add.
  CostProfile then(const CostProfile& o) const;
  // Disjoint-wire composition: depths max, sizes add.
  CostProfile beside(const CostProfile& o) const;
  CostProfile scaled(long long k) const;
  nlohmann::json to_json() const;
  friend bool operator==(const CostProfile&, const CostProfile&) = default;
};

// Arithmetic blocks are charged c1*ceil(log2 b)^2 depth and c2*b^4 size.
// Controlled sub-circuits are charged controlled_factor times their profile.
struct CostConfig {
  long long c1 = 1;
  long long c2 = 1;
  long long controlled_factor = 2;
};
CostConfig& cost_config();
CostProfile arithmetic_cost(int bits);

class Circuit;
using PermFn = std::function<void(BitKey&)>;
using PhaseFn = std::function<cplx(const BitKey&)>;

enum class NodeKind { Gate, Perm, Phase, MuxRot, Sub };
enum class Axis { X, Y, Z };

// Every payload addresses its qubits through local positions into `support`
// so a node can be re-placed by rewriting `support` and `ctrls` only.
struct Node {
  NodeKind kind = NodeKind::Gate;
  std::string label;
  Reg support;
  Reg ctrls;  // node acts iff all are |1>
  // Gate: (2^k x 2^k) row-major matrix, support[0] is the low index bit.
  std::shared_ptr<const std::vector<cplx>> mat;
  // Perm: bijection on the local key and its inverse.
  std::shared_ptr<const PermFn> fwd, inv;
  // Phase: diagonal entry as a function of the local key.
  std::shared_ptr<const PhaseFn> phase;
  // MuxRot: support = angle bits (LSB first) then target. The target is
  // rotated by R_axis(sign * 2 pi gamma / 2^k).
  Axis axis = Axis::Z;
  int sign = 1;
  // Sub: the sub-circuit's qubit i lives on support[i].
  std::shared_ptr<const Circuit> sub;
  CostProfile cost;

  Node dagger() const;
  Node conjugate() const;
};

Node gate_node(const std::string& label, const Reg& support, std::vector<cplx> mat);
Node perm_node(const std::string& label, const Reg& support, PermFn fwd, PermFn inv, const CostProfile& cost);
// Self-inverse permutation, typically (x, z) -> (x, z ^ f(x)).
Node xor_node(const std::string& label, const Reg& support, PermFn f, const CostProfile& cost);
Node query_node(Res oracle, const std::string& label, const Reg& support, PermFn f);
Node phase_node(const std::string& label, const Reg& support, PhaseFn ph);
Node mux_rotation_node(Axis axis, const Reg& angle, int target, int sign = 1);
CostProfile mux_rotation_cost(Axis axis, int bits);

namespace gates {
std::vector<cplx> X();
std::vector<cplx> Z();
std::vector<cplx> H();
std::vector<cplx> S();
std::vector<cplx> CNOT();  // support (control, target)
std::vector<cplx> CZ();
std::vector<cplx> SWAP();
std::vector<cplx> Toffoli();  // support (c0, c1, target)
std::vector<cplx> Rot(Axis axis, double theta);
std::vector<cplx> CRz(double theta);  // support (control, target)
std::vector<cplx> GlobalPhase(cplx ph);
std::vector<cplx> from_matrix(const Mat& m);
}  // namespace gates

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits);

  int num_qubits() const { return nq_; }
  Reg alloc(int width, const std::string& name);
  void name_register(const std::string& name, const Reg& r) { regs_.emplace_back(name, r); }

  void add(Node node);
  void add_gate(const std::string& label, const Reg& support, std::vector<cplx> mat) {
    add(gate_node(label, support, std::move(mat)));
  }

  // Inline the nodes of `other`; its qubit i maps to placement[i].
  void append(const Circuit& other, const Reg& placement);
  // Place `other` as one block node. Cost defaults to other's profile, or
  // controlled_factor times it when `ctrls` is non-empty.
  void append_block(std::shared_ptr<const Circuit> other, const Reg& placement, const std::string& label,
                    const Reg& ctrls = {}, std::optional<CostProfile> cost = std::nullopt);
  // Append the inverse of nodes [begin, end) in reverse order.
  void append_inverse_range(size_t begin, size_t end);

  Circuit dagger() const;
  Circuit conjugate() const;

  size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::string, Reg>>& registers() const { return regs_; }
  const CostProfile& cost() const { return cost_; }

  std::vector<int> node_layers() const;  // greedy-earliest, 1-based
  int num_layers() const;
  // Longest path counting only nodes whose label starts with `prefix`.
  long long label_depth(const std::string& prefix) const;
  nlohmann::json dump() const;

 private:
  void place_cost(const Node& n);
  int nq_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::pair<std::string, Reg>> regs_;
  std::vector<std::array<long long, kNumRes>> acc_;
  CostProfile cost_;
};

enum class ComposeMode { Sequential, Parallel };
// Sequential: b after a, semantics b*a. Parallel additionally requires the
// placement to avoid every qubit a touches.
Circuit compose(const Circuit& a, const Circuit& b, const Reg& placement,
                ComposeMode mode = ComposeMode::Sequential);

class State {
 public:
  State() = default;
  State(int num_qubits, const BitKey& basis);

  int num_qubits() const { return nq_; }
  std::vector<std::pair<BitKey, cplx>>& amps() { return amps_; }
  const std::vector<std::pair<BitKey, cplx>>& amps() const { return amps_; }
  // Sort by key, add duplicates, drop amplitudes below the prune threshold.
  void canonicalize();
  double norm2() const;
  cplx amplitude(const BitKey& k) const;

 private:
  int nq_ = 0;
  std::vector<std::pair<BitKey, cplx>> amps_;
};

constexpr double kPruneAmplitude = 1e-15;

void apply(const Circuit& c, State& s);
State run(const Circuit& c, const BitKey& input);
// Dense unitary, column i = image of basis state i. Limited to 14 qubits.
Mat to_matrix(const Circuit& c, int max_qubits = 14);
// Upper-left block with all non-system qubits projected onto |0>.
Mat extract_block(const Circuit& c, const Reg& system);

}  // namespace pqw

#endif  // PQW_CIRCUIT_HPP
