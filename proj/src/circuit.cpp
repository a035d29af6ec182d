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

#include "pqw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

#include "pqw/primitives.hpp"

namespace pqw {

Reg concat(const Reg& a, const Reg& b) {
  Reg r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Reg slice(const Reg& r, int begin, int end) { return Reg(r.begin() + begin, r.begin() + end); }

int ceil_log2(long long x) {
  int k = 0;
  while ((1LL << k) < x) ++k;
  return k;
}

uint64_t BitKey::field(int offset, int width) const {
  uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= uint64_t{get(offset + i)} << i;
  return v;
}

void BitKey::set_field(int offset, int width, uint64_t v) {
  for (int i = 0; i < width; ++i) set(offset + i, (v >> i) & 1u);
}

uint64_t BitKey::read(const Reg& r) const {
  uint64_t v = 0;
  for (size_t i = 0; i < r.size(); ++i) v |= uint64_t{get(r[i])} << i;
  return v;
}

void BitKey::write(const Reg& r, uint64_t v) {
  for (size_t i = 0; i < r.size(); ++i) set(r[i], (v >> i) & 1u);
}

bool BitKey::any_outside(const BitKey& mask) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~mask.w_[i]) return true;
  return false;
}

const char* res_name(int r) {
  switch (r) {
    case kGate: return "gate";
    case kOH: return "O_H";
    case kOP: return "O_P";
    default: return "gate_with_queries";
  }
}

CostProfile CostProfile::then(const CostProfile& o) const {
  CostProfile r;
  for (int i = 0; i < kNumRes; ++i) {
    r.depth[i] = depth[i] + o.depth[i];
    r.size[i] = size[i] + o.size[i];
  }
  return r;
}

CostProfile CostProfile::beside(const CostProfile& o) const {
  CostProfile r;
  for (int i = 0; i < kNumRes; ++i) {
    r.depth[i] = std::max(depth[i], o.depth[i]);
    r.size[i] = size[i] + o.size[i];
  }
  return r;
}

CostProfile CostProfile::scaled(long long k) const {
  CostProfile r;
  for (int i = 0; i < kNumRes; ++i) {
    r.depth[i] = depth[i] * k;
    r.size[i] = size[i] * k;
  }
  return r;
}

nlohmann::json CostProfile::to_json() const {
  return {{"gate_depth", depth[kGate]}, {"gate_size", size[kGate]},
          {"oh_depth", depth[kOH]},     {"oh_size", size[kOH]},
          {"op_depth", depth[kOP]},     {"op_size", size[kOP]},
          {"gate_depth_with_queries", depth[kGateQ]},
          {"gate_size_with_queries", size[kGateQ]}};
}

CostConfig& cost_config() {
  static CostConfig cfg;
  return cfg;
}

CostProfile arithmetic_cost(int bits) {
  const auto& cfg = cost_config();
  long long lb = ceil_log2(std::max(bits, 2));
  long long b = std::max(bits, 1);
  CostProfile c;
  c.depth[kGate] = c.depth[kGateQ] = cfg.c1 * lb * lb;
  c.size[kGate] = c.size[kGateQ] = cfg.c2 * b * b * b * b;
  return c;
}

namespace {

CostProfile unit_cost(Res r) {
  CostProfile c;
  c.depth[r] = c.size[r] = 1;
  c.depth[kGateQ] = c.size[kGateQ] = 1;
  return c;
}

bool is_monomial(const std::vector<cplx>& m, size_t dim) {
  for (size_t col = 0; col < dim; ++col) {
    int nz = 0;
    for (size_t row = 0; row < dim; ++row)
      if (m[row * dim + col] != cplx(0.0)) ++nz;
    if (nz != 1) return false;
  }
  return true;
}

}  // namespace

Node Node::dagger() const {
  Node n = *this;
  switch (kind) {
    case NodeKind::Gate: {
      size_t dim = size_t{1} << support.size();
      auto m = std::make_shared<std::vector<cplx>>(dim * dim);
      for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c) (*m)[r * dim + c] = std::conj((*mat)[c * dim + r]);
      n.mat = m;
      break;
    }
    case NodeKind::Perm: std::swap(n.fwd, n.inv); break;
    case NodeKind::Phase: {
      auto p = phase;
      n.phase = std::make_shared<const PhaseFn>([p](const BitKey& k) { return std::conj((*p)(k)); });
      break;
    }
    case NodeKind::MuxRot: n.sign = -sign; break;
    case NodeKind::Sub: n.sub = std::make_shared<const Circuit>(sub->dagger()); break;
  }
  return n;
}

Node Node::conjugate() const {
  Node n = *this;
  switch (kind) {
    case NodeKind::Gate: {
      auto m = std::make_shared<std::vector<cplx>>(*mat);
      for (auto& v : *m) v = std::conj(v);
      n.mat = m;
      break;
    }
    case NodeKind::Perm: break;
    case NodeKind::Phase: {
      auto p = phase;
      n.phase = std::make_shared<const PhaseFn>([p](const BitKey& k) { return std::conj((*p)(k)); });
      break;
    }
    case NodeKind::MuxRot:
      // R_Y is real; R_X and R_Z conjugate to the opposite angle.
      if (axis != Axis::Y) n.sign = -sign;
      break;
    case NodeKind::Sub: n.sub = std::make_shared<const Circuit>(sub->conjugate()); break;
  }
  return n;
}

Node gate_node(const std::string& label, const Reg& support, std::vector<cplx> mat) {
  if (support.empty() || support.size() > 4) throw InvalidInput("gate_node: support must be 1..4 qubits");
  size_t dim = size_t{1} << support.size();
  if (mat.size() != dim * dim) throw InvalidInput("gate_node: matrix size mismatch for " + label);
  Node n;
  n.kind = NodeKind::Gate;
  n.label = label;
  n.support = support;
  n.mat = std::make_shared<const std::vector<cplx>>(std::move(mat));
  n.cost = unit_cost(kGate);
  return n;
}

Node perm_node(const std::string& label, const Reg& support, PermFn fwd, PermFn inv, const CostProfile& cost) {
  Node n;
  n.kind = NodeKind::Perm;
  n.label = label;
  n.support = support;
  n.fwd = std::make_shared<const PermFn>(std::move(fwd));
  n.inv = std::make_shared<const PermFn>(std::move(inv));
  n.cost = cost;
  return n;
}

Node xor_node(const std::string& label, const Reg& support, PermFn f, const CostProfile& cost) {
  Node n;
  n.kind = NodeKind::Perm;
  n.label = label;
  n.support = support;
  n.fwd = std::make_shared<const PermFn>(std::move(f));
  n.inv = n.fwd;
  n.cost = cost;
  return n;
}

Node query_node(Res oracle, const std::string& label, const Reg& support, PermFn f) {
  return xor_node(label, support, std::move(f), unit_cost(oracle));
}

Node phase_node(const std::string& label, const Reg& support, PhaseFn ph) {
  Node n;
  n.kind = NodeKind::Phase;
  n.label = label;
  n.support = support;
  n.phase = std::make_shared<const PhaseFn>(std::move(ph));
  n.cost = unit_cost(kGate);
  return n;
}

CostProfile mux_rotation_cost(Axis axis, int bits) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, CostProfile> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(axis), bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CostProfile c = ctrl_rotation(axis, bits).cost();
  cache.emplace(key, c);
  return c;
}

Node mux_rotation_node(Axis axis, const Reg& angle, int target, int sign) {
  if (angle.empty() || angle.size() > 63) throw InvalidInput("mux_rotation_node: angle width must be 1..63");
  Node n;
  n.kind = NodeKind::MuxRot;
  n.label = std::string("mux_r") + (axis == Axis::X ? "x" : axis == Axis::Y ? "y" : "z");
  n.support = angle;
  n.support.push_back(target);
  n.axis = axis;
  n.sign = sign;
  n.cost = mux_rotation_cost(axis, static_cast<int>(angle.size()));
  return n;
}

namespace gates {

std::vector<cplx> X() { return {0, 1, 1, 0}; }
std::vector<cplx> Z() { return {1, 0, 0, -1}; }
std::vector<cplx> H() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}
std::vector<cplx> S() { return {1, 0, 0, cplx(0, 1)}; }

std::vector<cplx> CNOT() {
  // index = control + 2*target
  std::vector<cplx> m(16, 0.0);
  m[0 * 4 + 0] = 1;
  m[3 * 4 + 1] = 1;
  m[2 * 4 + 2] = 1;
  m[1 * 4 + 3] = 1;
  return m;
}

std::vector<cplx> CZ() {
  std::vector<cplx> m(16, 0.0);
  m[0] = m[5] = m[10] = 1;
  m[15] = -1;
  return m;
}

std::vector<cplx> SWAP() {
  std::vector<cplx> m(16, 0.0);
  m[0 * 4 + 0] = 1;
  m[2 * 4 + 1] = 1;
  m[1 * 4 + 2] = 1;
  m[3 * 4 + 3] = 1;
  return m;
}

std::vector<cplx> Toffoli() {
  std::vector<cplx> m(64, 0.0);
  for (int i = 0; i < 8; ++i) {
    int o = (i & 3) == 3 ? i ^ 4 : i;
    m[o * 8 + i] = 1;
  }
  return m;
}

std::vector<cplx> Rot(Axis axis, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  switch (axis) {
    case Axis::X: return {c, cplx(0, -s), cplx(0, -s), c};
    case Axis::Y: return {c, -s, s, c};
    default: return {std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)};
  }
}

std::vector<cplx> CRz(double theta) {
  std::vector<cplx> m(16, 0.0);
  m[0] = 1;
  m[5] = std::polar(1.0, -theta / 2);
  m[10] = 1;
  m[15] = std::polar(1.0, theta / 2);
  return m;
}

std::vector<cplx> GlobalPhase(cplx ph) { return {ph, 0, 0, ph}; }

std::vector<cplx> from_matrix(const Mat& m) {
  std::vector<cplx> v(static_cast<size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) v[static_cast<size_t>(r * m.cols() + c)] = m(r, c);
  return v;
}

}  // namespace gates

Circuit::Circuit(int num_qubits) : nq_(num_qubits), acc_(num_qubits) {}

Reg Circuit::alloc(int width, const std::string& name) {
  Reg r(width);
  for (int i = 0; i < width; ++i) r[i] = nq_ + i;
  nq_ += width;
  acc_.resize(nq_);
  if (!name.empty() && width > 0) regs_.emplace_back(name, r);
  return r;
}

void Circuit::place_cost(const Node& n) {
  for (int r = 0; r < kNumRes; ++r) {
    long long start = 0;
    for (int q : n.support) start = std::max(start, acc_[q][r]);
    for (int q : n.ctrls) start = std::max(start, acc_[q][r]);
    long long end = start + n.cost.depth[r];
    for (int q : n.support) acc_[q][r] = end;
    for (int q : n.ctrls) acc_[q][r] = end;
    cost_.depth[r] = std::max(cost_.depth[r], end);
    cost_.size[r] += n.cost.size[r];
  }
}

void Circuit::add(Node node) {
  std::set<int> seen;
  for (int q : node.support) {
    if (q < 0 || q >= nq_) throw InvalidInput("Circuit::add: qubit out of range in " + node.label);
    if (!seen.insert(q).second) throw InvalidInput("Circuit::add: repeated qubit in " + node.label);
  }
  for (int q : node.ctrls) {
    if (q < 0 || q >= nq_) throw InvalidInput("Circuit::add: control out of range in " + node.label);
    if (!seen.insert(q).second) throw InvalidInput("Circuit::add: control overlaps support in " + node.label);
  }
  if (node.kind == NodeKind::Gate) {
    size_t dim = size_t{1} << node.support.size();
    if (!node.mat || node.mat->size() != dim * dim) throw InvalidInput("Circuit::add: bad gate matrix");
  }
  place_cost(node);
  nodes_.push_back(std::move(node));
}

static Node remap(const Node& n, const Reg& placement) {
  Node m = n;
  for (int& q : m.support) q = placement.at(q);
  for (int& q : m.ctrls) q = placement.at(q);
  return m;
}

void Circuit::append(const Circuit& other, const Reg& placement) {
  if (static_cast<int>(placement.size()) != other.num_qubits()) {
    throw InvalidInput("Circuit::append: placement width mismatch");
  }
  for (const auto& n : other.nodes_) add(remap(n, placement));
}

void Circuit::append_block(std::shared_ptr<const Circuit> other, const Reg& placement, const std::string& label,
                           const Reg& ctrls, std::optional<CostProfile> cost) {
  if (static_cast<int>(placement.size()) != other->num_qubits()) {
    throw InvalidInput("Circuit::append_block: placement width mismatch");
  }
  Node n;
  n.kind = NodeKind::Sub;
  n.label = label;
  n.support = placement;
  n.ctrls = ctrls;
  n.cost = cost ? *cost : (ctrls.empty() ? other->cost() : other->cost().scaled(cost_config().controlled_factor));
  n.sub = std::move(other);
  add(std::move(n));
}

void Circuit::append_inverse_range(size_t begin, size_t end) {
  std::vector<Node> inv;
  inv.reserve(end - begin);
  for (size_t i = end; i-- > begin;) inv.push_back(nodes_[i].dagger());
  for (auto& n : inv) add(std::move(n));
}

Circuit Circuit::dagger() const {
  Circuit c(nq_);
  c.regs_ = regs_;
  for (size_t i = nodes_.size(); i-- > 0;) c.add(nodes_[i].dagger());
  return c;
}

Circuit Circuit::conjugate() const {
  Circuit c(nq_);
  c.regs_ = regs_;
  for (const auto& n : nodes_) c.add(n.conjugate());
  return c;
}

std::vector<int> Circuit::node_layers() const {
  std::vector<int> last(nq_, 0), out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    int l = 0;
    for (int q : n.support) l = std::max(l, last[q]);
    for (int q : n.ctrls) l = std::max(l, last[q]);
    ++l;
    for (int q : n.support) last[q] = l;
    for (int q : n.ctrls) last[q] = l;
    out.push_back(l);
  }
  return out;
}

int Circuit::num_layers() const {
  auto l = node_layers();
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end());
}

long long Circuit::label_depth(const std::string& prefix) const {
  std::vector<long long> acc(nq_, 0);
  long long best = 0;
  for (const auto& n : nodes_) {
    long long w = 0;
    if (n.kind == NodeKind::Sub) w = n.sub->label_depth(prefix);
    else if (n.label.rfind(prefix, 0) == 0) w = 1;
    long long start = 0;
    for (int q : n.support) start = std::max(start, acc[q]);
    for (int q : n.ctrls) start = std::max(start, acc[q]);
    for (int q : n.support) acc[q] = start + w;
    for (int q : n.ctrls) acc[q] = start + w;
    best = std::max(best, start + w);
  }
  return best;
}

nlohmann::json Circuit::dump() const {
  static const char* kinds[] = {"gate", "perm", "phase", "mux_rotation", "block"};
  nlohmann::json j;
  j["schema"] = "pqw.circuit/1";
  j["num_qubits"] = nq_;
  j["registers"] = nlohmann::json::array();
  for (const auto& [name, r] : regs_) j["registers"].push_back({{"name", name}, {"qubits", r}});
  auto layers = node_layers();
  j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    j["nodes"].push_back({{"kind", kinds[static_cast<int>(n.kind)]},
                          {"label", n.label},
                          {"support", n.support},
                          {"ctrls", n.ctrls},
                          {"layer", layers[i]},
                          {"cost", n.cost.to_json()}});
  }
  j["num_layers"] = layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end());
  j["cost"] = cost_.to_json();
  return j;
}

Circuit compose(const Circuit& a, const Circuit& b, const Reg& placement, ComposeMode mode) {
  int need = a.num_qubits();
  for (int q : placement) need = std::max(need, q + 1);
  if (mode == ComposeMode::Parallel) {
    std::set<int> used;
    for (const auto& n : a.nodes()) {
      used.insert(n.support.begin(), n.support.end());
      used.insert(n.ctrls.begin(), n.ctrls.end());
    }
    for (int q : placement)
      if (used.count(q)) throw InvalidInput("compose: parallel placement overlaps the first circuit");
  }
  Circuit c(need);
  Reg id(a.num_qubits());
  for (int i = 0; i < a.num_qubits(); ++i) id[i] = i;
  for (const auto& [name, r] : a.registers()) c.name_register(name, r);
  c.append(a, id);
  c.append(b, placement);
  return c;
}

// ---------------------------------------------------------------- semantics

State::State(int num_qubits, const BitKey& basis) : nq_(num_qubits) { amps_.emplace_back(basis, cplx(1.0)); }

void State::canonicalize() {
  std::sort(amps_.begin(), amps_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<BitKey, cplx>> out;
  out.reserve(amps_.size());
  for (auto& e : amps_) {
    if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
    else out.push_back(std::move(e));
  }
  std::vector<std::pair<BitKey, cplx>> kept;
  kept.reserve(out.size());
  for (auto& e : out)
    if (std::abs(e.second) >= kPruneAmplitude) kept.push_back(std::move(e));
  amps_ = std::move(kept);
}

double State::norm2() const {
  double s = 0;
  for (const auto& e : amps_) s += std::norm(e.second);
  return s;
}

cplx State::amplitude(const BitKey& k) const {
  cplx a = 0;
  for (const auto& e : amps_)
    if (e.first == k) a += e.second;
  return a;
}

namespace {

struct Ctx {
  const Reg* map;  // local->outer for the enclosing block, null at top level
  Reg ctrls;
};

inline int outer(const Ctx& ctx, int q) { return ctx.map ? (*ctx.map)[q] : q; }

bool controls_on(const BitKey& k, const Reg& ctrls) {
  for (int q : ctrls)
    if (!k.get(q)) return false;
  return true;
}

void apply_nodes(const Circuit& c, State& st, const Ctx& ctx);

void apply_matrix(State& st, const Reg& sup, const Reg& ctrls, const std::vector<cplx>& m) {
  const size_t k = sup.size();
  const size_t dim = size_t{1} << k;
  auto& amps = st.amps();
  if (is_monomial(m, dim)) {
    std::vector<size_t> to(dim);
    std::vector<cplx> fac(dim);
    for (size_t col = 0; col < dim; ++col)
      for (size_t row = 0; row < dim; ++row)
        if (m[row * dim + col] != cplx(0.0)) {
          to[col] = row;
          fac[col] = m[row * dim + col];
        }
    for (auto& [key, a] : amps) {
      if (!controls_on(key, ctrls)) continue;
      size_t idx = 0;
      for (size_t i = 0; i < k; ++i) idx |= size_t{key.get(sup[i])} << i;
      for (size_t i = 0; i < k; ++i) key.set(sup[i], (to[idx] >> i) & 1u);
      a *= fac[idx];
    }
    return;
  }
  std::vector<std::pair<BitKey, cplx>> out;
  out.reserve(amps.size() * 2);
  for (auto& [key, a] : amps) {
    if (!controls_on(key, ctrls)) {
      out.emplace_back(key, a);
      continue;
    }
    size_t idx = 0;
    for (size_t i = 0; i < k; ++i) idx |= size_t{key.get(sup[i])} << i;
    for (size_t row = 0; row < dim; ++row) {
      cplx v = m[row * dim + idx];
      if (v == cplx(0.0)) continue;
      BitKey nk = key;
      for (size_t i = 0; i < k; ++i) nk.set(sup[i], (row >> i) & 1u);
      out.emplace_back(std::move(nk), a * v);
    }
  }
  amps = std::move(out);
  st.canonicalize();
}

BitKey gather(const BitKey& key, const Reg& sup) {
  BitKey l(static_cast<int>(sup.size()));
  for (size_t i = 0; i < sup.size(); ++i)
    if (key.get(sup[i])) l.set(static_cast<int>(i), true);
  return l;
}

void scatter(BitKey& key, const Reg& sup, const BitKey& l) {
  for (size_t i = 0; i < sup.size(); ++i) key.set(sup[i], l.get(static_cast<int>(i)));
}

void apply_node(const Node& n, State& st, const Ctx& ctx) {
  Reg sup(n.support.size());
  for (size_t i = 0; i < sup.size(); ++i) sup[i] = outer(ctx, n.support[i]);
  Reg ctrls = ctx.ctrls;
  for (int q : n.ctrls) ctrls.push_back(outer(ctx, q));

  switch (n.kind) {
    case NodeKind::Gate: apply_matrix(st, sup, ctrls, *n.mat); break;
    case NodeKind::Perm:
      for (auto& [key, a] : st.amps()) {
        if (!controls_on(key, ctrls)) continue;
        BitKey l = gather(key, sup);
        (*n.fwd)(l);
        scatter(key, sup, l);
      }
      break;
    case NodeKind::Phase:
      for (auto& [key, a] : st.amps()) {
        if (!controls_on(key, ctrls)) continue;
        a *= (*n.phase)(gather(key, sup));
      }
      break;
    case NodeKind::MuxRot: {
      const int k = static_cast<int>(sup.size()) - 1;
      const int tgt = sup[k];
      const Reg ang(sup.begin(), sup.begin() + k);
      const double scale = 2.0 * M_PI / std::ldexp(1.0, k);
      auto& amps = st.amps();
      if (n.axis == Axis::Z) {
        for (auto& [key, a] : amps) {
          if (!controls_on(key, ctrls)) continue;
          double th = n.sign * scale * static_cast<double>(key.read(ang));
          a *= std::polar(1.0, (key.get(tgt) ? 0.5 : -0.5) * th);
        }
        break;
      }
      std::vector<std::pair<BitKey, cplx>> out;
      out.reserve(amps.size() * 2);
      for (auto& [key, a] : amps) {
        if (!controls_on(key, ctrls)) {
          out.emplace_back(key, a);
          continue;
        }
        double th = n.sign * scale * static_cast<double>(key.read(ang));
        auto m = gates::Rot(n.axis, th);
        int col = key.get(tgt);
        for (int row = 0; row < 2; ++row) {
          cplx v = m[row * 2 + col];
          if (v == cplx(0.0)) continue;
          BitKey nk = key;
          nk.set(tgt, row);
          out.emplace_back(std::move(nk), a * v);
        }
      }
      amps = std::move(out);
      st.canonicalize();
      break;
    }
    case NodeKind::Sub: {
      Ctx inner{&sup, ctrls};
      apply_nodes(*n.sub, st, inner);
      break;
    }
  }
}

void apply_nodes(const Circuit& c, State& st, const Ctx& ctx) {
  for (const auto& n : c.nodes()) apply_node(n, st, ctx);
}

}  // namespace

void apply(const Circuit& c, State& s) {
  if (s.num_qubits() < c.num_qubits()) throw InvalidInput("apply: state narrower than circuit");
  apply_nodes(c, s, Ctx{nullptr, {}});
  s.canonicalize();
}

State run(const Circuit& c, const BitKey& input) {
  State s(c.num_qubits(), input);
  apply(c, s);
  return s;
}

Mat to_matrix(const Circuit& c, int max_qubits) {
  if (c.num_qubits() > max_qubits) throw CapExceeded("to_matrix: too many qubits for dense evaluation");
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits();
  Mat u = Mat::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    BitKey in(c.num_qubits());
    for (int q = 0; q < c.num_qubits(); ++q) in.set(q, (col >> q) & 1);
    State s = run(c, in);
    for (const auto& [k, a] : s.amps()) {
      Eigen::Index row = 0;
      for (int q = 0; q < c.num_qubits(); ++q) row |= Eigen::Index{k.get(q)} << q;
      u(row, col) += a;
    }
  }
  return u;
}

Mat extract_block(const Circuit& c, const Reg& system) {
  if (system.size() > 12) throw CapExceeded("extract_block: system register above 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << system.size();
  BitKey mask(c.num_qubits());
  for (int q : system) mask.set(q, true);
  Mat blk = Mat::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    BitKey in(c.num_qubits());
    in.write(system, static_cast<uint64_t>(col));
    State s = run(c, in);
    for (const auto& [k, a] : s.amps()) {
      if (k.any_outside(mask)) continue;
      blk(static_cast<Eigen::Index>(k.read(system)), col) += a;
    }
  }
  return blk;
}

}  // namespace pqw
