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

#include "pqw/walk.hpp"

#include <cmath>

namespace pqw {

const char* variant_name(WalkVariant v) {
  switch (v) {
    case WalkVariant::Single: return "single";
    case WalkVariant::Extended: return "extended";
    case WalkVariant::Childs: return "childs";
  }
  return "?";
}

WalkVariant variant_from_name(const std::string& s) {
  for (WalkVariant v : {WalkVariant::Single, WalkVariant::Extended, WalkVariant::Childs})
    if (s == variant_name(v)) return v;
  throw InvalidInput("unknown walk variant '" + s + "'");
}

namespace {

constexpr int kMaxWalkR = 64;

Reg low(const Reg& r, int n) { return slice(r, 0, n); }

// Uniform superposition over [count] on `reg`.
void add_uniform(Circuit& c, const Reg& reg, uint64_t count, int angle_bits, const std::string& tag) {
  if (reg.empty() || count <= 1) return;
  if (count == (uint64_t{1} << reg.size())) {
    for (int q : reg) c.add_gate(tag, {q}, gates::H());
    return;
  }
  std::vector<cplx> amps(size_t{1} << reg.size(), 0.0);
  for (uint64_t i = 0; i < count; ++i) amps[i] = 1.0 / std::sqrt(static_cast<double>(count));
  add_amplitude_prep(c, reg, amps, angle_bits, tag);
}

class TBuilder {
 public:
  TBuilder(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant v)
      : spec_(std::move(spec)), so_(spec_->structure()), r_(r), b_(b), v_(v), n_(spec_->n()) {
    if (r < 0 || r > kMaxWalkR) throw InvalidInput("walk: r out of range");
    if (v == WalkVariant::Childs && r != 1) throw InvalidInput("walk: the Childs step has r = 1");
    if (v != WalkVariant::Extended && spec_->m() != 1) {
      throw InvalidInput("walk: a sum of m > 1 terms needs the extended variant");
    }
    wbits_ = v == WalkVariant::Extended ? ceil_log2(spec_->m()) : 0;
    ab_ = angle_bits_for(b);
    for (int s = 0; s <= r; ++s) regs_.A.push_back(c_.alloc(n_ + 1, "A" + std::to_string(s)));
    regs_.system = low(regs_.A[0], n_);
    if (v != WalkVariant::Childs)
      for (int s = 0; s <= r; ++s) regs_.B.push_back(c_.alloc(n_ + 1, "B" + std::to_string(s)));
    for (int s = 0; s < r && wbits_ > 0; ++s) regs_.W.push_back(c_.alloc(wbits_, "W" + std::to_string(s)));
    for (int s = 0; s < r; ++s) regs_.F.push_back(c_.alloc(1, "F" + std::to_string(s)));
    state_qubits_ = c_.num_qubits();
  }

  void prewalk() {
    const int gw = so_.g_width;
    for (int s = 0; s < r_ && wbits_ > 0; ++s)
      add_uniform(c_, regs_.W[s], static_cast<uint64_t>(spec_->m()), ab_, "prep.w");
    const int dbits = ceil_log2(spec_->d());
    std::vector<Reg> G;
    for (int s = 0; s < r_; ++s) {
      G.push_back(c_.alloc(gw, "G" + std::to_string(s)));
      add_uniform(c_, low(G[s], dbits), static_cast<uint64_t>(spec_->d()), ab_, "prep.t");
    }
    std::vector<Reg> SP(r_);
    if (so_.uses_op)
      for (int s = 0; s < r_; ++s) SP[s] = c_.alloc(n_, "SP" + std::to_string(s));
    const size_t op_begin = c_.size();
    add_op_queries(SP);
    const size_t op_end = c_.size();
    for (int s = 0; s < r_; ++s) add_gmap(G[s], SP[s]);
    if (r_ >= 1) add_prefixes(G);
    // L^{-1} erases G_s from (A_s, A_{s+1}); even and odd edges share A's.
    for (int parity = 0; parity < 2; ++parity)
      for (int s = parity; s < r_; s += 2) add_erase(G[s], SP[s], s);
    c_.append_inverse_range(op_begin, op_end);
  }

  void reweight() {
    const int cb = b_ / 2;
    const bool childs = v_ == WalkVariant::Childs;
    if (!childs)
      for (int s = 0; s <= r_; ++s)
        for (int i = 0; i < n_; ++i) c_.add_gate("copy.ab", {regs_.A[s][i], regs_.B[s][i]}, gates::CNOT());
    auto oracle = std::make_shared<EntryOracle>(spec_, b_, v_ == WalkVariant::Extended);
    std::vector<Reg> D, Phi, Th, P;
    std::vector<int> tgt;
    for (int s = 0; s < r_; ++s) {
      D.push_back(c_.alloc(b_, "D" + std::to_string(s)));
      Phi.push_back(c_.alloc(ab_, "PHI" + std::to_string(s)));
      Th.push_back(c_.alloc(ab_, "THETA" + std::to_string(s)));
      P.push_back(c_.alloc(1, "PH" + std::to_string(s)));
      tgt.push_back(childs ? regs_.A[s + 1][n_] : regs_.B[s + 1][n_]);
    }
    const int n = n_;
    std::vector<Node> queries;
    for (int s = 0; s < r_; ++s) {
      const Reg& kreg = childs ? regs_.A[s + 1] : regs_.B[s + 1];
      Reg sup = concat(concat(low(regs_.A[s], n), low(kreg, n)), D[s]);
      queries.push_back(query_node(kOH, "oh", sup, [oracle, n, cb](BitKey& k) {
        auto [re, im] = oracle->code(k.field(0, n), k.field(n, n));
        k.xor_field(2 * n, cb, oracle->pack(re));
        k.xor_field(2 * n + cb, cb, oracle->pack(im));
      }));
      c_.add(queries.back());
    }
    const int ab = ab_;
    std::vector<Node> angles;
    for (int s = 0; s < r_; ++s) {
      Reg sup = concat(concat(D[s], Phi[s]), Th[s]);
      angles.push_back(xor_node("angles", sup,
                                [oracle, cb, ab](BitKey& k) {
                                  const int64_t re = oracle->unpack(k.field(0, cb));
                                  const int64_t im = oracle->unpack(k.field(cb, cb));
                                  const cplx q = oracle->decode(re, im);
                                  double amp, psi = 0.0;
                                  if (re < 0 && im == 0) {
                                    amp = std::sqrt(std::abs(q.real()));
                                  } else {
                                    const cplx sq = principal_sqrt(std::conj(q));
                                    amp = std::abs(sq);
                                    psi = std::arg(sq);
                                  }
                                  const double phi = 2.0 * std::acos(std::min(1.0, amp));
                                  k.xor_field(2 * cb, ab, angle_code(phi, ab));
                                  k.xor_field(2 * cb + ab, ab, angle_code(-psi, ab));
                                },
                                arithmetic_cost(cb)));
      c_.add(angles.back());
      c_.add(xor_node("flag", concat(D[s], regs_.F[s]),
                      [cb](BitKey& k) {
                        const bool neg = ((k.field(0, cb) >> (cb - 1)) & 1) && k.field(cb, cb) == 0;
                        if (neg) k.flip(2 * cb);
                      },
                      arithmetic_cost(cb)));
    }
    for (int s = 0; s < r_; ++s) {
      c_.add(mux_rotation_node(Axis::Y, Phi[s], tgt[s], 1));
      c_.add(mux_rotation_node(Axis::Z, Th[s], tgt[s], 1));
      c_.add(mux_rotation_node(Axis::Z, Th[s], P[s][0], 1));
    }
    for (auto& a : angles) c_.add(a);
    for (auto& q : queries) c_.add(q);
  }

  // S~: reverse order of (A_0..A_r, B_0..B_r), reverse W and F, then Z on
  // every flag so negative real entries keep their sign.
  Circuit swap_circuit() const {
    Circuit s(c_.num_qubits());
    auto swap_regs = [&s](const Reg& a, const Reg& b) {
      for (size_t i = 0; i < a.size(); ++i) s.add_gate("swap", {a[i], b[i]}, gates::SWAP());
    };
    if (v_ == WalkVariant::Childs) {
      swap_regs(regs_.A[0], regs_.A[1]);
    } else {
      for (int i = 0; i <= r_; ++i) swap_regs(regs_.A[i], regs_.B[r_ - i]);
    }
    for (int i = 0; i < r_ - 1 - i; ++i) {
      if (wbits_ > 0) swap_regs(regs_.W[i], regs_.W[r_ - 1 - i]);
      swap_regs(regs_.F[i], regs_.F[r_ - 1 - i]);
    }
    for (const Reg& f : regs_.F) s.add_gate("flag.z", f, gates::Z());
    return s;
  }

  Circuit& circuit() { return c_; }
  const WalkRegisters& regs() const { return regs_; }
  int state_qubits() const { return state_qubits_; }
  int declared() const { return state_qubits_ - n_ - r_; }

 private:
  void add_op_queries(const std::vector<Reg>& SP) {
    if (!so_.uses_op) return;
    const int n = n_, wb = wbits_;
    auto so = spec_->structure();
    auto s_of = so.s_of;
    for (int s = 0; s < r_; ++s) {
      Reg wreg = wb > 0 ? regs_.W[s] : Reg{};
      c_.add(query_node(kOP, "op", concat(wreg, SP[s]), [s_of, wb, n](BitKey& k) {
        const uint64_t w = wb > 0 ? k.field(0, wb) : 0;
        k.xor_field(wb, n, s_of(w));
      }));
    }
  }

  void add_gmap(const Reg& G, const Reg& SP) {
    const int gw = so_.g_width, n = n_;
    const bool op = so_.uses_op;
    auto fwd = so_.g_map, inv = so_.g_unmap;
    c_.add(perm_node("gmap", concat(G, SP),
                     [fwd, gw, n, op](BitKey& k) { k.set_field(0, gw, fwd(k.field(0, gw), op ? k.field(gw, n) : 0)); },
                     [inv, gw, n, op](BitKey& k) { k.set_field(0, gw, inv(k.field(0, gw), op ? k.field(gw, n) : 0)); },
                     arithmetic_cost(gw)));
  }

  void add_prefixes(const std::vector<Reg>& G) {
    const int gw = so_.g_width, n = n_;
    // inst[i][k]: the k-th instance of G_i; prefix s reads inst[i][s-1-i].
    std::vector<std::vector<Reg>> inst(r_);
    std::vector<Reg> j0{low(regs_.A[0], n)};
    const size_t fan_begin = c_.size();
    for (int i = 0; i < r_; ++i) {
      inst[i].push_back(G[i]);
      std::vector<Reg> extra;
      for (int k = 1; k < r_ - i; ++k) extra.push_back(c_.alloc(gw, ""));
      if (!extra.empty()) add_copy(c_, G[i], extra);
      inst[i].insert(inst[i].end(), extra.begin(), extra.end());
    }
    {
      std::vector<Reg> extra;
      for (int k = 1; k < r_; ++k) extra.push_back(c_.alloc(n, ""));
      if (!extra.empty()) add_copy(c_, j0[0], extra);
      j0.insert(j0.end(), extra.begin(), extra.end());
    }
    const size_t fan_end = c_.size();
    std::vector<Reg> root(r_ + 1);
    const size_t tree_begin = c_.size();
    for (int s = 1; s <= r_; ++s) {
      std::vector<Reg> operands;
      for (int i = 0; i < s; ++i) operands.push_back(inst[i][s - 1 - i]);
      root[s] = add_reduce_tree(c_, so_.compose, operands);
    }
    const size_t tree_end = c_.size();
    auto f = so_.f;
    for (int s = 1; s <= r_; ++s) {
      c_.add(xor_node("f", concat(concat(j0[s - 1], root[s]), low(regs_.A[s], n)),
                      [f, n, gw](BitKey& k) { k.xor_field(n + gw, n, f(k.field(0, n), k.field(n, gw))); },
                      arithmetic_cost(n)));
    }
    c_.append_inverse_range(tree_begin, tree_end);
    c_.append_inverse_range(fan_begin, fan_end);
  }

  void add_erase(const Reg& G, const Reg& SP, int s) {
    const int gw = so_.g_width, n = n_;
    const bool op = so_.uses_op;
    auto l_inv = so_.l_inv;
    Reg sup = concat(concat(low(regs_.A[s], n), low(regs_.A[s + 1], n)), G);
    if (op) sup = concat(sup, SP);
    c_.add(xor_node("linv", sup,
                    [l_inv, n, gw, op](BitKey& k) {
                      const uint64_t sv = op ? k.field(2 * n + gw, n) : 0;
                      k.xor_field(2 * n, gw, l_inv(sv, k.field(0, n), k.field(n, n)));
                    },
                    arithmetic_cost(std::max(gw, 1))));
  }

  std::shared_ptr<const HamiltonianSpec> spec_;
  const StructureOracle& so_;
  int r_, b_;
  WalkVariant v_;
  int n_, wbits_ = 0, ab_ = 0, state_qubits_ = 0;
  Circuit c_;
  WalkRegisters regs_;
};

WalkBuild finish(TBuilder& tb, std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant v) {
  WalkBuild w;
  w.spec = std::move(spec);
  w.r = r;
  w.variant = v;
  w.b = b;
  w.regs = tb.regs();
  auto T = std::make_shared<Circuit>(tb.circuit());
  w.T = T;
  w.Tdag = std::make_shared<Circuit>(T->dagger());
  w.S = std::make_shared<Circuit>(tb.swap_circuit());
  w.circuit = T;
  w.declared_ancillas = tb.declared();
  w.flag_ancillas = r;
  w.ancilla_count = T->num_qubits() - w.spec->n();
  return w;
}

}  // namespace

nlohmann::json WalkBuild::to_json() const {
  return {{"variant", variant_name(variant)},
          {"r", r},
          {"m", spec->m()},
          {"b", b},
          {"qubits", circuit->num_qubits()},
          {"ancilla_count", ancilla_count},
          {"declared_ancillas", declared_ancillas},
          {"flag_ancillas", flag_ancillas},
          {"cost", cost().to_json()}};
}

WalkBuild prewalk(std::shared_ptr<const HamiltonianSpec> spec, int r, WalkVariant variant) {
  TBuilder tb(spec, r, kExactBits, variant);
  tb.prewalk();
  return finish(tb, spec, r, kExactBits, variant);
}

WalkBuild build_T(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant) {
  TBuilder tb(spec, r, b, variant);
  tb.prewalk();
  tb.reweight();
  return finish(tb, spec, r, b, variant);
}

Circuit build_S(int num_regs, int width) {
  if (num_regs < 1 || width < 1) throw InvalidInput("build_S: need at least one register of positive width");
  Circuit c;
  std::vector<Reg> regs;
  for (int i = 0; i < num_regs; ++i) regs.push_back(c.alloc(width, "a" + std::to_string(i)));
  for (int i = 0; i < num_regs - 1 - i; ++i)
    for (int q = 0; q < width; ++q) c.add_gate("swap", {regs[i][q], regs[num_regs - 1 - i][q]}, gates::SWAP());
  return c;
}

WalkBuild build_Q(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant) {
  if (variant == WalkVariant::Childs) throw InvalidInput("build_Q: use childs_step for the Childs walk");
  WalkBuild w = build_T(spec, r, b, variant);
  auto q = std::make_shared<Circuit>(*w.T);
  Reg all(static_cast<size_t>(q->num_qubits()));
  for (int i = 0; i < q->num_qubits(); ++i) all[i] = i;
  q->append(*w.S, all);
  q->append(*w.Tdag, all);
  w.circuit = q;
  w.ancilla_count = q->num_qubits() - spec->n();
  return w;
}

Mat walk_target(const HamiltonianSpec& spec, int r, WalkVariant variant) {
  const double scale = variant == WalkVariant::Extended ? spec.m() * spec.d() : spec.d();
  const Mat k = spec.materialize_dense() / scale;
  Mat out = Mat::Identity(k.rows(), k.cols());
  for (int i = 0; i < r; ++i) out = out * k;
  return out;
}

double walk_error_bound(int r, int b) {
  if (b >= kExactBits) return 1e-8;
  return 2.0 * r * rotation_bound_per_edge(b);
}

BlockEncodingCert certify_block(const WalkBuild& w) {
  BlockEncodingCert c;
  c.target_id = w.variant == WalkVariant::Extended ? "(H/(md))^r" : "(H/d)^r";
  c.alpha = 1.0;
  c.ancillas = w.ancilla_count;
  c.eps_bound = walk_error_bound(w.r, w.b);
  c.target = walk_target(*w.spec, w.r, w.variant);
  c.block = extract_block(*w.circuit, w.regs.system);
  c.system = w.regs.system;
  c.circuit = w.circuit;
  c.cost = w.cost();
  measure(c);
  return c;
}

Mat edge_factorized_block(std::shared_ptr<const HamiltonianSpec> spec, int r, int b, WalkVariant variant) {
  if (r < 0) throw InvalidInput("edge_factorized_block: r must be >= 0");
  const auto D = static_cast<Eigen::Index>(spec->N());
  if (r == 0) return Mat::Identity(D, D);
  WalkBuild q1 = build_Q(spec, 1, b, variant);
  const Mat m = extract_block(*q1.circuit, q1.regs.system);
  Mat out = m;
  for (int i = 1; i < r; ++i) out = out * m;
  return out;
}

WalkBuild childs_step(std::shared_ptr<const HamiltonianSpec> spec, int b) {
  WalkBuild w = build_T(spec, 1, b, WalkVariant::Childs);
  const int nt = w.T->num_qubits();
  auto q = std::make_shared<Circuit>(nt);
  Reg all(static_cast<size_t>(nt));
  for (int i = 0; i < nt; ++i) all[i] = i;
  q->append(*w.Tdag, all);
  // 2 Pi - 1 = -(1 - 2|0><0|) on every non-system qubit of T.
  Reg anc;
  for (int i = spec->n(); i < nt; ++i) anc.push_back(i);
  add_reflect_zero(*q, anc);
  q->add_gate("sign", {anc[0]}, gates::GlobalPhase(-1.0));
  q->append(*w.T, all);
  q->append(*w.S, all);
  w.circuit = q;
  w.ancilla_count = q->num_qubits() - spec->n();
  return w;
}

Mat chebyshev(const Mat& x, int r) {
  if (r < 0) throw InvalidInput("chebyshev: r must be >= 0");
  Mat t0 = Mat::Identity(x.rows(), x.cols());
  if (r == 0) return t0;
  Mat t1 = x;
  for (int k = 2; k <= r; ++k) {
    Mat t2 = 2.0 * x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

BlockEncodingCert chebyshev_certify(std::shared_ptr<const HamiltonianSpec> spec, int r, int b) {
  if (r < 0) throw InvalidInput("chebyshev_certify: r must be >= 0");
  WalkBuild step = childs_step(spec, b);
  auto c = std::make_shared<Circuit>(step.circuit->num_qubits());
  Reg all(static_cast<size_t>(c->num_qubits()));
  for (int i = 0; i < c->num_qubits(); ++i) all[i] = i;
  Reg tq(all.begin(), all.begin() + step.T->num_qubits());
  c->append(*step.T, tq);
  for (int i = 0; i < r; ++i) c->append(*step.circuit, all);
  c->append(*step.Tdag, tq);
  BlockEncodingCert cert;
  cert.target_id = "T_r(H/d)";
  cert.alpha = 1.0;
  cert.ancillas = c->num_qubits() - spec->n();
  cert.eps_bound = b >= kExactBits ? 1e-8 : 2.0 * (r + 1) * rotation_bound_per_edge(b);
  cert.target = chebyshev(spec->materialize_dense() / spec->d(), r);
  cert.block = extract_block(*c, step.regs.system);
  cert.system = step.regs.system;
  cert.circuit = c;
  cert.cost = c->cost();
  measure(cert);
  return cert;
}

Reg place_walk(Circuit& host, const WalkBuild& w, const Reg& system, const std::string& tag) {
  const int n = w.spec->n();
  if (static_cast<int>(system.size()) != n) throw InvalidInput("place_walk: system width mismatch");
  Reg placement(static_cast<size_t>(w.T->num_qubits()));
  // The system occupies qubits 0..n-1 of every walk layout.
  for (int i = 0; i < n; ++i) placement[i] = system[i];
  Reg fresh = host.alloc(w.T->num_qubits() - n, tag);
  for (size_t i = 0; i < fresh.size(); ++i) placement[n + i] = fresh[i];
  return placement;
}

void append_walk(Circuit& host, const WalkBuild& w, const Reg& placement, int ctrl) {
  host.append_block(w.T, placement, "walk.T");
  host.append_block(w.S, placement, "walk.S", ctrl >= 0 ? Reg{ctrl} : Reg{});
  host.append_block(w.Tdag, placement, "walk.Tdag");
}

}  // namespace pqw
