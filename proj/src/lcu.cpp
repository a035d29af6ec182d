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

#include "pqw/lcu.hpp"

#include <algorithm>
#include <cmath>

namespace pqw {

double CoefficientSeries::alpha() const {
  double s = 0.0;
  for (const cplx& x : a) s += std::abs(x);
  return s;
}

std::vector<cplx> CoefficientSeries::padded() const {
  std::vector<cplx> p = a;
  p.resize(size_t{1} << s(), 0.0);
  return p;
}

nlohmann::json CoefficientSeries::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const cplx& x : a) j.push_back({x.real(), x.imag()});
  return j;
}

CoefficientSeries CoefficientSeries::from_json(const nlohmann::json& j) {
  CoefficientSeries s;
  try {
    for (const auto& e : j) s.a.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("series json: ") + e.what());
  }
  return s;
}

CoefficientSeries taylor_series(int R) {
  if (R < 1) throw InvalidInput("taylor_series: R must be >= 1");
  CoefficientSeries s;
  cplx term = 1.0;
  for (int r = 0; r < R; ++r) {
    s.a.push_back(term);
    term *= cplx(0, -1) / static_cast<double>(r + 1);
  }
  return s;
}

Reg place_encoding(Circuit& host, const Circuit& c, const Reg& c_system, const Reg& system, const std::string& tag) {
  if (c_system.size() != system.size()) throw InvalidInput("place_encoding: system width mismatch");
  const int nq = c.num_qubits();
  Reg placement(static_cast<size_t>(nq), -1);
  for (size_t i = 0; i < c_system.size(); ++i) placement[c_system[i]] = system[i];
  const int extra = nq - static_cast<int>(system.size());
  Reg fresh = extra > 0 ? host.alloc(extra, tag) : Reg{};
  size_t next = 0;
  for (int& q : placement)
    if (q < 0) q = fresh[next++];
  return placement;
}

BlockEncodingCert be_product(const BlockEncodingCert& u, const BlockEncodingCert& v) {
  if (u.target.rows() != v.target.rows() || u.block.rows() != v.block.rows()) {
    throw InvalidInput("be_product: system dimensions differ");
  }
  BlockEncodingCert out;
  out.target_id = "(" + v.target_id + ")(" + u.target_id + ")";
  out.alpha = u.alpha * v.alpha;
  out.ancillas = u.ancillas + v.ancillas;
  out.eps_bound = u.alpha * v.eps_bound + v.alpha * u.eps_bound;
  out.target = v.target * u.target;
  if (u.circuit && v.circuit && u.system.size() == v.system.size()) {
    auto host = std::make_shared<Circuit>();
    Reg sys = host->alloc(static_cast<int>(u.system.size()), "system");
    Reg pu = place_encoding(*host, *u.circuit, u.system, sys, "u");
    Reg pv = place_encoding(*host, *v.circuit, v.system, sys, "v");
    host->append_block(u.circuit, pu, "be.u");
    host->append_block(v.circuit, pv, "be.v");
    out.circuit = host;
    out.system = sys;
    out.block = extract_block(*host, sys);
    out.cost = host->cost();
  } else {
    out.block = v.block * u.block;
    out.cost = u.cost.then(v.cost);
  }
  measure(out);
  return out;
}

StatePrep state_prep(const CoefficientSeries& series, double eps) {
  const double alpha = series.alpha();
  if (!(alpha > 0.0)) throw InvalidInput("state_prep: all-zero coefficient vector");
  const int s = series.s();
  // Each of the 3s rotations errs by at most pi 2^{-bits-1} in operator norm.
  int bits = kExactAngleBits;
  if (eps > 0.0) bits = std::clamp(static_cast<int>(std::ceil(std::log2(3.0 * s * M_PI / (2.0 * eps)))), 4, kExactAngleBits);
  StatePrep v;
  v.sel = v.circuit.alloc(s, "sel");
  v.angle_bits = bits;
  for (const cplx& x : series.padded()) v.target.push_back(principal_sqrt(x / alpha));
  add_amplitude_prep(v.circuit, v.sel, v.target, bits, "prep.lcu");
  return v;
}

std::vector<cplx> prep_amplitudes(const StatePrep& v) {
  State st = run(v.circuit, BitKey(v.circuit.num_qubits()));
  BitKey mask(v.circuit.num_qubits());
  for (int q : v.sel) mask.set(q, true);
  std::vector<cplx> d(size_t{1} << v.sel.size(), 0.0);
  for (const auto& [k, a] : st.amps())
    if (!k.any_outside(mask)) d[k.read(v.sel)] += a;
  return d;
}

double prep_l2_error(const StatePrep& v) {
  const auto d = prep_amplitudes(v);
  double e = 0.0;
  for (size_t r = 0; r < d.size(); ++r) e += std::norm(d[r] - v.target[r]);
  return std::sqrt(e);
}

WCircuit build_W(const std::vector<WalkBuild>& walks) {
  if (walks.empty()) throw InvalidInput("build_W: no walks");
  const int n = walks[0].spec->n();
  WCircuit w;
  w.system = w.circuit.alloc(n, "system");
  w.sel = w.circuit.alloc(static_cast<int>(walks.size()), "sel");
  for (size_t j = 0; j < walks.size(); ++j) {
    if (walks[j].spec->n() != n) throw InvalidInput("build_W: walks act on different systems");
    if (walks[j].r != (1 << j)) throw InvalidInput("build_W: walk " + std::to_string(j) + " is not the power 2^" + std::to_string(j));
    Reg p = place_walk(w.circuit, walks[j], w.system, "walk" + std::to_string(j));
    append_walk(w.circuit, walks[j], p, w.sel[j]);
  }
  w.walks = walks;
  return w;
}

std::vector<WalkBuild> power_walks(std::shared_ptr<const HamiltonianSpec> spec, int s, int b, WalkVariant variant) {
  std::vector<WalkBuild> out;
  for (int j = 0; j < s; ++j) out.push_back(build_Q(spec, 1 << j, b, variant));
  return out;
}

Mat series_target(const CoefficientSeries& series, const Mat& k) {
  Mat acc = Mat::Zero(k.rows(), k.cols());
  Mat p = Mat::Identity(k.rows(), k.cols());
  for (int r = 0; r < series.R(); ++r) {
    acc += series.a[r] * p;
    p = p * k;
  }
  return acc;
}

std::shared_ptr<Circuit> lcu_circuit(const StatePrep& v, const WCircuit& w) {
  if (v.sel.size() != w.sel.size()) throw InvalidInput("lcu_circuit: select widths differ");
  auto c = std::make_shared<Circuit>(w.circuit.num_qubits());
  Reg placement = place_encoding(*c, v.circuit, v.sel, w.sel, "prep");
  Reg all(static_cast<size_t>(w.circuit.num_qubits()));
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  c->append(v.circuit, placement);
  c->append(w.circuit, all);
  c->append(v.circuit.conjugate().dagger(), placement);
  return c;
}

BlockEncodingCert lcu_combine(const StatePrep& v, const WCircuit& w, const CoefficientSeries& series,
                              const Mat& k_target, double delta, double eps) {
  auto c = lcu_circuit(v, w);
  BlockEncodingCert cert;
  cert.target_id = "sum_r a_r K^r";
  cert.alpha = series.alpha();
  cert.ancillas = c->num_qubits() - static_cast<int>(w.system.size());
  const int R = series.R(), s = series.s();
  cert.eps_bound = cert.alpha * R * delta + cert.alpha * s * eps;
  cert.target = series_target(series, k_target);
  cert.block = extract_block(*c, w.system);
  cert.system = w.system;
  cert.circuit = c;
  cert.cost = c->cost();
  measure(cert);
  return cert;
}

Mat lcu_block(const std::vector<cplx>& d, const std::vector<Mat>& walk_blocks) {
  if (walk_blocks.empty()) throw InvalidInput("lcu_block: no walk blocks");
  if (d.size() != (size_t{1} << walk_blocks.size())) throw InvalidInput("lcu_block: amplitude count must be 2^s");
  const Eigen::Index D = walk_blocks[0].rows();
  Mat acc = Mat::Zero(D, D);
  for (size_t r = 0; r < d.size(); ++r) {
    if (d[r] == cplx(0.0)) continue;
    Mat p = Mat::Identity(D, D);
    for (size_t j = 0; j < walk_blocks.size(); ++j)
      if ((r >> j) & 1) p = walk_blocks[j] * p;
    acc += d[r] * d[r] * p;
  }
  return acc;
}

PrepPairReport prep_pair_check(const std::vector<cplx>& d, const CoefficientSeries& series, double delta) {
  const auto a = series.padded();
  if (d.size() != a.size()) throw InvalidInput("prep_pair_check: amplitude count mismatch");
  PrepPairReport rep;
  const double alpha = series.alpha();
  for (size_t r = 0; r < a.size(); ++r) {
    const cplx c = std::conj(d[r]);
    rep.l1_residual += std::abs(alpha * std::conj(c) * d[r] - a[r]);
  }
  rep.bound = alpha * static_cast<double>(a.size()) * delta;
  rep.pass = rep.l1_residual <= rep.bound + 1e-12;
  return rep;
}

}  // namespace pqw
