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

#ifndef PQW_LCU_HPP
#define PQW_LCU_HPP

#include <algorithm>
#include <memory>
#include <vector>

#include "pqw/cert.hpp"
#include "pqw/walk.hpp"

namespace pqw {

struct CoefficientSeries {
  std::vector<cplx> a;

  int R() const { return static_cast<int>(a.size()); }
  int s() const { return std::max(1, ceil_log2(R())); }  // select width, at least 1
  double alpha() const;  // l1 norm
  // Zero-padded to 2^s entries.
  std::vector<cplx> padded() const;
  nlohmann::json to_json() const;
  static CoefficientSeries from_json(const nlohmann::json& j);
};

// a_r = (-i)^r / r! for r < R.
CoefficientSeries taylor_series(int R);

// Certificate for the product of encodings of K^n (u) and K^m (v). When both
// carry circuits the product circuit is built on disjoint ancillas and its
// block measured; otherwise the blocks are multiplied.
// Maps a circuit's qubits into `host`: c_system onto `system`, every other
// qubit onto fresh host qubits. Returns the placement.
Reg place_encoding(Circuit& host, const Circuit& c, const Reg& c_system, const Reg& system, const std::string& tag);

BlockEncodingCert be_product(const BlockEncodingCert& u, const BlockEncodingCert& v);

struct StatePrep {
  Circuit circuit;
  Reg sel;
  int angle_bits = 0;
  std::vector<cplx> target;  // sqrt(a_r / alpha), principal branch, padded
};
// Angle precision chosen so the l2 error is at most eps (eps <= 0 selects
// the exact 52-bit mode).
StatePrep state_prep(const CoefficientSeries& series, double eps);
// Amplitudes of V|0> on the select register (work qubits projected to 0).
std::vector<cplx> prep_amplitudes(const StatePrep& v);
double prep_l2_error(const StatePrep& v);

struct WCircuit {
  Circuit circuit;
  Reg system, sel;
  std::vector<WalkBuild> walks;
};
// Select-controlled chain: walk j (an encoding of K^{2^j}) acts iff bit j of
// the select register is set. Every walk gets its own ancillas.
WCircuit build_W(const std::vector<WalkBuild>& walks);
// The s walks Q^(2^j) (or Q^(2^j, m)) for j < s.
std::vector<WalkBuild> power_walks(std::shared_ptr<const HamiltonianSpec> spec, int s, int b, WalkVariant variant);

// (V^T x 1) W (V x 1) on the layout of w (prep work qubits appended).
std::shared_ptr<Circuit> lcu_circuit(const StatePrep& v, const WCircuit& w);
// The certificate of lcu_circuit: an encoding of sum_r a_r K^r with alpha = |a|_1.
// V^T rather than V^dag keeps complex phases: the block is sum_r d_r^2 K^r.
// `delta` is the state-prep l2 error and `eps` the walk precision.
BlockEncodingCert lcu_combine(const StatePrep& v, const WCircuit& w, const CoefficientSeries& series,
                              const Mat& k_target, double delta, double eps);

// Same block from constituent blocks: sum_r d_r^2 prod_{j: r_j = 1} M_j.
Mat lcu_block(const std::vector<cplx>& d, const std::vector<Mat>& walk_blocks);
Mat series_target(const CoefficientSeries& series, const Mat& k);

struct PrepPairReport {
  double l1_residual = 0.0;  // sum_r |alpha c_r^* d_r - a_r|
  double bound = 0.0;        // alpha R delta
  bool pass = false;
};
// With the transpose construction c_r = conj(d_r).
PrepPairReport prep_pair_check(const std::vector<cplx>& d, const CoefficientSeries& series, double delta);

}  // namespace pqw

#endif  // PQW_LCU_HPP
