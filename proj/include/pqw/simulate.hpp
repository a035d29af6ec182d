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

#ifndef PQW_SIMULATE_HPP
#define PQW_SIMULATE_HPP

#include <memory>
#include <string>
#include <vector>

#include "pqw/lcu.hpp"

namespace pqw {

// R = max(4, ceil(log2(1/eps))); rejects eps outside (0, 1).
int taylor_R(double eps);
// max over `samples` points z on |z| = 1/2 of |e^z - sum_{r<R} z^r / r!|.
double taylor_remainder(int R, int samples = 64);

// alpha_l = 1 / sin(pi / (2(2l+1))), the largest scale l rounds amplify to 1.
double oaa_alpha(int l);
// Smallest l with oaa_alpha(l) >= alpha; throws when alpha exceeds max_l.
int oaa_rounds(double alpha, int max_l = 16);

// Amplifies an (alpha, a, eps)-encoding of a near-unitary to scale 1. With a
// circuit the amplifier U'(R U'^dag R U')^l is built and measured, where U'
// adds one ancilla pre-rotated to alpha/alpha_l and R = 1 - 2 Pi reflects on
// every ancilla; otherwise the same polynomial is evaluated on the unitary
// dilation of the block. `target` of the result is the input's target.
BlockEncodingCert oaa(const BlockEncodingCert& cert, bool use_circuit = true);
// Block of the amplifier evaluated on the dilation [[A, sqrt(1-AA^dag)], [sqrt(1-A^dag A), -A^dag]].
Mat oaa_block(const Mat& a, double alpha, int l);
// Estimate of the constant c in the amplified (1, a+1, c eps) bound: the
// largest ||oaa_block((V + E) / alpha) - V|| / eps over `probes` random E with
// ||E|| = eps. Amplification commutes with unitary conjugation, so the value
// does not depend on V beyond sampling noise.
double oaa_constant(const Mat& v, double alpha, double eps, int probes = 64, uint64_t seed = 1);

struct SimOptions {
  bool half_scaling = true;  // simulate H/2 for time 2t
  int b = 0;                 // oracle bits; 0 derives them from the error budget
  int level = 0;             // 1 full circuits, 2 edge-factorized blocks, 0 auto
  bool build_pipeline = true;
};

struct SimulationPlan {
  double t = 0.0, eps = 0.0;
  bool half_scaling = true;
  double t_sim = 0.0;    // time actually simulated (2t when half scaling)
  double delta_t = 0.0;  // 1 / (md)
  double tau = 0.0;      // md * t_sim
  int full_segments = 0;
  double t_tilde = 0.0;  // length of the trailing fractional segment
  int segments = 0;
  double eps_segment = 0.0;
  int R = 0, s = 0, b = 0, prep_bits = 0, oaa_l = 0, level = 0;
  WalkVariant variant = WalkVariant::Single;
  double walk_eps = 0.0, prep_delta = 0.0;

  nlohmann::json to_json() const;
};
SimulationPlan plan(const HamiltonianSpec& spec, double t, double eps, const SimOptions& opt = {});

struct SegmentResult {
  Mat block;           // scale-1 block after amplification
  double lcu_alpha = 0.0;
  double lcu_measured = 0.0;   // |alpha A - sum a_r K^r|
  double lcu_bound = 0.0;
  double before = 0.0;  // |alpha A - e^{-iK}|
  double after = 0.0;   // |amplified - e^{-iK}|
  std::shared_ptr<const Circuit> circuit;  // the amplified segment, system first
  Reg system;
};
// One segment e^{-i H' dt}, where `spec` already holds the segment's
// Hamiltonian H' and dt = 1/(md).
SegmentResult segment_encoding(std::shared_ptr<const HamiltonianSpec> spec, const SimulationPlan& p);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SimulationReport {
  SimulationPlan plan;
  double measured_error = 0.0;
  double bound = 0.0;
  double oaa_ratio = 0.0;  // after / before on the full segment
  CostProfile cost;
  std::vector<Check> checks;
  Mat unitary;  // not serialized

  bool pass() const;
  nlohmann::json to_json() const;
};

// Evolves the stored (normalized) matrix of `spec`; callers holding the
// physical H pass t * spec.normalization().
SimulationReport simulate(const HamiltonianSpec& spec, double t, double eps, const SimOptions& opt = {});
// The pipeline of `segments` copies of a segment circuit as sequential blocks.
Circuit pipeline_circuit(const SegmentResult& seg, int segments);

constexpr const char* kReportSchema = "pqw.report/1";

}  // namespace pqw

#endif  // PQW_SIMULATE_HPP
