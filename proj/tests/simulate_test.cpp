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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pqw/cli.hpp"
#include "pqw/simulate.hpp"
#include "test_util.hpp"

namespace pqw {
namespace {

using SpecPtr = std::shared_ptr<const HamiltonianSpec>;
SpecPtr share(HamiltonianSpec s) { return std::make_shared<const HamiltonianSpec>(std::move(s)); }
HamiltonianSpec example() { return HamiltonianSpec::band(band_example_matrix(), 3); }

// Independent remainder: |e^z - sum_{r<R} z^r/r!| on 64 points of |z| = 1/2,
// with the tail summed directly instead of subtracted.
double tail_remainder(int R) {
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const cplx z = std::polar(0.5, 2.0 * M_PI * k / 64);
    cplx term = 1.0, tail = 0.0;
    for (int r = 0; r < R + 40; ++r) {
      if (r >= R) tail += term;
      term *= z / static_cast<double>(r + 1);
    }
    worst = std::max(worst, std::abs(tail));
  }
  return worst;
}

// An (alpha, 1, 0)-encoding of V: one ancilla rotated to amplitude 1/alpha.
BlockEncodingCert scaled_unitary(const Mat& v, double alpha) {
  const int n = static_cast<int>(std::log2(static_cast<double>(v.rows())));
  auto c = std::make_shared<Circuit>();
  Reg sys = c->alloc(n, "system");
  Reg anc = c->alloc(1, "anc");
  c->add_gate("enc.rot", anc, gates::Rot(Axis::Y, 2.0 * std::acos(1.0 / alpha)));
  c->add_gate("enc.v", sys, gates::from_matrix(v));
  BlockEncodingCert cert;
  cert.alpha = alpha;
  cert.ancillas = 1;
  cert.target = v;
  cert.block = extract_block(*c, sys);
  cert.system = sys;
  cert.circuit = c;
  measure(cert);
  return cert;
}

TEST(TaylorR, Examples) {
  EXPECT_EQ(taylor_R(std::ldexp(1.0, -4)), 4);
  EXPECT_EQ(taylor_R(1e-3), 10);
  EXPECT_EQ(taylor_R(0.5), 4);
  EXPECT_EQ(taylor_R(std::ldexp(1.0, -20)), 20);
  for (double bad : {0.0, 1.0, 1.5, -0.1}) EXPECT_THROW(taylor_R(bad), InvalidInput);
}

TEST(TaylorR, RemainderWithinTwoToMinusR) {
  for (int k = 4; k <= 20; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const int R = taylor_R(eps);
    const double rem = taylor_remainder(R);
    EXPECT_LE(rem, std::ldexp(1.0, -R)) << k;
    EXPECT_LE(std::ldexp(1.0, -R), eps);
    EXPECT_NEAR(rem, tail_remainder(R), 1e-15 + 1e-9 * rem);
  }
}

TEST(Amplification, Thresholds) {
  EXPECT_DOUBLE_EQ(oaa_alpha(0), 1.0);
  EXPECT_NEAR(oaa_alpha(1), 2.0, 1e-15);
  EXPECT_EQ(oaa_rounds(1.0), 0);
  EXPECT_EQ(oaa_rounds(2.0), 1);
  EXPECT_EQ(oaa_rounds(8.0 / 3.0), 2);
  EXPECT_EQ(oaa_rounds(std::exp(1.0)), 2);
  EXPECT_THROW(oaa_rounds(100.0, 3), InvalidInput);
}

TEST(Amplification, HalfScaleOneRound) {
  std::mt19937_64 rng(43);
  const Mat v = testing::random_unitary(rng, 2);
  const auto cert = scaled_unitary(v, 2.0);
  EXPECT_LT(spectral_distance(cert.block, 0.5 * v), 1e-14);
  const auto viaCircuit = oaa(cert, true);
  const auto viaDilation = oaa(cert, false);
  EXPECT_LT(spectral_distance(viaCircuit.block, v), 1e-8);
  EXPECT_LT(spectral_distance(viaDilation.block, v), 1e-8);
  EXPECT_EQ(viaCircuit.ancillas, 2);
  EXPECT_DOUBLE_EQ(viaCircuit.alpha, 1.0);
}

TEST(Amplification, UnitScaleIsUntouched) {
  std::mt19937_64 rng(47);
  const Mat v = testing::random_unitary(rng, 4);
  const auto out = oaa(scaled_unitary(v, 1.0), true);
  EXPECT_LT(spectral_distance(out.block, v), 1e-12);
}

TEST(Amplification, EightThirdsCircuitAndDilationAgree) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 3; ++i) {
    const Mat v = testing::random_unitary(rng, 4);
    const auto cert = scaled_unitary(v, 8.0 / 3.0);
    const auto a = oaa(cert, true), b = oaa(cert, false);
    EXPECT_LT(a.measured, 1e-8);
    EXPECT_LT(spectral_distance(a.block, b.block), 1e-10);
    EXPECT_EQ(a.circuit->label_depth("enc.v"), 5);  // 2l + 1 uses of U and U^dag
  }
}

TEST(Amplification, ConstantIsStable) {
  std::mt19937_64 rng(59);
  std::vector<double> cs;
  for (int i = 0; i < 10; ++i) cs.push_back(oaa_constant(testing::random_unitary(rng, 4), 8.0 / 3.0, 1e-6, 64, 100 + i));
  double mean = 0.0;
  for (double c : cs) mean += c / cs.size();
  for (double c : cs) EXPECT_LE(std::abs(c - mean), 0.2 * mean) << c << " mean " << mean;
  EXPECT_GT(mean, 0.0);
}

TEST(Plan, Bookkeeping) {
  const auto spec = example();
  const auto p = plan(spec, 0.25, 1e-2);
  EXPECT_DOUBLE_EQ(p.t_sim, 0.5);
  EXPECT_DOUBLE_EQ(p.delta_t * spec.m() * spec.d(), 1.0);
  EXPECT_DOUBLE_EQ(p.tau, 1.5);
  EXPECT_EQ(p.full_segments, 1);
  EXPECT_NEAR(p.t_tilde, 0.5 - 1.0 / 3.0, 1e-15);
  EXPECT_EQ(p.segments, 2);
  EXPECT_DOUBLE_EQ(p.eps_segment, 5e-3);
  EXPECT_EQ(p.R, taylor_R(2.5e-3));
  EXPECT_EQ(p.s, ceil_log2(p.R));
  EXPECT_EQ(p.oaa_l, 2);
  EXPECT_EQ(p.variant, WalkVariant::Single);
  EXPECT_GE(p.b, 16);
  const auto j = p.to_json();
  EXPECT_EQ(j.at("segments"), 2);
  const auto q = plan(spec, 0.25, 1e-2, {.half_scaling = false});
  EXPECT_DOUBLE_EQ(q.t_sim, 0.25);
  EXPECT_THROW(plan(spec, 1.0, 0.1), InvalidInput);
  EXPECT_THROW(plan(spec, -1.0, 1e-2), InvalidInput);
  EXPECT_THROW(plan(spec, 1.0, 1e-2, {.b = 7}), InvalidInput);
  EXPECT_EQ(plan(HamiltonianSpec::pauli_sum(2, {{0.5, "XI"}, {0.5, "ZZ"}}), 1.0, 1e-2).variant, WalkVariant::Extended);
}

TEST(Plan, FourTermSeriesHasAlphaEightThirds) {
  EXPECT_NEAR(taylor_series(taylor_R(std::ldexp(1.0, -4))).alpha(), 8.0 / 3.0, 1e-15);
}

TEST(Simulate, ZeroTimeIsIdentity) {
  const auto rep = simulate(example(), 0.0, 1e-2);
  EXPECT_LT(rep.measured_error, 1e-12);
  EXPECT_EQ(rep.plan.segments, 0);
  EXPECT_TRUE(rep.pass());
}

TEST(Simulate, PauliZOneSegment) {
  const auto rep = simulate(HamiltonianSpec::pauli_product("Z"), 0.5, 1e-3);
  EXPECT_EQ(rep.plan.segments, 1);
  EXPECT_LE(rep.measured_error, 1e-3);
  EXPECT_TRUE(rep.pass());
}

TEST(Simulate, PauliZAtPi) {
  const auto rep = simulate(HamiltonianSpec::pauli_product("Z"), M_PI, 1e-3);
  Mat closed = Mat::Zero(2, 2);
  closed(0, 0) = std::exp(cplx(0, -M_PI));
  closed(1, 1) = std::exp(cplx(0, M_PI));
  EXPECT_LE(spectral_distance(rep.unitary, closed), 1e-3);
  EXPECT_TRUE(rep.pass());
}

TEST(Simulate, ExampleBandOneSegment) {
  const auto spec = example();
  const auto rep = simulate(spec, 1.0 / 6.0, 1e-2);
  EXPECT_EQ(rep.plan.segments, 1);
  EXPECT_LE(spectral_distance(rep.unitary, testing::expm_taylor(cplx(0, -1.0 / 6.0) * spec.materialize_dense())), 1e-2);
  EXPECT_TRUE(rep.pass());
}

TEST(Simulate, FractionalSegment) {
  const auto rep = simulate(example(), 0.25, 1e-2, {.level = 2});
  EXPECT_GT(rep.plan.t_tilde, 0.0);
  EXPECT_LE(rep.measured_error, 1e-2);
  EXPECT_TRUE(rep.pass());
}

TEST(Simulate, HalfScalingIdentity) {
  const auto spec = example();
  const auto a = simulate(spec, 0.3, 1e-2, {.level = 2});
  const auto b = simulate(spec.scaled(0.5), 0.6, 1e-2, {.half_scaling = false, .level = 2});
  EXPECT_LT(spectral_distance(a.unitary, b.unitary), 1e-10);
}

TEST(Simulate, LevelsAgree) {
  const auto spec = HamiltonianSpec::pauli_product("XZ", 0.8);
  const auto a = simulate(spec, 0.5, 1e-2, {.level = 1});
  const auto b = simulate(spec, 0.5, 1e-2, {.level = 2});
  EXPECT_EQ(a.plan.level, 1);
  EXPECT_LT(spectral_distance(a.unitary, b.unitary), 1e-10);
  EXPECT_EQ(a.cost, b.cost);
}

TEST(Simulate, ErrorLinearInSegments) {
  const auto spec = example();
  for (int tau : {1, 2, 4}) {
    const SimOptions opt{.level = 2};
    const double t = tau / 6.0;
    const auto rep = simulate(spec, t, 1e-2, opt);
    ASSERT_EQ(rep.plan.segments, tau);
    const auto seg = segment_encoding(share(spec.scaled(0.5)), rep.plan);
    EXPECT_LE(rep.measured_error, tau * seg.after + 1e-10) << tau;
    EXPECT_TRUE(rep.pass()) << tau;
  }
}

TEST(Simulate, QueryDepthPerSegmentStable) {
  const auto spec = example();
  std::vector<double> c;
  for (int tau : {1, 2, 4}) {
    const auto rep = simulate(spec, tau / 6.0, 1e-2, {.level = 2});
    // Depth grows with ceil(log2 R), so normalize by the asymptotic tau log(tau / eps).
    c.push_back(static_cast<double>(rep.cost.depth[kOH]) / (tau * std::log2(tau / 1e-2)));
  }
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  EXPECT_LE(*hi, 1.2 * *lo);
}

TEST(Simulate, ReportJson) {
  const auto rep = simulate(HamiltonianSpec::pauli_product("Z"), 0.5, 1e-2);
  const auto j = rep.to_json();
  for (const char* k : {"plan", "measured_error", "bound", "cost", "checks", "pass", "oaa_ratio"}) EXPECT_TRUE(j.contains(k)) << k;
  for (const char* k : {"gate_depth", "gate_size", "oh_depth", "oh_size", "op_depth", "op_size"})
    EXPECT_TRUE(j.at("cost").contains(k)) << k;
  EXPECT_EQ(j.at("pass"), true);
}

}  // namespace
}  // namespace pqw
