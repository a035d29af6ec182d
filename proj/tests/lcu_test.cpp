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

#include <chrono>
#include <cmath>
#include <random>

#include "pqw/cli.hpp"
#include "pqw/lcu.hpp"
#include "test_util.hpp"

namespace pqw {
namespace {

using SpecPtr = std::shared_ptr<const HamiltonianSpec>;
SpecPtr share(HamiltonianSpec s) { return std::make_shared<const HamiltonianSpec>(std::move(s)); }

CoefficientSeries series_of(std::vector<cplx> a) { return CoefficientSeries{std::move(a)}; }

double l2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double e = 0.0;
  for (size_t i = 0; i < a.size(); ++i) e += std::norm(a[i] - b[i]);
  return std::sqrt(e);
}

BlockEncodingCert plain(double alpha, int ancillas, double eps, const Mat& block) {
  BlockEncodingCert c;
  c.alpha = alpha;
  c.ancillas = ancillas;
  c.eps_bound = eps;
  c.block = block;
  c.target = alpha * block;
  return c;
}

// Block of W with the select register fixed to `sel`.
Mat select_branch(const WCircuit& w, uint64_t sel) {
  const auto N = static_cast<Eigen::Index>(uint64_t{1} << w.system.size());
  Mat out = Mat::Zero(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    BitKey in(w.circuit.num_qubits());
    in.write(w.system, static_cast<uint64_t>(j));
    in.write(w.sel, sel);
    State s = run(w.circuit, in);
    for (const auto& [k, a] : s.amps()) {
      BitKey rest = k;
      rest.write(w.system, 0);
      rest.write(w.sel, 0);
      if (k.read(w.sel) == sel && rest == BitKey(w.circuit.num_qubits()))
        out(static_cast<Eigen::Index>(k.read(w.system)), j) += a;
    }
  }
  return out;
}

TEST(Series, TaylorCoefficients) {
  const auto s = taylor_series(4);
  ASSERT_EQ(s.R(), 4);
  EXPECT_EQ(s.s(), 2);
  EXPECT_EQ(s.a[0], cplx(1));
  EXPECT_EQ(s.a[1], cplx(0, -1));
  EXPECT_EQ(s.a[2], cplx(-0.5));
  EXPECT_NEAR(std::abs(s.a[3] - cplx(0, 1.0 / 6)), 0.0, 1e-16);
  EXPECT_NEAR(s.alpha(), 8.0 / 3.0, 1e-15);
  for (int R = 1; R <= 16; ++R) EXPECT_LT(taylor_series(R).alpha(), std::exp(1.0));  // rounds to e beyond
  const auto back = CoefficientSeries::from_json(s.to_json());
  EXPECT_EQ(back.a, s.a);
  EXPECT_EQ(s.padded().size(), 4u);
  EXPECT_EQ(taylor_series(5).padded().size(), 8u);
}

TEST(Product, IdentityEncodings) {
  const Mat i2 = Mat::Identity(2, 2);
  const auto p = be_product(plain(1, 0, 0, i2), plain(1, 0, 0, i2));
  EXPECT_EQ(p.eps_bound, 0.0);
  EXPECT_LT(spectral_distance(p.block, i2), 1e-15);
}

TEST(Product, BoundArithmetic) {
  const Mat i2 = Mat::Identity(2, 2);
  const auto p = be_product(plain(1, 2, 1e-6, i2), plain(1, 3, 2e-6, i2));
  EXPECT_NEAR(p.eps_bound, 3e-6, 1e-20);
  EXPECT_EQ(p.ancillas, 5);
  EXPECT_THROW(be_product(plain(1, 0, 0, i2), plain(1, 0, 0, Mat::Identity(4, 4))), InvalidInput);
}

TEST(Product, WalkSquaresToIdentity) {
  auto spec = share(HamiltonianSpec::pauli_product("Z"));
  const auto q = certify_block(build_Q(spec, 1, kExactBits));
  const auto p = be_product(q, q);
  ASSERT_TRUE(p.circuit);
  EXPECT_LT(spectral_distance(p.block, Mat::Identity(2, 2)), 1e-8);
  EXPECT_TRUE(p.pass());
}

TEST(Product, Associative) {
  auto spec = share(HamiltonianSpec::band(band_example_matrix(), 3));
  const auto u = certify_block(build_Q(spec, 1, 16));
  const auto v = certify_block(build_Q(spec, 1, 24));
  const auto w = certify_block(build_Q(spec, 2, 16));
  const auto left = be_product(be_product(u, v), w);
  const auto right = be_product(u, be_product(v, w));
  EXPECT_NEAR(left.eps_bound, right.eps_bound, 1e-18);
  EXPECT_LT(spectral_distance(left.block, right.block), 1e-10);
  EXPECT_TRUE(left.pass());
  EXPECT_TRUE(right.pass());
}

TEST(StatePrep, UniformSuperposition) {
  const auto v = state_prep(series_of({1, 1, 1, 1}), 0.0);
  for (const cplx& d : prep_amplitudes(v)) EXPECT_NEAR(std::abs(d - 0.5), 0.0, 1e-14);
}

TEST(StatePrep, ComplexPhaseUsesPrincipalRoot) {
  const auto series = series_of({1, cplx(0, -1)});
  EXPECT_DOUBLE_EQ(series.alpha(), 2.0);
  const auto v = state_prep(series, 0.0);
  const auto d = prep_amplitudes(v);
  const cplx e = std::polar(1.0, -M_PI / 4);
  EXPECT_NEAR(std::abs(d[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d[1] - e / std::sqrt(2.0)), 0.0, 1e-14);
}

TEST(StatePrep, TaylorEightTerms) {
  const auto series = taylor_series(8);
  const auto v = state_prep(series, 0.0);
  std::vector<cplx> ref;
  for (const cplx& a : series.a) ref.push_back(principal_sqrt(a / series.alpha()));
  EXPECT_LT(l2(prep_amplitudes(v), ref), 1e-8);
}

TEST(StatePrep, RandomVectorsExact) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> len(1, 32);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> a(static_cast<size_t>(len(rng)));
    for (auto& x : a) x = cplx(nd(rng), nd(rng));
    const auto v = state_prep(series_of(a), 0.0);
    EXPECT_LE(prep_l2_error(v), 1e-10) << trial;
  }
}

TEST(StatePrep, PrecisionFollowsEps) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    std::vector<cplx> a(16);
    for (auto& x : a) x = cplx(nd(rng), nd(rng));
    const auto v = state_prep(series_of(a), eps);
    EXPECT_LE(prep_l2_error(v), eps);
    EXPECT_LT(v.angle_bits, kExactAngleBits);
  }
}

TEST(StatePrep, ZeroInteriorCoefficients) {
  const auto v = state_prep(series_of({1, 0, 0, cplx(0, 1)}), 0.0);
  EXPECT_LE(prep_l2_error(v), 1e-12);
  EXPECT_THROW(state_prep(series_of({0, 0}), 0.0), InvalidInput);
}

TEST(W, SelectBranches) {
  auto spec = share(HamiltonianSpec::band(band_example_matrix(), 3));
  const auto w = build_W(power_walks(spec, 2, kExactBits, WalkVariant::Single));
  const Mat k = spec->materialize_dense() / 3.0;
  EXPECT_LT(spectral_distance(select_branch(w, 0), Mat::Identity(4, 4)), 1e-8);
  EXPECT_LT(spectral_distance(select_branch(w, 1), k), 1e-8);
  EXPECT_LT(spectral_distance(select_branch(w, 2), k * k), 1e-8);
  EXPECT_LT(spectral_distance(select_branch(w, 3), k * k * k), 1e-8);
}

TEST(W, DepthIsSumOfConstituents) {
  auto spec = share(HamiltonianSpec::pauli_product("XZ"));
  const auto walks = power_walks(spec, 3, 16, WalkVariant::Single);
  const auto w = build_W(walks);
  EXPECT_EQ(w.circuit.cost().depth[kOH], 12);
  CostProfile expected;
  for (const auto& q : walks)
    expected = expected.then(q.T->cost()).then(q.S->cost().scaled(cost_config().controlled_factor)).then(q.Tdag->cost());
  EXPECT_EQ(w.circuit.cost(), expected);
  EXPECT_THROW(build_W({walks[0], walks[2]}), InvalidInput);
}

TEST(Combine, SingleTermIsIdentity) {
  auto spec = share(HamiltonianSpec::pauli_product("Z"));
  const auto series = series_of({1});
  const auto v = state_prep(series, 0.0);
  const auto w = build_W(power_walks(spec, series.s(), kExactBits, WalkVariant::Single));
  const auto cert = lcu_combine(v, w, series, spec->materialize_dense(), 0.0, 1e-8);
  EXPECT_DOUBLE_EQ(cert.alpha, 1.0);
  EXPECT_LT(spectral_distance(cert.block, Mat::Identity(2, 2)), 1e-8);
}

TEST(Combine, IdentityPlusZ) {
  auto spec = share(HamiltonianSpec::pauli_product("Z"));
  const auto series = series_of({1, 1});
  const auto v = state_prep(series, 0.0);
  const auto w = build_W(power_walks(spec, 1, kExactBits, WalkVariant::Single));
  const auto cert = lcu_combine(v, w, series, spec->materialize_dense(), 0.0, 1e-8);
  EXPECT_DOUBLE_EQ(cert.alpha, 2.0);
  Mat diag10 = Mat::Zero(2, 2);
  diag10(0, 0) = 1.0;
  EXPECT_LT(spectral_distance(cert.block, diag10), 1e-8);
  EXPECT_LT(spectral_distance(cert.alpha * cert.block, cert.target), 1e-8);
}

TEST(Combine, TaylorFourTermsOnHalfZ) {
  auto spec = share(HamiltonianSpec::pauli_product("Z", 0.5));
  const auto series = taylor_series(4);
  const auto v = state_prep(series, 1e-6);
  const auto w = build_W(power_walks(spec, 2, 24, WalkVariant::Single));
  const double delta = prep_l2_error(v), eps = walk_error_bound(2, 24);
  const auto cert = lcu_combine(v, w, series, spec->materialize_dense(), delta, eps);
  EXPECT_TRUE(cert.pass()) << cert.measured << " " << cert.eps_bound;
  // The truncated series sits within 2^-4 of the exponential on |z| <= 1/2.
  const Mat exact = expm_hermitian(spec->materialize_dense(), 1.0);
  EXPECT_LE(spectral_distance(cert.target, exact), std::ldexp(1.0, -4));
}

// Random series on small systems; the measured block must respect the
// certificate bound, and agree with the block assembled from constituents.
TEST(Combine, RandomInstancesWithinBound) {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> len(2, 4);
  const std::vector<SpecPtr> specs{share(HamiltonianSpec::pauli_product("Z", 0.5)),
                                   share(HamiltonianSpec::pauli_product("X", 0.8)),
                                   share(HamiltonianSpec::pauli_product("XZ")),
                                   share(HamiltonianSpec::band(band_example_matrix(), 3)),
                                   share(HamiltonianSpec::local_clause(1, {1, Mat{{0.2, cplx(0.1, 0.3)}, {cplx(0.1, -0.3), -0.4}}}))};
  const int bits[] = {16, 24, kExactBits};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& spec = specs[static_cast<size_t>(trial) % specs.size()];
    const int b = bits[trial % 3];
    std::vector<cplx> a(static_cast<size_t>(len(rng)));
    for (auto& x : a) x = cplx(nd(rng), nd(rng));
    const auto series = series_of(a);
    const auto v = state_prep(series, trial % 2 ? 1e-5 : 0.0);
    const auto walks = power_walks(spec, series.s(), b, WalkVariant::Single);
    const auto w = build_W(walks);
    const double delta = std::max(prep_l2_error(v), 1e-15);
    const auto cert = lcu_combine(v, w, series, spec->materialize_dense() / spec->d(), delta, walk_error_bound(1 << (series.s() - 1), b));
    EXPECT_TRUE(cert.pass()) << trial << " measured " << cert.measured << " bound " << cert.eps_bound;
    std::vector<Mat> blocks;
    for (const auto& q : walks) blocks.push_back(certify_block(q).block);
    EXPECT_LT(spectral_distance(lcu_block(prep_amplitudes(v), blocks), cert.block), 1e-10) << trial;
  }
}

TEST(PrepPair, ExactIsZero) {
  const auto series = taylor_series(8);
  const auto v = state_prep(series, 0.0);
  const auto rep = prep_pair_check(prep_amplitudes(v), series, 0.0);
  EXPECT_LT(rep.l1_residual, 1e-12);
  EXPECT_TRUE(rep.pass);
}

TEST(PrepPair, InjectedPerturbation) {
  const auto series = series_of(std::vector<cplx>(8, 0.25));
  ASSERT_DOUBLE_EQ(series.alpha(), 2.0);
  auto d = prep_amplitudes(state_prep(series, 0.0));
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  std::vector<cplx> e(d.size());
  double nrm = 0.0;
  for (auto& x : e) nrm += std::norm(x = cplx(nd(rng), nd(rng)));
  for (size_t i = 0; i < d.size(); ++i) d[i] += 1e-6 * e[i] / std::sqrt(nrm);
  const auto rep = prep_pair_check(d, series, 1e-6);
  EXPECT_NEAR(rep.bound, 2 * 8 * 1e-6, 1e-18);
  EXPECT_LE(rep.l1_residual, rep.bound);
  EXPECT_GT(rep.l1_residual, 0.0);
}

TEST(PrepPair, UniformFourTerms) {
  const auto series = series_of({1, 1, 1, 1});
  const auto rep = prep_pair_check(prep_amplitudes(state_prep(series, 1e-4)), series, 1e-4);
  EXPECT_LT(rep.l1_residual, 1e-12);
}

}  // namespace
}  // namespace pqw
