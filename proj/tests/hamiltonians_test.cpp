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
#include <set>

#include "pqw/cli.hpp"
#include "pqw/hamiltonians.hpp"
#include "test_util.hpp"

namespace pqw {
namespace {

using testing::pauli_string;

// Every family at n <= 3 that the suite sweeps.
std::vector<HamiltonianSpec> sample_specs() {
  std::mt19937_64 rng(11);
  std::vector<HamiltonianSpec> out;
  out.push_back(HamiltonianSpec::band(band_example_matrix(), 3));
  Mat b8 = testing::random_hermitian(rng, 8);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) {
      const int off = ((k - j) % 8 + 8) % 8;
      if (off > 1 && off < 7) b8(j, k) = 0;
    }
  out.push_back(HamiltonianSpec::band(b8, 3));
  out.push_back(HamiltonianSpec::pauli_product("XZ"));
  out.push_back(HamiltonianSpec::pauli_product("YXZ", 0.5));
  out.push_back(HamiltonianSpec::pauli_sum(2, {{0.5, "XI"}, {-0.3, "ZY"}, {0.2, "YY"}}));
  out.push_back(HamiltonianSpec::local_clause(3, {0b101, testing::random_hermitian(rng, 4)}));
  out.push_back(HamiltonianSpec::local_hamiltonian(
      3, {{0b011, testing::random_hermitian(rng, 4)}, {0b110, testing::random_hermitian(rng, 4)}}));
  return out;
}

TEST(Families, ExampleBandAccepted) {
  const Mat h = band_example_matrix();
  const cplx i(0, 1);
  EXPECT_EQ(h(0, 0), cplx(1));
  EXPECT_EQ(h(0, 1), i);
  EXPECT_EQ(h(1, 1), cplx(2));
  EXPECT_EQ(h(1, 2), cplx(3));
  EXPECT_EQ(h(2, 2), cplx(-1));
  EXPECT_EQ(h(2, 3), -i);
  EXPECT_EQ(h(3, 3), cplx(1));
  EXPECT_TRUE(is_hermitian(h));
  const auto s = HamiltonianSpec::band(h, 3);
  EXPECT_EQ(s.d(), 3);
  EXPECT_EQ(s.m(), 1);
  EXPECT_DOUBLE_EQ(s.normalization(), 3.0);
  EXPECT_LT(spectral_distance(s.materialize_dense() * 3.0, h), 1e-15);
}

TEST(Families, WraparoundBandAccepted) {
  Mat h = band_example_matrix();
  h(0, 3) = h(3, 0) = 1.0;
  EXPECT_NO_THROW(HamiltonianSpec::band(h, 3));
  h(0, 2) = h(2, 0) = 1.0;
  EXPECT_THROW(HamiltonianSpec::band(h, 3), InvalidInput);
}

TEST(Families, Rejections) {
  EXPECT_THROW(HamiltonianSpec::band(band_example_matrix(), 2), InvalidInput);
  Mat nh = band_example_matrix();
  nh(0, 1) = 5.0;
  EXPECT_THROW(HamiltonianSpec::band(nh, 3), InvalidInput);
  EXPECT_THROW(HamiltonianSpec::pauli_product("XQ"), InvalidInput);
  EXPECT_THROW(HamiltonianSpec::pauli_sum(2, {{1.0, "XYZ"}}), InvalidInput);
  EXPECT_THROW(HamiltonianSpec::pauli_sum(1, {{cplx(0, 1), "X"}}), InvalidInput);
  EXPECT_THROW(HamiltonianSpec::local_hamiltonian(3, {{0b011, Mat::Identity(4, 4)}, {0b111, Mat::Identity(8, 8)}}),
               InvalidInput);
  EXPECT_THROW(EntryOracle(std::make_shared<HamiltonianSpec>(HamiltonianSpec::pauli_product("Z")), 7, false),
               InvalidInput);
}

TEST(Families, PauliProductFlipMask) {
  const auto s = HamiltonianSpec::pauli_product("XZ");
  EXPECT_EQ(s.d(), 1);
  EXPECT_EQ(s.structure().s_of(0), 0b10u);
  EXPECT_EQ(s.neighbor(0, 0b00, 0), 0b10u);
}

TEST(Neighbor, BandOffsets) {
  const auto s = HamiltonianSpec::band(band_example_matrix(), 3);
  EXPECT_EQ(s.neighbor(0, 1, 0), 0u);
  EXPECT_EQ(s.neighbor(0, 1, 2), 2u);
  EXPECT_EQ(s.neighbor(0, 0, 0), 3u);  // wraps through N-1
  EXPECT_THROW(s.neighbor(0, 0, 3), InvalidInput);
}

TEST(Neighbor, LocalClauseLift) {
  EXPECT_EQ(deposit_bits(0b101, 0b01011), 0b01001u);
  EXPECT_EQ(extract_bits(0b01001, 0b01011), 0b101u);
  const auto s = HamiltonianSpec::local_clause(5, {0b01011, Mat::Identity(8, 8) * 0.5});
  EXPECT_EQ(s.d(), 8);
  EXPECT_EQ(s.neighbor(0, 0b10011, 0b101), 0b11001u);
}

TEST(Structure, BandTwoSteps) {
  Mat h = Mat::Zero(8, 8);
  for (int j = 0; j < 8; ++j) h(j, j) = 0.5, h(j, (j + 1) % 8) = 0.25, h((j + 1) % 8, j) = 0.25;
  const auto s = HamiltonianSpec::band(h, 3);
  EXPECT_EQ(s.iterate_L({0, 0}, 2, {2, 2}), 4u);
  EXPECT_EQ(s.factored_L({0, 0}, 2, {2, 2}), 4u);
}

// Enumerates every (w, t) word of length r.
template <class F>
void for_each_word(const HamiltonianSpec& s, int r, F&& fn) {
  const uint64_t per = static_cast<uint64_t>(s.m()) * static_cast<uint64_t>(s.d());
  uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= per;
  for (uint64_t code = 0; code < total; ++code) {
    std::vector<int> w(r);
    std::vector<uint64_t> t(r);
    uint64_t c = code;
    for (int i = 0; i < r; ++i) {
      w[i] = static_cast<int>(c % s.m());
      c /= s.m();
      t[i] = c % s.d();
      c /= s.d();
    }
    fn(w, t);
  }
}

TEST(Structure, FactoredMatchesIterated) {
  for (const auto& s : sample_specs()) {
    for (int r = 1; r <= 3; ++r) {
      for_each_word(s, r, [&](const std::vector<int>& w, const std::vector<uint64_t>& t) {
        for (uint64_t j = 0; j < s.N(); ++j) ASSERT_EQ(s.iterate_L(w, j, t), s.factored_L(w, j, t)) << family_name(s.family());
      });
    }
  }
}

TEST(Structure, LInverseRecoversG) {
  for (const auto& s : sample_specs()) {
    const auto& so = s.structure();
    for (int w = 0; w < s.m(); ++w)
      for (uint64_t j = 0; j < s.N(); ++j)
        for (uint64_t t = 0; t < static_cast<uint64_t>(s.d()); ++t) {
          const uint64_t k = s.neighbor(w, j, t);
          const uint64_t sw = so.uses_op ? so.s_of(w) : 0;
          ASSERT_EQ(so.l_inv(sw, j, k), so.g(w, t)) << family_name(s.family());
          ASSERT_EQ(so.g_unmap(so.g(w, t), sw), t);
        }
  }
}

TEST(Structure, PIsBijective) {
  for (const auto& s : sample_specs()) {
    const auto& so = s.structure();
    for (int w = 0; w < s.m(); ++w) {
      std::set<uint64_t> seen;
      for (uint64_t y = 0; y < s.N(); ++y) seen.insert(so.P(w, y));
      EXPECT_EQ(seen.size(), s.N());
    }
  }
}

TEST(Structure, ComposeIsAssociative) {
  for (const auto& s : sample_specs()) EXPECT_TRUE(check_associative(s.structure().compose)) << family_name(s.family());
}

TEST(Graph, DenseSupportWithinNeighbors) {
  for (const auto& s : sample_specs()) {
    const Mat h = s.materialize_dense();
    EXPECT_TRUE(is_hermitian(h));
    EXPECT_LE(max_abs_entry(h), 1.0 + 1e-15);
    for (uint64_t j = 0; j < s.N(); ++j)
      for (uint64_t k = 0; k < s.N(); ++k) {
        if (std::abs(h(j, k)) < 1e-15) continue;
        bool found = false;
        for (int w = 0; w < s.m(); ++w)
          for (uint64_t t = 0; t < static_cast<uint64_t>(s.d()); ++t) found |= s.neighbor(w, j, t) == k;
        EXPECT_TRUE(found) << family_name(s.family()) << " " << j << "," << k;
        EXPECT_GE(s.overlap_count(j, k), 1);
      }
  }
}

TEST(Overlap, PauliSumSharedEdge) {
  const auto s = HamiltonianSpec::pauli_sum(2, {{1.0, "XI"}, {1.0, "XZ"}});
  EXPECT_EQ(s.overlap_count(0b00, 0b10), 2);
  EXPECT_NEAR(std::abs(s.rescaled_entry(0b00, 0b10) * s.normalization() - 1.0), 0.0, 1e-15);
  EXPECT_EQ(s.overlap_count(0b00, 0b01), 0);
  EXPECT_EQ(s.rescaled_entry(0b00, 0b01), cplx(0));
}

TEST(Overlap, RescaledSumsBackToEntry) {
  for (const auto& s : sample_specs())
    for (uint64_t j = 0; j < s.N(); ++j)
      for (uint64_t k = 0; k < s.N(); ++k) {
        cplx sum = 0.0;
        for (int w = 0; w < s.m(); ++w)
          if (s.member(w, j, k)) sum += s.rescaled_entry(j, k);
        ASSERT_LT(std::abs(sum - s.entry(j, k)), 1e-14);
      }
}

TEST(Dense, PauliSumMatchesKronecker) {
  const std::vector<PauliTerm> terms{{0.5, "XIZ"}, {-0.25, "YYI"}, {0.125, "ZXY"}};
  const auto s = HamiltonianSpec::pauli_sum(3, terms);
  Mat ref = Mat::Zero(8, 8);
  for (const auto& t : terms) ref += t.coeff * pauli_string(t.paulis);
  EXPECT_LT(spectral_distance(s.materialize_dense() * s.normalization(), ref), 1e-14);
  EXPECT_LT(spectral_distance(HamiltonianSpec::pauli_product("Z").materialize_dense(), pauli_string("Z")), 1e-15);
}

TEST(Dense, LocalClauseMatchesEmbedding) {
  std::mt19937_64 rng(3);
  const Mat blk = testing::random_hermitian(rng, 4) * 0.2;
  const auto s = HamiltonianSpec::local_clause(3, {0b101, blk});
  // Mask 101 acts on qubits 0 and 2: block index = (q2 q0), so H = P * (blk on q2,q0) x I_q1.
  Mat ref = Mat::Zero(8, 8);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k)
      if (((j >> 1) & 1) == ((k >> 1) & 1)) ref(j, k) = blk((j & 1) | ((j >> 2) << 1), (k & 1) | ((k >> 2) << 1));
  EXPECT_LT(spectral_distance(s.materialize_dense() * s.normalization(), ref), 1e-14);
  EXPECT_THROW(HamiltonianSpec::pauli_product("ZZZZZZZZZZZ").materialize_dense(), CapExceeded);
}

TEST(EntryOracle, QuantizationBoundAndMirror) {
  for (const auto& s0 : sample_specs()) {
    auto s = std::make_shared<HamiltonianSpec>(s0);
    for (int b : {8, 16, 24, 32}) {
      EntryOracle o(s, b, false);
      const double bound = std::ldexp(1.0, -(b / 2 - 1));
      for (uint64_t j = 0; j < s->N(); ++j)
        for (uint64_t k = 0; k < s->N(); ++k) {
          const cplx q = o.value(j, k), x = s->entry(j, k);
          ASSERT_LE(std::abs(q.real() - x.real()), bound + 1e-15);
          ASSERT_LE(std::abs(q.imag() - x.imag()), bound + 1e-15);
          ASSERT_EQ(q, std::conj(o.value(k, j)));
          if (j == k) ASSERT_EQ(q.imag(), 0.0);
        }
    }
  }
}

TEST(EntryOracle, PackRoundTrip) {
  EntryOracle o(std::make_shared<HamiltonianSpec>(HamiltonianSpec::pauli_product("Z")), 16, false);
  for (int64_t c = -128; c < 128; ++c) ASSERT_EQ(o.unpack(o.pack(c)), c);
  EXPECT_DOUBLE_EQ(o.lsb(), 1.0 / 64);
  EXPECT_EQ(o.decode(64, -32), cplx(1.0, -0.5));
}

TEST(EntryOracle, RescaledUsesOverlap) {
  auto s = std::make_shared<HamiltonianSpec>(HamiltonianSpec::pauli_sum(2, {{0.5, "XI"}, {0.5, "XZ"}}));
  EntryOracle o(s, kExactBits, true);
  EXPECT_NEAR(std::abs(o.value(0b00, 0b10) - 0.5), 0.0, 1e-15);
}

TEST(Json, RoundTripAllFamilies) {
  auto specs = sample_specs();
  specs.push_back(HamiltonianSpec::dense_explicit(band_example_matrix().topLeftCorner(3, 3)));
  for (const auto& s : specs) {
    const auto back = HamiltonianSpec::from_json(s.to_json());
    EXPECT_EQ(back.family(), s.family());
    EXPECT_EQ(back.n(), s.n());
    EXPECT_EQ(back.d(), s.d());
    EXPECT_EQ(back.m(), s.m());
    EXPECT_NEAR(back.normalization(), s.normalization(), 1e-15);
    EXPECT_LT(spectral_distance(back.materialize_dense(), s.materialize_dense()), 1e-15);
  }
  EXPECT_THROW(HamiltonianSpec::from_json({{"family", "band"}}), InvalidInput);
  EXPECT_THROW(HamiltonianSpec::from_json({{"family", "nope"}, {"params", {}}}), InvalidInput);
}

TEST(Scaling, ScaledBookkeeping) {
  const auto s = HamiltonianSpec::band(band_example_matrix(), 3);
  const auto h = s.scaled(0.5);
  EXPECT_DOUBLE_EQ(h.normalization(), 6.0);
  EXPECT_LT(spectral_distance(h.materialize_dense() * 2.0, s.materialize_dense()), 1e-15);
}

}  // namespace
}  // namespace pqw
