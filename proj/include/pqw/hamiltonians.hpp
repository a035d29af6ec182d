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

#ifndef PQW_HAMILTONIANS_HPP
#define PQW_HAMILTONIANS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pqw/primitives.hpp"
#include "pqw/refsim.hpp"

namespace pqw {

enum class Family { Band, PauliProduct, LocalClause, PauliSum, LocalHamiltonian, DenseExplicit };
const char* family_name(Family f);
Family family_from_name(const std::string& s);

// paulis[0] acts on the most significant qubit, so "XZ" is X on qubit 1.
struct PauliTerm {
  cplx coeff = 1.0;
  std::string paulis;
};

// A clause acting on the qubits set in `mask`; block rows and columns are
// indexed by the mask bits read in ascending position order.
struct Clause {
  uint64_t mask = 0;
  Mat block;
};

// Decomposition of the r-step neighbour map as f(j, g(w0,t0) o ... o g(w_{r-1},t_{r-1})).
// All words are g_width bits wide; O_P writes s(w) into an n-bit register.
struct StructureOracle {
  int n = 0;
  int g_width = 0;
  bool uses_op = false;
  std::function<uint64_t(uint64_t)> s_of;                              // O_P: w -> s(w)
  std::function<uint64_t(uint64_t, uint64_t)> g_map, g_unmap;          // in place: (t, s) -> g
  BinaryOp compose;                                                    // the associative o
  std::function<uint64_t(uint64_t, uint64_t)> f;                       // (j, x) -> neighbour
  std::function<uint64_t(uint64_t, uint64_t, uint64_t)> l_inv;         // (s, j, k) -> g

  uint64_t P(uint64_t x, uint64_t y) const { return uses_op ? y ^ s_of(x) : y; }
  uint64_t g(uint64_t w, uint64_t t) const { return g_map(t, uses_op ? s_of(w) : 0); }
};

class HamiltonianSpec {
 public:
  static HamiltonianSpec band(const Mat& h, int d);
  static HamiltonianSpec pauli_product(const std::string& paulis, double scale = 1.0);
  static HamiltonianSpec pauli_sum(int n, const std::vector<PauliTerm>& terms);
  static HamiltonianSpec local_clause(int n, const Clause& clause);
  static HamiltonianSpec local_hamiltonian(int n, const std::vector<Clause>& clauses);
  // Any Hermitian matrix, zero-padded to a power of two wide enough to hold
  // its circular band; treated as a band family afterwards.
  static HamiltonianSpec dense_explicit(const Mat& h);

  Family family() const { return family_; }
  int n() const { return n_; }
  uint64_t N() const { return uint64_t{1} << n_; }
  int d() const { return d_; }
  int m() const { return m_; }
  int locality() const { return l_; }
  // Stored H equals the input divided by this factor (1 when already <= 1).
  double normalization() const { return normalization_; }
  const std::vector<PauliTerm>& pauli_terms() const { return paulis_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  uint64_t original_dim() const { return original_dim_; }

  cplx entry(uint64_t j, uint64_t k) const;
  cplx term_entry(int w, uint64_t j, uint64_t k) const;
  uint64_t neighbor(int w, uint64_t j, uint64_t t) const;
  bool member(int w, uint64_t j, uint64_t k) const;
  int overlap_count(uint64_t j, uint64_t k) const;
  cplx rescaled_entry(uint64_t j, uint64_t k) const;

  uint64_t iterate_L(const std::vector<int>& w, uint64_t j, const std::vector<uint64_t>& t) const;
  uint64_t factored_L(const std::vector<int>& w, uint64_t j, const std::vector<uint64_t>& t) const;

  const StructureOracle& structure() const { return *structure_; }

  Mat materialize_dense(int cap = 10) const;
  Mat term_dense(int w, int cap = 10) const;
  double max_norm() const;

  // H -> c H, bookkept through the normalization factor.
  HamiltonianSpec scaled(double c) const;

  nlohmann::json to_json() const;
  static HamiltonianSpec from_json(const nlohmann::json& j);

 private:
  void finalize();
  void build_structure();
  void scale_payload(double c);

  Family family_ = Family::Band;
  int n_ = 0, d_ = 1, m_ = 1, l_ = 0;
  double normalization_ = 1.0;
  uint64_t original_dim_ = 0;
  Mat band_;
  std::vector<PauliTerm> paulis_;
  std::vector<uint64_t> pauli_flip_;  // s_k = [sigma_k in {X, Y}]
  std::vector<Clause> clauses_;
  std::shared_ptr<const StructureOracle> structure_;
};

// Parallel bit deposit/extract over the set bits of mask.
uint64_t deposit_bits(uint64_t v, uint64_t mask);
uint64_t extract_bits(uint64_t v, uint64_t mask);

// Fixed-point entry oracle: each of the real and imaginary parts is a
// (b/2)-bit two's-complement integer q with value q / 2^{b/2-2}.
class EntryOracle {
 public:
  EntryOracle(std::shared_ptr<const HamiltonianSpec> spec, int b, bool rescaled);

  int bits() const { return b_; }
  int component_bits() const { return b_ / 2; }
  double lsb() const;
  bool rescaled() const { return rescaled_; }

  // Quantized value. Upper triangle rounded to nearest and mirrored;
  // diagonal entries are real.
  cplx value(uint64_t j, uint64_t k) const;
  std::pair<int64_t, int64_t> code(uint64_t j, uint64_t k) const;
  cplx decode(int64_t re, int64_t im) const;
  uint64_t pack(int64_t c) const;    // to component_bits two's complement
  int64_t unpack(uint64_t v) const;  // from component_bits two's complement

  const HamiltonianSpec& spec() const { return *spec_; }

 private:
  std::pair<int64_t, int64_t> compute(uint64_t j, uint64_t k) const;
  std::shared_ptr<const HamiltonianSpec> spec_;
  int b_;
  bool rescaled_;
  std::vector<std::pair<int64_t, int64_t>> table_;  // dense cache for small N
};

// Exact-rotation mode: 52 bits per component and 52-bit angles.
constexpr int kExactBits = 104;
constexpr int kExactAngleBits = 52;
int angle_bits_for(int b);

// Per-edge bound 2^{-b/2+2} on the rotation and rounding error.
double rotation_bound_per_edge(int b);

}  // namespace pqw

#endif  // PQW_HAMILTONIANS_HPP
