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

#ifndef PQW_MODELS_HPP
#define PQW_MODELS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pqw/hamiltonians.hpp"

namespace pqw {

// A complex combination of Pauli strings on n qubits. Keys hold one char per
// qubit with key[q] acting on qubit q (the reverse of PauliTerm::paulis).
class PauliOp {
 public:
  explicit PauliOp(int n) : n_(n) {}
  static PauliOp identity(int n);
  static PauliOp single(int n, int qubit, char p, cplx c = 1.0);

  int n() const { return n_; }
  const std::map<std::string, cplx>& terms() const { return terms_; }

  PauliOp operator+(const PauliOp& o) const;
  PauliOp operator*(const PauliOp& o) const;
  PauliOp operator*(cplx c) const;
  PauliOp dagger() const;
  // Drops terms with |c| <= tol.
  PauliOp pruned(double tol = 1e-14) const;

  Mat dense() const;
  // Rejects non-real coefficients beyond tol.
  std::vector<PauliTerm> hermitian_terms(double tol = 1e-12) const;

 private:
  int n_;
  std::map<std::string, cplx> terms_;
};

// Majorana operator on 0-indexed p in [0, 2n).
PauliOp majorana(int n, int p);
// 0-indexed Jordan-Wigner fermion operators: Z_0..Z_{p-1} (X_p -/+ i Y_p) / 2.
PauliOp jw_creation(int n, int p);
PauliOp jw_annihilation(int n, int p);

// Oracle implementations charged per model; constants are recorded in the
// instance dump.
struct OracleCosts {
  CostProfile oh, op;
  nlohmann::json to_json() const;
};

struct ModelInstance {
  std::shared_ptr<const HamiltonianSpec> spec;
  std::string model;
  uint64_t seed = 0;
  nlohmann::json params;  // coefficient tables
  OracleCosts oracle_costs;

  nlohmann::json to_json() const;
};

// N(0, sigma^2) samples from the Box-Muller transform of seeded uniforms.
std::vector<double> gaussian_samples(uint64_t seed, size_t count, double sigma);

ModelInstance heisenberg(int n, uint64_t seed);
ModelInstance heisenberg_with_fields(int n, const std::vector<double>& h);
ModelInstance syk(int n, uint64_t seed, double J = 1.0);
double syk_variance(int n, double J);
ModelInstance molecular(const nlohmann::json& integrals);
ModelInstance molecular_file(const std::string& path);

// Chain over (j, k), j in [0, N], k in {0, 1}, stored at index 2j + k, with
// <j,k|H|j-1,k ^ x_{j-1}> = sqrt((N-j+1) j) / N for j in [1, N].
ModelInstance parity_ham(int N, const std::vector<int>& x);
Mat parity_matrix(int N, const std::vector<int>& x);
// |<N, PARITY(x)| e^{-iHt} |0,0>| evaluated densely.
double parity_amplitude(int N, const std::vector<int>& x, double t);

constexpr int kMaxModelQubits = 10;

}  // namespace pqw

#endif  // PQW_MODELS_HPP
