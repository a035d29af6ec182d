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

#include "pqw/models.hpp"

#include <cmath>
#include <fstream>
#include <random>

namespace pqw {

namespace {

// a * b = phase * c for single-qubit Paulis.
std::pair<cplx, char> pauli_mul(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  const cplx i(0, 1);
  if (a == 'X') return b == 'Y' ? std::pair{i, 'Z'} : std::pair{-i, 'Y'};
  if (a == 'Y') return b == 'Z' ? std::pair{i, 'X'} : std::pair{-i, 'Z'};
  return b == 'X' ? std::pair{i, 'Y'} : std::pair{-i, 'X'};
}

void check_qubit(int n, int q, const char* who) {
  if (n < 1 || n > kMaxModelQubits) throw CapExceeded(std::string(who) + ": n outside [1, " + std::to_string(kMaxModelQubits) + "]");
  if (q < 0 || q >= n) throw InvalidInput(std::string(who) + ": index out of range");
}

// 53-bit uniforms from a 64-bit Mersenne twister; the generator's output
// sequence is fixed by the standard, unlike the distribution adaptors.
struct Uniform {
  explicit Uniform(uint64_t seed) : eng(seed) {}
  double open_closed() { return (static_cast<double>(eng() >> 11) + 1.0) * 0x1p-53; }  // (0, 1]
  double closed_open() { return static_cast<double>(eng() >> 11) * 0x1p-53; }          // [0, 1)
  std::mt19937_64 eng;
};

int lg(long long x) { return std::max(1, ceil_log2(x)); }

CostProfile gate_cost(long long depth, long long size) {
  CostProfile c;
  c.depth[kGate] = depth;
  c.size[kGate] = size;
  return c;
}

// Charged oracle shapes with unit constants: O_P prepares |0..n-1>, fans w
// out with COPY and evaluates the n bits of s(w) in parallel (3 log n depth);
// O_H sums the overlapping clause entries with a log^2 n reduction and reads
// one b-bit coefficient copy.
OracleCosts charged_costs(const std::string& model, long long n, int b) {
  const long long L = lg(n), lb = lg(b);
  OracleCosts c;
  if (model == "heisenberg") {
    c.op = gate_cost(3 * L, 3 * n * L);
    c.oh = gate_cost(L * L + lb, n * n * n * n * n + n * b);
  } else if (model == "syk") {
    c.op = gate_cost(3 * L, 3 * n * L);
    c.oh = gate_cost(L * L + lb, n * n * n * n * n * n * n * n + n * n * n * n * b);
  } else if (model == "molecular") {
    const long long bb = static_cast<long long>(b);
    c.op = gate_cost(3 * L, 3 * n * L);
    c.oh = gate_cost(L * L + lb + lg(n * b), n * n * n * n * n * n * n * n * bb * bb * bb * bb);
  } else {
    c.oh = arithmetic_cost(b);
  }
  return c;
}

constexpr int kChargedBits = 32;

ModelInstance finish(HamiltonianSpec spec, std::string model, uint64_t seed, nlohmann::json params) {
  ModelInstance m;
  m.spec = std::make_shared<const HamiltonianSpec>(std::move(spec));
  m.model = std::move(model);
  m.seed = seed;
  m.params = std::move(params);
  m.oracle_costs = charged_costs(m.model, m.spec->n(), kChargedBits);
  return m;
}

}  // namespace

PauliOp PauliOp::identity(int n) {
  PauliOp op(n);
  op.terms_[std::string(static_cast<size_t>(n), 'I')] = 1.0;
  return op;
}

PauliOp PauliOp::single(int n, int qubit, char p, cplx c) {
  check_qubit(n, qubit, "PauliOp::single");
  PauliOp op(n);
  std::string key(static_cast<size_t>(n), 'I');
  key[qubit] = p;
  op.terms_[key] = c;
  return op;
}

PauliOp PauliOp::operator+(const PauliOp& o) const {
  if (o.n_ != n_) throw InvalidInput("PauliOp: width mismatch");
  PauliOp r = *this;
  for (const auto& [k, c] : o.terms_) r.terms_[k] += c;
  return r;
}

PauliOp PauliOp::operator*(const PauliOp& o) const {
  if (o.n_ != n_) throw InvalidInput("PauliOp: width mismatch");
  PauliOp r(n_);
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      cplx c = ca * cb;
      std::string k(static_cast<size_t>(n_), 'I');
      for (int q = 0; q < n_; ++q) {
        auto [ph, p] = pauli_mul(ka[q], kb[q]);
        c *= ph;
        k[q] = p;
      }
      r.terms_[k] += c;
    }
  }
  return r;
}

PauliOp PauliOp::operator*(cplx c) const {
  PauliOp r = *this;
  for (auto& [k, v] : r.terms_) v *= c;
  return r;
}

PauliOp PauliOp::dagger() const {
  PauliOp r = *this;
  for (auto& [k, v] : r.terms_) v = std::conj(v);
  return r;
}

PauliOp PauliOp::pruned(double tol) const {
  PauliOp r(n_);
  for (const auto& [k, v] : terms_)
    if (std::abs(v) > tol) r.terms_[k] = v;
  return r;
}

Mat PauliOp::dense() const {
  const Eigen::Index D = Eigen::Index{1} << n_;
  Mat m = Mat::Zero(D, D);
  const cplx i(0, 1);
  for (const auto& [key, c] : terms_) {
    for (Eigen::Index col = 0; col < D; ++col) {
      Eigen::Index row = col;
      cplx a = c;
      for (int q = 0; q < n_; ++q) {
        const bool bit = (col >> q) & 1;
        switch (key[q]) {
          case 'X': row ^= Eigen::Index{1} << q; break;
          case 'Y': row ^= Eigen::Index{1} << q; a *= bit ? -i : i; break;
          case 'Z': if (bit) a = -a; break;
          default: break;
        }
      }
      m(row, col) += a;
    }
  }
  return m;
}

std::vector<PauliTerm> PauliOp::hermitian_terms(double tol) const {
  std::vector<PauliTerm> out;
  for (const auto& [k, v] : terms_) {
    if (std::abs(v.imag()) > tol) throw InvalidInput("PauliOp: non-real coefficient on " + k);
    if (std::abs(v.real()) <= tol) continue;
    out.push_back({v.real(), std::string(k.rbegin(), k.rend())});
  }
  return out;
}

PauliOp majorana(int n, int p) {
  if (p < 0 || p >= 2 * n) throw InvalidInput("majorana: index outside [0, 2n)");
  const int q = p / 2;
  PauliOp op = PauliOp::single(n, q, p % 2 ? 'Y' : 'X');
  for (int u = 0; u < q; ++u) op = PauliOp::single(n, u, 'Z') * op;
  return op;
}

PauliOp jw_creation(int n, int p) {
  return jw_annihilation(n, p).dagger();
}

PauliOp jw_annihilation(int n, int p) {
  check_qubit(n, p, "jw_annihilation");
  PauliOp op = (PauliOp::single(n, p, 'X') + PauliOp::single(n, p, 'Y', cplx(0, 1))) * 0.5;
  for (int u = 0; u < p; ++u) op = PauliOp::single(n, u, 'Z') * op;
  return op;
}

nlohmann::json OracleCosts::to_json() const {
  return {{"oh", oh.to_json()},
          {"op", op.to_json()},
          {"constants", {{"op_depth", "3*ceil(log2 n)"}, {"oh_depth", "ceil(log2 n)^2 + ceil(log2 b) (+ ceil(log2 nb) database read)"},
                         {"b", kChargedBits}}}};
}

nlohmann::json ModelInstance::to_json() const {
  return {{"model", model}, {"seed", seed}, {"params", params}, {"spec", spec->to_json()}, {"oracle_costs", oracle_costs.to_json()}};
}

std::vector<double> gaussian_samples(uint64_t seed, size_t count, double sigma) {
  Uniform u(seed);
  std::vector<double> out;
  out.reserve(count + 1);
  while (out.size() < count) {
    const double r = std::sqrt(-2.0 * std::log(u.open_closed()));
    const double th = 2.0 * M_PI * u.closed_open();
    out.push_back(sigma * r * std::cos(th));
    out.push_back(sigma * r * std::sin(th));
  }
  out.resize(count);
  return out;
}

ModelInstance heisenberg_with_fields(int n, const std::vector<double>& h) {
  if (n < 3) throw InvalidInput("heisenberg: n must be >= 3");
  if (n > kMaxModelQubits) throw CapExceeded("heisenberg: n above " + std::to_string(kMaxModelQubits));
  if (static_cast<int>(h.size()) != n) throw InvalidInput("heisenberg: need one field per site");
  const PauliOp exchange = PauliOp::single(2, 0, 'X') * PauliOp::single(2, 1, 'X') +
                           PauliOp::single(2, 0, 'Y') * PauliOp::single(2, 1, 'Y') +
                           PauliOp::single(2, 0, 'Z') * PauliOp::single(2, 1, 'Z');
  std::vector<Clause> clauses;
  for (int w = 0; w < n; ++w) {
    const int v = (w + 1) % n;
    // Block bits follow ascending qubit position; site w is bit 0 unless it wraps.
    const int local = w < v ? 0 : 1;
    PauliOp hw = exchange + PauliOp::single(2, local, 'Z', h[w]);
    clauses.push_back({(uint64_t{1} << w) | (uint64_t{1} << v), hw.dense()});
  }
  return finish(HamiltonianSpec::local_hamiltonian(n, clauses), "heisenberg", 0, {{"n", n}, {"h", h}});
}

ModelInstance heisenberg(int n, uint64_t seed) {
  if (n < 3) throw InvalidInput("heisenberg: n must be >= 3");
  if (n > kMaxModelQubits) throw CapExceeded("heisenberg: n above " + std::to_string(kMaxModelQubits));
  Uniform u(seed);
  std::vector<double> h;
  for (int w = 0; w < n; ++w) h.push_back(2.0 * u.closed_open() - 1.0);
  ModelInstance m = heisenberg_with_fields(n, h);
  m.seed = seed;
  return m;
}

double syk_variance(int n, double J) {
  return 6.0 * J * J / std::pow(2.0 * n, 3);
}

ModelInstance syk(int n, uint64_t seed, double J) {
  if (n < 2) throw InvalidInput("syk: n must be >= 2");
  if (n > kMaxModelQubits) throw CapExceeded("syk: n above " + std::to_string(kMaxModelQubits));
  if (!(J > 0.0)) throw InvalidInput("syk: J must be positive");
  const int M = 2 * n;
  std::vector<PauliOp> gam;
  for (int p = 0; p < M; ++p) gam.push_back(majorana(n, p));
  size_t count = 0;
  for (int p = 0; p < M; ++p)
    for (int q = p + 1; q < M; ++q)
      for (int r = q + 1; r < M; ++r) count += static_cast<size_t>(M - r - 1);
  const auto Js = gaussian_samples(seed, count, std::sqrt(syk_variance(n, J)));
  // With J antisymmetric the sum over all ordered quadruples is 4! times the
  // sum over p < q < r < s, leaving the prefactor 1/4.
  PauliOp h(n);
  nlohmann::json table = nlohmann::json::array();
  size_t idx = 0;
  for (int p = 0; p < M; ++p)
    for (int q = p + 1; q < M; ++q)
      for (int r = q + 1; r < M; ++r)
        for (int s = r + 1; s < M; ++s) {
          const double c = Js[idx++];
          h = h + gam[p] * gam[q] * gam[r] * gam[s] * (c / 4.0);
          table.push_back({p, q, r, s, c});
        }
  auto terms = h.pruned().hermitian_terms();
  if (terms.empty()) throw InvalidInput("syk: Hamiltonian vanishes");
  return finish(HamiltonianSpec::pauli_sum(n, terms), "syk", seed,
                {{"n", n}, {"J", J}, {"sigma2", syk_variance(n, J)}, {"couplings", table}});
}

ModelInstance molecular(const nlohmann::json& in) {
  std::map<std::pair<int, int>, cplx> one;
  std::map<std::array<int, 4>, cplx> two;
  int n = 0;
  try {
    for (const auto& e : in.value("one_body", nlohmann::json::array())) {
      const int p = e.at(0).get<int>(), q = e.at(1).get<int>();
      if (p < 0 || q < 0) throw InvalidInput("molecular: negative orbital index");
      one[{p, q}] += cplx(e.at(2).get<double>(), e.at(3).get<double>());
      n = std::max({n, p + 1, q + 1});
    }
    for (const auto& e : in.value("two_body", nlohmann::json::array())) {
      std::array<int, 4> k{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>()};
      for (int x : k)
        if (x < 0) throw InvalidInput("molecular: negative orbital index");
      two[k] += cplx(e.at(4).get<double>(), e.at(5).get<double>());
      for (int x : k) n = std::max(n, x + 1);
    }
    if (in.contains("n")) {
      const int declared = in.at("n").get<int>();
      if (declared < n) throw InvalidInput("molecular: declared n smaller than an orbital index");
      n = declared;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("molecular: malformed integral table: ") + e.what());
  }
  if (n < 1) throw InvalidInput("molecular: no orbitals");
  if (n > kMaxModelQubits) throw CapExceeded("molecular: more than " + std::to_string(kMaxModelQubits) + " orbitals");
  auto get1 = [&](int p, int q) { auto it = one.find({p, q}); return it == one.end() ? cplx(0) : it->second; };
  auto get2 = [&](const std::array<int, 4>& k) { auto it = two.find(k); return it == two.end() ? cplx(0) : it->second; };
  for (const auto& [k, v] : one)
    if (std::abs(v - std::conj(get1(k.second, k.first))) > 1e-12) throw InvalidInput("molecular: h_pq != conj(h_qp)");
  for (const auto& [k, v] : two)
    if (std::abs(v - std::conj(get2({k[3], k[2], k[1], k[0]}))) > 1e-12) throw InvalidInput("molecular: h_pqrs != conj(h_srqp)");

  std::vector<PauliOp> cr, an;
  for (int p = 0; p < n; ++p) {
    cr.push_back(jw_creation(n, p));
    an.push_back(jw_annihilation(n, p));
  }
  PauliOp h(n);
  nlohmann::json t1 = nlohmann::json::array(), t2 = nlohmann::json::array();
  for (const auto& [k, v] : one) {
    h = h + cr[k.first] * an[k.second] * v;
    t1.push_back({k.first, k.second, v.real(), v.imag()});
  }
  for (const auto& [k, v] : two) {
    h = h + cr[k[0]] * cr[k[1]] * an[k[2]] * an[k[3]] * (0.5 * v);
    t2.push_back({k[0], k[1], k[2], k[3], v.real(), v.imag()});
  }
  auto terms = h.pruned().hermitian_terms();
  if (terms.empty()) throw InvalidInput("molecular: Hamiltonian vanishes");
  return finish(HamiltonianSpec::pauli_sum(n, terms), "molecular", 0, {{"n", n}, {"one_body", t1}, {"two_body", t2}});
}

ModelInstance molecular_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("molecular: cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("molecular: " + path + " is not JSON: " + e.what());
  }
  return molecular(j);
}

Mat parity_matrix(int N, const std::vector<int>& x) {
  if (N < 1 || N > 10) throw InvalidInput("parity: N must lie in [1, 10]");
  if (static_cast<int>(x.size()) != N) throw InvalidInput("parity: x must have N bits");
  for (int b : x)
    if (b != 0 && b != 1) throw InvalidInput("parity: x must be a bit string");
  Mat h = Mat::Zero(2 * (N + 1), 2 * (N + 1));
  for (int j = 1; j <= N; ++j) {
    const double w = std::sqrt(static_cast<double>(N - j + 1) * j) / N;
    for (int k = 0; k < 2; ++k) {
      const int a = 2 * j + k, b = 2 * (j - 1) + (k ^ x[j - 1]);
      h(a, b) = w;
      h(b, a) = w;
    }
  }
  return h;
}

ModelInstance parity_ham(int N, const std::vector<int>& x) {
  const Mat h = parity_matrix(N, x);
  return finish(HamiltonianSpec::dense_explicit(h), "parity", 0, {{"N", N}, {"x", x}});
}

double parity_amplitude(int N, const std::vector<int>& x, double t) {
  const Mat u = expm_hermitian(parity_matrix(N, x), t);
  int par = 0;
  for (int b : x) par ^= b;
  return std::abs(u(2 * N + par, 0));
}

}  // namespace pqw
