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

#include "pqw/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace pqw {

namespace {

constexpr int kMaxQubits = 30;

uint64_t low_mask(int w) { return w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1; }

bool valid_pauli_char(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// <j| P |k> for a Pauli string (no coefficient).
cplx pauli_element(const std::string& p, uint64_t j, uint64_t k) {
  const int n = static_cast<int>(p.size());
  cplx v = 1.0;
  for (int i = 0; i < n; ++i) {
    const int q = n - 1 - i;
    const int kb = (k >> q) & 1, jb = (j >> q) & 1;
    switch (p[i]) {
      case 'I': if (jb != kb) return 0.0; break;
      case 'Z': if (jb != kb) return 0.0; if (kb) v = -v; break;
      case 'X': if (jb == kb) return 0.0; break;
      case 'Y': if (jb == kb) return 0.0; v *= kb ? cplx(0, -1) : cplx(0, 1); break;
      default: return 0.0;
    }
  }
  return v;
}

uint64_t pauli_flip_mask(const std::string& p) {
  const int n = static_cast<int>(p.size());
  uint64_t s = 0;
  for (int i = 0; i < n; ++i)
    if (p[i] == 'X' || p[i] == 'Y') s |= uint64_t{1} << (n - 1 - i);
  return s;
}

int circular_offset(uint64_t j, uint64_t k, uint64_t N) {
  long long off = static_cast<long long>((k + N - j) % N);
  if (off > static_cast<long long>(N / 2)) off -= static_cast<long long>(N);
  return static_cast<int>(off);
}

}  // namespace

uint64_t deposit_bits(uint64_t v, uint64_t mask) {
  uint64_t out = 0;
  int i = 0;
  for (int p = 0; p < 64; ++p)
    if ((mask >> p) & 1) out |= ((v >> i++) & 1) << p;
  return out;
}

uint64_t extract_bits(uint64_t v, uint64_t mask) {
  uint64_t out = 0;
  int i = 0;
  for (int p = 0; p < 64; ++p)
    if ((mask >> p) & 1) out |= ((v >> p) & 1) << i++;
  return out;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Band: return "band";
    case Family::PauliProduct: return "pauli-product";
    case Family::LocalClause: return "local-clause";
    case Family::PauliSum: return "pauli-sum";
    case Family::LocalHamiltonian: return "local-hamiltonian";
    case Family::DenseExplicit: return "dense-explicit";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  for (Family f : {Family::Band, Family::PauliProduct, Family::LocalClause, Family::PauliSum,
                   Family::LocalHamiltonian, Family::DenseExplicit})
    if (s == family_name(f)) return f;
  throw InvalidInput("unknown family '" + s + "'");
}

HamiltonianSpec HamiltonianSpec::band(const Mat& h, int d) {
  const auto N = static_cast<uint64_t>(h.rows());
  if (h.rows() != h.cols() || N == 0 || !std::has_single_bit(N)) {
    throw InvalidInput("band: matrix must be square with power-of-two dimension");
  }
  if (d < 1 || d % 2 == 0) throw InvalidInput("band: width d must be odd");
  if (static_cast<uint64_t>(d) > N) throw InvalidInput("band: width d exceeds the dimension");
  if (!is_hermitian(h)) throw InvalidInput("band: entries are not Hermitian");
  const int half = (d - 1) / 2;
  for (uint64_t j = 0; j < N; ++j)
    for (uint64_t k = 0; k < N; ++k)
      if (h(j, k) != cplx(0.0) && std::abs(circular_offset(j, k, N)) > half) {
        throw InvalidInput("band: nonzero entry (" + std::to_string(j) + "," + std::to_string(k) +
                           ") outside the band");
      }
  HamiltonianSpec s;
  s.family_ = Family::Band;
  s.n_ = std::countr_zero(N);
  s.d_ = d;
  s.m_ = 1;
  s.band_ = h;
  s.original_dim_ = N;
  s.finalize();
  return s;
}

HamiltonianSpec HamiltonianSpec::dense_explicit(const Mat& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw InvalidInput("dense_explicit: matrix must be square");
  if (!is_hermitian(h)) throw InvalidInput("dense_explicit: matrix is not Hermitian");
  uint64_t N = std::bit_ceil(static_cast<uint64_t>(h.rows()));
  for (;;) {
    int half = 0;
    for (Eigen::Index j = 0; j < h.rows(); ++j)
      for (Eigen::Index k = 0; k < h.cols(); ++k)
        if (h(j, k) != cplx(0.0)) half = std::max(half, std::abs(circular_offset(j, k, N)));
    if (static_cast<uint64_t>(2 * half + 1) <= N) {
      Mat p = Mat::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
      p.topLeftCorner(h.rows(), h.cols()) = h;
      HamiltonianSpec s = band(p, 2 * half + 1);
      s.family_ = Family::DenseExplicit;
      s.original_dim_ = static_cast<uint64_t>(h.rows());
      return s;
    }
    N *= 2;
    if (N > (uint64_t{1} << kMaxQubits)) throw CapExceeded("dense_explicit: padding too large");
  }
}

HamiltonianSpec HamiltonianSpec::pauli_product(const std::string& paulis, double scale) {
  HamiltonianSpec s = pauli_sum(static_cast<int>(paulis.size()), {PauliTerm{scale, paulis}});
  s.family_ = Family::PauliProduct;
  return s;
}

HamiltonianSpec HamiltonianSpec::pauli_sum(int n, const std::vector<PauliTerm>& terms) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("pauli_sum: n out of range");
  if (terms.empty()) throw InvalidInput("pauli_sum: no terms");
  for (const auto& t : terms) {
    if (static_cast<int>(t.paulis.size()) != n) throw InvalidInput("pauli_sum: string length differs from n");
    for (char c : t.paulis)
      if (!valid_pauli_char(c)) throw InvalidInput("pauli_sum: malformed Pauli string '" + t.paulis + "'");
  }
  HamiltonianSpec s;
  s.family_ = Family::PauliSum;
  s.n_ = n;
  s.d_ = 1;
  s.m_ = static_cast<int>(terms.size());
  s.paulis_ = terms;
  s.original_dim_ = uint64_t{1} << n;
  s.finalize();
  return s;
}

HamiltonianSpec HamiltonianSpec::local_clause(int n, const Clause& clause) {
  HamiltonianSpec s = local_hamiltonian(n, {clause});
  s.family_ = Family::LocalClause;
  return s;
}

HamiltonianSpec HamiltonianSpec::local_hamiltonian(int n, const std::vector<Clause>& clauses) {
  if (n < 1 || n > kMaxQubits) throw InvalidInput("local_hamiltonian: n out of range");
  if (clauses.empty()) throw InvalidInput("local_hamiltonian: no clauses");
  const int l = std::popcount(clauses[0].mask);
  for (const auto& c : clauses) {
    if (c.mask == 0 || (c.mask >> n) != 0) throw InvalidInput("local_hamiltonian: clause mask out of range");
    if (std::popcount(c.mask) != l) throw InvalidInput("local_hamiltonian: clauses must share one locality");
    if (c.block.rows() != (Eigen::Index{1} << l) || c.block.cols() != c.block.rows()) {
      throw InvalidInput("local_hamiltonian: clause block must be 2^l x 2^l");
    }
    if (!is_hermitian(c.block)) throw InvalidInput("local_hamiltonian: clause block is not Hermitian");
  }
  HamiltonianSpec s;
  s.family_ = Family::LocalHamiltonian;
  s.n_ = n;
  s.l_ = l;
  s.d_ = 1 << l;
  s.m_ = static_cast<int>(clauses.size());
  s.clauses_ = clauses;
  s.original_dim_ = uint64_t{1} << n;
  s.finalize();
  return s;
}

void HamiltonianSpec::scale_payload(double c) {
  band_ *= c;
  for (auto& t : paulis_) t.coeff *= c;
  for (auto& cl : clauses_) cl.block *= c;
}

void HamiltonianSpec::finalize() {
  pauli_flip_.clear();
  for (const auto& t : paulis_) pauli_flip_.push_back(pauli_flip_mask(t.paulis));
  if (!paulis_.empty() && n_ <= 10 && !is_hermitian(materialize_dense())) {
    throw InvalidInput("pauli_sum: coefficients do not give a Hermitian sum");
  }
  if (!paulis_.empty() && n_ > 10) {
    for (const auto& t : paulis_)
      if (std::abs(t.coeff.imag()) > 1e-15) throw InvalidInput("pauli_sum: complex coefficient above dense cap");
  }
  const double mx = max_norm();
  if (mx > 1.0) {
    scale_payload(1.0 / mx);
    normalization_ *= mx;
  }
  build_structure();
}

double HamiltonianSpec::max_norm() const {
  if (n_ <= 16) {
    double mx = 0.0;
    for (uint64_t j = 0; j < N(); ++j)
      for (int w = 0; w < m_; ++w)
        for (uint64_t t = 0; t < static_cast<uint64_t>(d_); ++t) mx = std::max(mx, std::abs(entry(j, neighbor(w, j, t))));
    return mx;
  }
  double bound = 0.0;
  for (const auto& t : paulis_) bound += std::abs(t.coeff);
  for (const auto& c : clauses_) bound += max_abs_entry(c.block);
  return bound;
}

void HamiltonianSpec::build_structure() {
  auto so = std::make_shared<StructureOracle>();
  so->n = n_;
  const uint64_t N = this->N();
  const uint64_t nm = low_mask(n_);
  const int n = n_;
  switch (family_) {
    case Family::Band:
    case Family::DenseExplicit: {
      const uint64_t shift = static_cast<uint64_t>((d_ - 1) / 2);
      so->g_width = n;
      so->uses_op = false;
      so->s_of = [](uint64_t) { return uint64_t{0}; };
      so->g_map = [N, shift](uint64_t t, uint64_t) { return (t + N - shift % N) % N; };
      so->g_unmap = [N, shift](uint64_t g, uint64_t) { return (g + shift) % N; };
      so->compose = BinaryOp{"op.add", n, [N](uint64_t a, uint64_t b) { return (a + b) % N; }, 0};
      so->f = [N](uint64_t j, uint64_t x) { return (j + x) % N; };
      so->l_inv = [N](uint64_t, uint64_t j, uint64_t k) { return (k + N - j) % N; };
      break;
    }
    case Family::PauliProduct:
    case Family::PauliSum: {
      auto flips = pauli_flip_;
      so->g_width = n;
      so->uses_op = true;
      so->s_of = [flips](uint64_t w) { return flips.at(w); };
      so->g_map = [](uint64_t t, uint64_t s) { return t ^ s; };
      so->g_unmap = [](uint64_t g, uint64_t s) { return g ^ s; };
      so->compose = BinaryOp{"op.xor", n, [](uint64_t a, uint64_t b) { return a ^ b; }, 0};
      so->f = [nm](uint64_t j, uint64_t x) { return (j ^ x) & nm; };
      so->l_inv = [](uint64_t s, uint64_t, uint64_t) { return s; };
      break;
    }
    case Family::LocalClause:
    case Family::LocalHamiltonian: {
      // Pair encoding (value, mask): value in the low n bits, mask above.
      std::vector<uint64_t> masks;
      for (const auto& c : clauses_) masks.push_back(c.mask);
      const int l = l_;
      so->g_width = 2 * n;
      so->uses_op = true;
      so->s_of = [masks](uint64_t w) { return masks.at(w); };
      so->g_map = [n, nm, l](uint64_t g, uint64_t s) {
        const uint64_t v = g & nm, mk = g >> n;
        const uint64_t lifted = deposit_bits(v & low_mask(l), s) | deposit_bits(v >> l, ~s & nm);
        return lifted | ((mk ^ s) << n);
      };
      so->g_unmap = [n, nm, l](uint64_t g, uint64_t s) {
        const uint64_t v = g & nm, mk = g >> n;
        const uint64_t flat = extract_bits(v, s) | (extract_bits(v, ~s & nm) << l);
        return flat | ((mk ^ s) << n);
      };
      so->compose = BinaryOp{"op.overwrite", 2 * n,
                             [n, nm](uint64_t a, uint64_t b) {
                               const uint64_t xa = a & nm, ma = a >> n, xb = b & nm, mb = b >> n;
                               const uint64_t x = (xa & ~mb) | (xb & mb);
                               return (x & nm) | (((ma | mb) & nm) << n);
                             },
                             0};
      so->f = [n, nm](uint64_t j, uint64_t x) {
        const uint64_t v = x & nm, mk = x >> n;
        return ((j & ~mk) | (v & mk)) & nm;
      };
      so->l_inv = [n](uint64_t s, uint64_t, uint64_t k) { return (k & s) | (s << n); };
      break;
    }
  }
  structure_ = so;
}

cplx HamiltonianSpec::term_entry(int w, uint64_t j, uint64_t k) const {
  switch (family_) {
    case Family::Band:
    case Family::DenseExplicit: return band_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    case Family::PauliProduct:
    case Family::PauliSum: return paulis_[w].coeff * pauli_element(paulis_[w].paulis, j, k);
    default: {
      const auto& c = clauses_[w];
      if ((j ^ k) & ~c.mask) return 0.0;
      return c.block(static_cast<Eigen::Index>(extract_bits(j, c.mask)),
                     static_cast<Eigen::Index>(extract_bits(k, c.mask)));
    }
  }
}

cplx HamiltonianSpec::entry(uint64_t j, uint64_t k) const {
  cplx s = 0.0;
  for (int w = 0; w < m_; ++w) s += term_entry(w, j, k);
  return s;
}

uint64_t HamiltonianSpec::neighbor(int w, uint64_t j, uint64_t t) const {
  if (w < 0 || w >= m_ || j >= N() || t >= static_cast<uint64_t>(d_)) {
    throw InvalidInput("neighbor: argument out of range");
  }
  switch (family_) {
    case Family::Band:
    case Family::DenseExplicit: {
      const uint64_t shift = static_cast<uint64_t>((d_ - 1) / 2);
      return (j + t + N() - shift) % N();
    }
    case Family::PauliProduct:
    case Family::PauliSum: return j ^ pauli_flip_[w];
    default: {
      const uint64_t mk = clauses_[w].mask;
      return (j & ~mk) | deposit_bits(t, mk);
    }
  }
}

bool HamiltonianSpec::member(int w, uint64_t j, uint64_t k) const {
  switch (family_) {
    case Family::Band:
    case Family::DenseExplicit: return std::abs(circular_offset(j, k, N())) <= (d_ - 1) / 2;
    case Family::PauliProduct:
    case Family::PauliSum: return (j ^ k) == pauli_flip_[w];
    default: return ((j ^ k) & ~clauses_[w].mask) == 0;
  }
}

int HamiltonianSpec::overlap_count(uint64_t j, uint64_t k) const {
  int c = 0;
  for (int w = 0; w < m_; ++w) c += member(w, j, k) ? 1 : 0;
  return c;
}

cplx HamiltonianSpec::rescaled_entry(uint64_t j, uint64_t k) const {
  const int c = overlap_count(j, k);
  return c > 0 ? entry(j, k) / static_cast<double>(c) : cplx(0.0);
}

uint64_t HamiltonianSpec::iterate_L(const std::vector<int>& w, uint64_t j, const std::vector<uint64_t>& t) const {
  if (w.size() != t.size() || w.empty()) throw InvalidInput("iterate_L: need equal non-empty w and t");
  for (size_t s = 0; s < w.size(); ++s) j = neighbor(w[s], j, t[s]);
  return j;
}

uint64_t HamiltonianSpec::factored_L(const std::vector<int>& w, uint64_t j, const std::vector<uint64_t>& t) const {
  if (w.size() != t.size() || w.empty()) throw InvalidInput("factored_L: need equal non-empty w and t");
  const auto& so = structure();
  uint64_t x = so.g(static_cast<uint64_t>(w[0]), t[0]);
  for (size_t s = 1; s < w.size(); ++s) x = so.compose.fn(x, so.g(static_cast<uint64_t>(w[s]), t[s]));
  return so.f(j, x);
}

Mat HamiltonianSpec::term_dense(int w, int cap) const {
  if (n_ > cap) throw CapExceeded("materialize_dense: n above dense cap");
  const auto D = static_cast<Eigen::Index>(N());
  Mat h = Mat::Zero(D, D);
  for (uint64_t j = 0; j < N(); ++j)
    for (uint64_t t = 0; t < static_cast<uint64_t>(d_); ++t) {
      const uint64_t k = neighbor(w, j, t);
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = term_entry(w, j, k);
    }
  return h;
}

Mat HamiltonianSpec::materialize_dense(int cap) const {
  if (n_ > cap) throw CapExceeded("materialize_dense: n above dense cap");
  const auto D = static_cast<Eigen::Index>(N());
  Mat h = Mat::Zero(D, D);
  for (int w = 0; w < m_; ++w) h += term_dense(w, cap);
  return h;
}

HamiltonianSpec HamiltonianSpec::scaled(double c) const {
  if (!(c > 0.0)) throw InvalidInput("scaled: factor must be positive");
  HamiltonianSpec s = *this;
  s.scale_payload(c);
  s.normalization_ = normalization_ / c;
  s.build_structure();
  return s;
}

nlohmann::json HamiltonianSpec::to_json() const {
  nlohmann::json j;
  j["family"] = family_name(family_);
  j["n"] = n_;
  j["d"] = d_;
  j["m"] = m_;
  j["normalization"] = normalization_;
  nlohmann::json p;
  switch (family_) {
    case Family::Band:
    case Family::DenseExplicit:
      p["matrix"] = matrix_to_json(band_);
      p["original_dim"] = original_dim_;
      break;
    case Family::PauliProduct:
    case Family::PauliSum:
      p["terms"] = nlohmann::json::array();
      for (const auto& t : paulis_) p["terms"].push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"paulis", t.paulis}});
      break;
    default:
      p["clauses"] = nlohmann::json::array();
      for (const auto& c : clauses_) p["clauses"].push_back({{"mask", c.mask}, {"block", matrix_to_json(c.block)}});
      break;
  }
  j["params"] = p;
  return j;
}

HamiltonianSpec HamiltonianSpec::from_json(const nlohmann::json& j) {
  try {
    const Family f = family_from_name(j.at("family").get<std::string>());
    const auto& p = j.at("params");
    HamiltonianSpec s;
    switch (f) {
      case Family::Band: s = band(matrix_from_json(p.at("matrix")), j.at("d").get<int>()); break;
      case Family::DenseExplicit: {
        Mat m = matrix_from_json(p.at("matrix"));
        const auto od = static_cast<Eigen::Index>(p.value("original_dim", static_cast<uint64_t>(m.rows())));
        s = dense_explicit(m.topLeftCorner(od, od));
        break;
      }
      case Family::PauliProduct:
      case Family::PauliSum: {
        std::vector<PauliTerm> terms;
        for (const auto& t : p.at("terms"))
          terms.push_back({cplx(t.at("coeff")[0].get<double>(), t.at("coeff")[1].get<double>()),
                           t.at("paulis").get<std::string>()});
        s = pauli_sum(j.at("n").get<int>(), terms);
        s.family_ = f;
        break;
      }
      default: {
        std::vector<Clause> cl;
        for (const auto& c : p.at("clauses")) cl.push_back({c.at("mask").get<uint64_t>(), matrix_from_json(c.at("block"))});
        s = local_hamiltonian(j.at("n").get<int>(), cl);
        s.family_ = f;
        break;
      }
    }
    s.normalization_ *= j.value("normalization", 1.0);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("spec json: ") + e.what());
  }
}

// ------------------------------------------------------------ entry oracle

int angle_bits_for(int b) { return b >= kExactBits ? kExactAngleBits : b / 2 + 4; }

double rotation_bound_per_edge(int b) { return std::ldexp(1.0, -b / 2 + 2); }

EntryOracle::EntryOracle(std::shared_ptr<const HamiltonianSpec> spec, int b, bool rescaled)
    : spec_(std::move(spec)), b_(b), rescaled_(rescaled) {
  if (b < 8 || b > kExactBits || b % 2) throw InvalidInput("EntryOracle: b must be even in [8, 104]");
  const uint64_t N = spec_->N();
  if (N <= 256) {
    table_.resize(N * N);
    for (uint64_t j = 0; j < N; ++j)
      for (uint64_t k = 0; k < N; ++k) table_[j * N + k] = compute(j, k);
  }
}

double EntryOracle::lsb() const { return std::ldexp(1.0, -(component_bits() - 2)); }

std::pair<int64_t, int64_t> EntryOracle::compute(uint64_t j, uint64_t k) const {
  if (j > k) {
    auto [re, im] = compute(k, j);
    return {re, -im};
  }
  const cplx x = rescaled_ ? spec_->rescaled_entry(j, k) : spec_->entry(j, k);
  const int cb = component_bits();
  const double scale = std::ldexp(1.0, cb - 2);
  const int64_t hi = (int64_t{1} << (cb - 1)) - 1, lo = -(int64_t{1} << (cb - 1));
  auto q = [&](double v) { return std::clamp(static_cast<int64_t>(std::llround(v * scale)), lo, hi); };
  if (j == k) return {q(x.real()), 0};
  int64_t re = q(x.real()), im = q(x.imag());
  return {re, im};
}

std::pair<int64_t, int64_t> EntryOracle::code(uint64_t j, uint64_t k) const {
  if (!table_.empty()) return table_[j * spec_->N() + k];
  return compute(j, k);
}

cplx EntryOracle::decode(int64_t re, int64_t im) const {
  const double s = lsb();
  return {static_cast<double>(re) * s, static_cast<double>(im) * s};
}

cplx EntryOracle::value(uint64_t j, uint64_t k) const {
  auto [re, im] = code(j, k);
  return decode(re, im);
}

uint64_t EntryOracle::pack(int64_t c) const {
  return static_cast<uint64_t>(c) & low_mask(component_bits());
}

int64_t EntryOracle::unpack(uint64_t v) const {
  const int cb = component_bits();
  if ((v >> (cb - 1)) & 1) return static_cast<int64_t>(v | ~low_mask(cb));
  return static_cast<int64_t>(v);
}

}  // namespace pqw
