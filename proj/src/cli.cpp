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

#include "pqw/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "pqw/models.hpp"
#include "pqw/paths.hpp"
#include "pqw/report.hpp"
#include "pqw/simulate.hpp"

namespace pqw {

namespace {

const std::vector<std::string> kCommands{"verify-walk", "simulate", "bench-depth"};
const std::vector<std::string> kFamilies{"band", "pauli-product", "pauli-sum", "local-clause", "local-hamiltonian"};
const std::vector<std::string> kModels{"heisenberg", "syk", "molecular", "parity"};

bool one_of(const std::string& s, const std::vector<std::string>& set) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

struct Rng {
  explicit Rng(uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1p-53; }
  cplx entry() { return {2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0}; }
  std::mt19937_64 eng;
};

Mat random_hermitian(Rng& rng, int dim) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.entry();
  return 0.5 * (g + g.adjoint());
}

std::vector<PauliTerm> parse_pauli_sum(const std::string& s) {
  std::vector<PauliTerm> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    PauliTerm t;
    const auto star = item.find('*');
    if (star == std::string::npos) {
      t.paulis = item;
    } else {
      try {
        t.coeff = std::stod(item.substr(0, star));
      } catch (const std::exception&) {
        throw InvalidInput("--pauli: bad coefficient in '" + item + "'");
      }
      t.paulis = item.substr(star + 1);
    }
    out.push_back(t);
  }
  if (out.empty()) throw InvalidInput("--pauli: no terms");
  return out;
}

std::vector<Clause> random_clauses(int n, int count, int locality, uint64_t seed) {
  if (locality < 1 || locality > n) throw InvalidInput("--locality must lie in [1, n]");
  Rng rng(seed);
  std::vector<Clause> out;
  for (int c = 0; c < count; ++c) {
    uint64_t mask = 0;
    while (std::popcount(mask) < locality) mask |= uint64_t{1} << (rng.eng() % static_cast<uint64_t>(n));
    out.push_back({mask, random_hermitian(rng, 1 << locality)});
  }
  return out;
}

Mat random_band(int n, int d, uint64_t seed) {
  const int N = 1 << n;
  if (d < 1 || d % 2 == 0 || d > N) throw InvalidInput("--d must be odd and at most 2^n");
  Rng rng(seed);
  Mat h = Mat::Zero(N, N);
  const int half = (d - 1) / 2;
  for (int j = 0; j < N; ++j)
    for (int o = 0; o <= half; ++o) {
      const int k = (j + o) % N;
      const cplx v = o == 0 ? cplx(rng.entry().real()) : rng.entry();
      h(j, k) = v;
      h(k, j) = std::conj(v);
    }
  return h;
}

WalkVariant choose_variant(const RunConfig& cfg, const HamiltonianSpec& spec) {
  if (!cfg.variant.empty()) return variant_from_name(cfg.variant);
  return spec.m() > 1 ? WalkVariant::Extended : WalkVariant::Single;
}

void check_qubits(const RunConfig& cfg, const Circuit& c) {
  if (c.num_qubits() > cfg.max_qubits) {
    throw CapExceeded("circuit needs " + std::to_string(c.num_qubits()) + " qubits, cap is " + std::to_string(cfg.max_qubits));
  }
}

nlohmann::json check_json(const std::string& name, bool pass, const std::string& detail) {
  return {{"name", name}, {"pass", pass}, {"detail", detail}};
}

int exit_for(const nlohmann::json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return kExitBound;
  return kExitPass;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

Mat band_example_matrix() {
  const cplx i(0, 1);
  Mat h(4, 4);
  h << 1, i, 0, 0, -i, 2, 3, 0, 0, 3, -1, -i, 0, 0, i, 1;
  return h;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw InvalidInput("");
    } catch (const std::exception&) {
      throw InvalidInput("bad integer list entry '" + item + "'");
    }
  }
  return out;
}

nlohmann::json RunConfig::to_json() const {
  return {{"command", command}, {"family", family},   {"pauli", pauli},     {"band_example", band_example},
          {"model", model},     {"model_file", model_file}, {"x", x},       {"n", n},
          {"d", d},             {"m", m},             {"locality", locality}, {"r", r},
          {"t", t},             {"eps", eps},         {"J", J},             {"b", b},
          {"seed", seed},       {"exact", exact},     {"queries_as_gates", queries_as_gates},
          {"half_scaling", half_scaling}, {"level", level}, {"variant", variant}, {"r_list", r_list},
          {"tau_list", tau_list}, {"max_qubits", max_qubits}, {"enum_limit", enum_limit}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = j.value("command", c.command);
    c.family = j.value("family", c.family);
    c.pauli = j.value("pauli", c.pauli);
    c.band_example = j.value("band_example", c.band_example);
    c.model = j.value("model", c.model);
    c.model_file = j.value("model_file", c.model_file);
    c.x = j.value("x", c.x);
    c.n = j.value("n", c.n);
    c.d = j.value("d", c.d);
    c.m = j.value("m", c.m);
    c.locality = j.value("locality", c.locality);
    c.r = j.value("r", c.r);
    c.t = j.value("t", c.t);
    c.eps = j.value("eps", c.eps);
    c.J = j.value("J", c.J);
    c.b = j.value("b", c.b);
    c.seed = j.value("seed", c.seed);
    c.exact = j.value("exact", c.exact);
    c.queries_as_gates = j.value("queries_as_gates", c.queries_as_gates);
    c.half_scaling = j.value("half_scaling", c.half_scaling);
    c.level = j.value("level", c.level);
    c.variant = j.value("variant", c.variant);
    c.r_list = j.value("r_list", c.r_list);
    c.tau_list = j.value("tau_list", c.tau_list);
    c.max_qubits = j.value("max_qubits", c.max_qubits);
    c.enum_limit = j.value("enum_limit", c.enum_limit);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("config json: ") + e.what());
  }
  return c;
}

void RunConfig::apply_env_caps() {
  if (const char* v = std::getenv("PQW_MAX_QUBITS")) max_qubits = std::atoi(v);
  if (const char* v = std::getenv("PQW_ENUM_LIMIT")) enum_limit = std::strtoull(v, nullptr, 10);
}

void RunConfig::validate() const {
  if (!one_of(command, kCommands)) throw InvalidInput("unknown command '" + command + "' (expected " + join(kCommands) + ")");
  if (!family.empty() && !model.empty()) throw InvalidInput("--family and --model are mutually exclusive");
  if (!family.empty() && !one_of(family, kFamilies)) throw InvalidInput("unknown family '" + family + "' (expected " + join(kFamilies) + ")");
  if (!model.empty() && !one_of(model, kModels)) throw InvalidInput("unknown model '" + model + "' (expected " + join(kModels) + ")");
  if (band_example && !family.empty() && family != "band") throw InvalidInput("--band-example selects the band family");
  if (exact && b != 0 && b != kExactBits) throw InvalidInput("--exact conflicts with --b");
  if (b != 0 && (b < 8 || b > kExactBits || b % 2)) throw InvalidInput("--b must be even in [8, 104]");
  if (r < 0) throw InvalidInput("--r must be >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("--t must be finite and >= 0");
  if (level < 0 || level > 2) throw InvalidInput("--level must be 0, 1 or 2");
  if (!variant.empty()) variant_from_name(variant);
  if (max_qubits < 1) throw InvalidInput("max qubits cap must be positive");
  for (int v : r_list)
    if (v < 1) throw InvalidInput("--r-list entries must be >= 1");
  for (int v : tau_list)
    if (v < 1) throw InvalidInput("--tau-list entries must be >= 1");
  if (command == "simulate" && t > 0.0 && (!(eps > 0.0) || eps > 0.05)) throw InvalidInput("--eps must lie in (0, 0.05]");
}

std::shared_ptr<const HamiltonianSpec> build_spec(const RunConfig& cfg) {
  if (!cfg.model.empty()) {
    if (cfg.model == "heisenberg") return heisenberg(cfg.n ? cfg.n : 3, cfg.seed).spec;
    if (cfg.model == "syk") return syk(cfg.n ? cfg.n : 2, cfg.seed, cfg.J).spec;
    if (cfg.model == "molecular") {
      if (cfg.model_file.empty()) throw InvalidInput("--model molecular needs --model-file");
      return molecular_file(cfg.model_file).spec;
    }
    std::vector<int> x;
    for (char ch : cfg.x) {
      if (ch != '0' && ch != '1') throw InvalidInput("--x must be a bit string");
      x.push_back(ch - '0');
    }
    if (x.empty()) throw InvalidInput("--model parity needs --x");
    return parity_ham(static_cast<int>(x.size()), x).spec;
  }
  const std::string fam = cfg.family.empty() ? (cfg.band_example ? "band" : "pauli-product") : cfg.family;
  if (fam == "band") {
    if (cfg.band_example) return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::band(band_example_matrix(), 3));
    if (cfg.n < 1) throw InvalidInput("band needs --n or --band-example");
    return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::band(random_band(cfg.n, cfg.d, cfg.seed), cfg.d));
  }
  if (fam == "pauli-product") {
    const std::string p = cfg.pauli.empty() ? "Z" : cfg.pauli;
    return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::pauli_product(p));
  }
  if (fam == "pauli-sum") {
    if (cfg.pauli.empty()) throw InvalidInput("pauli-sum needs --pauli");
    auto terms = parse_pauli_sum(cfg.pauli);
    return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::pauli_sum(static_cast<int>(terms[0].paulis.size()), terms));
  }
  if (cfg.n < 1) throw InvalidInput(fam + " needs --n");
  if (fam == "local-clause") {
    return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::local_clause(cfg.n, random_clauses(cfg.n, 1, cfg.locality, cfg.seed)[0]));
  }
  if (cfg.m < 1) throw InvalidInput("--m must be >= 1");
  return std::make_shared<const HamiltonianSpec>(HamiltonianSpec::local_hamiltonian(cfg.n, random_clauses(cfg.n, cfg.m, cfg.locality, cfg.seed)));
}

CommandResult cmd_verify_walk(const RunConfig& cfg) {
  auto spec = build_spec(cfg);
  const int b = cfg.b ? cfg.b : kExactBits;
  const WalkVariant variant = choose_variant(cfg, *spec);
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json result{{"spec", spec->to_json()}, {"r", cfg.r}, {"b", b}, {"variant", variant_name(variant)}};

  if (cfg.r == 0) {
    result["certificate"] = {{"target", "I"}, {"alpha", 1.0}, {"ancillas", 0}, {"bound", 0.0}, {"measured_distance", 0.0}, {"pass", true}};
    checks.push_back(check_json("block_within_bound", true, "r = 0 encodes the identity"));
  } else if (variant == WalkVariant::Childs) {
    BlockEncodingCert cert = chebyshev_certify(spec, cfg.r, b);
    check_qubits(cfg, *cert.circuit);
    result["certificate"] = cert.to_json();
    checks.push_back(check_json("block_within_bound", cert.pass(), "measured " + fmt(cert.measured) + " bound " + fmt(cert.eps_bound)));
  } else {
    WalkBuild q = build_Q(spec, cfg.r, b, variant);
    check_qubits(cfg, *q.circuit);
    BlockEncodingCert cert = certify_block(q);
    result["certificate"] = cert.to_json();
    result["walk"] = q.to_json();
    checks.push_back(check_json("block_within_bound", cert.pass(), "measured " + fmt(cert.measured) + " bound " + fmt(cert.eps_bound)));

    // Independent route: sum path products from brute-force enumeration.
    const double scale = variant == WalkVariant::Extended ? spec->m() * spec->d() : spec->d();
    const auto D = static_cast<Eigen::Index>(spec->N());
    Mat predicted = Mat::Zero(D, D);
    for (Eigen::Index j0 = 0; j0 < D; ++j0) {
      PathTable pt = enumerate_paths(*spec, static_cast<uint64_t>(j0), cfg.r, variant == WalkVariant::Extended, cfg.enum_limit);
      for (const auto& p : pt.paths) predicted(static_cast<Eigen::Index>(p.j.back()), j0) += std::conj(p.product) / std::pow(scale, cfg.r);
    }
    const double path_dist = spectral_distance(predicted, cert.block);
    checks.push_back(check_json("paths_match_block", path_dist <= cert.eps_bound + 1e-12, "distance " + fmt(path_dist)));

    const long long oh = q.cost().depth[kOH], op = q.cost().depth[kOP];
    const long long op_expect = spec->structure().uses_op ? 4 : 0;
    checks.push_back(check_json("oh_depth_constant", oh == 4, "oh_depth " + std::to_string(oh) + " expected 4"));
    checks.push_back(check_json("op_depth_constant", op == op_expect, "op_depth " + std::to_string(op) + " expected " + std::to_string(op_expect)));
  }
  result["checks"] = checks;
  CommandResult res;
  res.exit_code = exit_for(checks);
  res.rows = checks;
  res.report = report_envelope(cfg.to_json(), result);
  return res;
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  auto spec = build_spec(cfg);
  SimOptions opt;
  opt.half_scaling = cfg.half_scaling;
  opt.b = cfg.exact ? kExactBits : cfg.b;
  opt.level = cfg.level;
  // Time refers to the normalized H; the factor lets callers rescale.
  SimulationReport rep = simulate(*spec, cfg.t, cfg.eps, opt);
  nlohmann::json result = rep.to_json();
  result["normalization"] = spec->normalization();
  if (cfg.queries_as_gates) {
    result["cost"]["gate_depth"] = rep.cost.gate_depth(true);
    result["cost"]["gate_size"] = rep.cost.gate_size(true);
  }
  CommandResult res;
  res.exit_code = rep.pass() ? kExitPass : kExitBound;
  res.rows = result["checks"];
  res.report = report_envelope(cfg.to_json(), result);
  return res;
}

CommandResult cmd_bench_depth(const RunConfig& cfg) {
  auto spec = build_spec(cfg);
  const int b = cfg.b ? cfg.b : 32;
  const WalkVariant variant = choose_variant(cfg, *spec) == WalkVariant::Childs ? WalkVariant::Single : choose_variant(cfg, *spec);
  nlohmann::json rows = nlohmann::json::array(), checks = nlohmann::json::array();

  std::vector<long long> pre_depth;
  std::set<long long> oh_set, op_set;
  for (int r : cfg.r_list) {
    WalkBuild q = build_Q(spec, r, b, variant);
    check_qubits(cfg, *q.circuit);
    WalkBuild pw = prewalk(spec, r, variant);
    const CostProfile& c = q.cost();
    pre_depth.push_back(pw.cost().gate_depth(cfg.queries_as_gates));
    oh_set.insert(c.depth[kOH]);
    op_set.insert(c.depth[kOP]);
    rows.push_back({{"sweep", "r"},
                    {"r", r},
                    {"oh_depth", c.depth[kOH]},
                    {"op_depth", c.depth[kOP]},
                    {"gate_depth", c.gate_depth(cfg.queries_as_gates)},
                    {"gate_size", c.gate_size(cfg.queries_as_gates)},
                    {"prewalk_gate_depth", pre_depth.back()},
                    {"qubits", q.circuit->num_qubits()}});
  }
  if (!cfg.r_list.empty()) {
    checks.push_back(check_json("oh_depth_constant_in_r", oh_set.size() == 1, std::to_string(oh_set.size()) + " distinct values"));
    checks.push_back(check_json("op_depth_constant_in_r", op_set.size() == 1, std::to_string(op_set.size()) + " distinct values"));
    // Concave in log2 r: slopes between consecutive sweep points never increase.
    bool concave = true;
    double prev = INFINITY;
    for (size_t i = 1; i < pre_depth.size(); ++i) {
      const double dx = std::log2(cfg.r_list[i]) - std::log2(cfg.r_list[i - 1]);
      if (dx <= 0) {
        concave = false;
        break;
      }
      const double slope = (pre_depth[i] - pre_depth[i - 1]) / dx;
      if (slope > prev + 1e-9) concave = false;
      prev = slope;
    }
    checks.push_back(check_json("prewalk_depth_concave_in_log_r", concave, "r sweep must be increasing"));
  }

  if (!cfg.tau_list.empty()) {
    const double eps = cfg.eps > 0.0 && cfg.eps <= 0.05 ? cfg.eps : 1e-2;
    SimOptions opt;
    opt.b = b;
    opt.level = 2;
    // One full segment fixes R and the segment circuit; tau copies follow.
    const SimulationPlan p = plan(*spec, 1.0 / (spec->m() * spec->d()) / (cfg.half_scaling ? 2.0 : 1.0), eps, opt);
    SegmentResult seg = segment_encoding(std::make_shared<const HamiltonianSpec>(cfg.half_scaling ? spec->scaled(0.5) : *spec), p);
    check_qubits(cfg, *seg.circuit);
    const CostProfile unit = pipeline_circuit(seg, 1).cost();
    bool linear = true;
    std::vector<double> cs;
    for (int tau : cfg.tau_list) {
      const CostProfile c = pipeline_circuit(seg, tau).cost();
      linear = linear && c == unit.scaled(tau);
      const double cq = static_cast<double>(c.depth[kOH]) / (tau * std::log2(p.R));
      cs.push_back(cq);
      rows.push_back({{"sweep", "tau"},
                      {"tau", tau},
                      {"R", p.R},
                      {"oh_depth", c.depth[kOH]},
                      {"op_depth", c.depth[kOP]},
                      {"gate_depth", c.gate_depth(cfg.queries_as_gates)},
                      {"gate_size", c.gate_size(cfg.queries_as_gates)},
                      {"c_oh_per_tau_log_R", cq}});
    }
    const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
    checks.push_back(check_json("pipeline_cost_linear_in_tau", linear, "every resource equals tau times one segment"));
    checks.push_back(check_json("oh_constant_stable", *hi <= *lo * 1.2 + 1e-12, "c in [" + fmt(*lo) + ", " + fmt(*hi) + "]"));
  }

  nlohmann::json result{{"spec", spec->to_json()}, {"b", b}, {"variant", variant_name(variant)}, {"table", rows}, {"checks", checks}};
  CommandResult res;
  res.exit_code = exit_for(checks);
  res.rows = rows;
  res.report = report_envelope(cfg.to_json(), result);
  return res;
}

CommandResult run_command(const RunConfig& cfg) {
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    CommandResult r;
    r.exit_code = code;
    r.report = report_envelope(cfg.to_json(), {{"error", {{"kind", kind}, {"message", msg}}}});
    r.rows = nlohmann::json::array({{{"name", kind}, {"pass", false}, {"detail", msg}}});
    return r;
  };
  try {
    cfg.validate();
    if (cfg.command == "verify-walk") return cmd_verify_walk(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    return cmd_bench_depth(cfg);
  } catch (const CapExceeded& e) {
    return fail(kExitCap, "cap_exceeded", e.what());
  } catch (const InvalidInput& e) {
    return fail(kExitConfig, "configuration_error", e.what());
  }
}

}  // namespace pqw
