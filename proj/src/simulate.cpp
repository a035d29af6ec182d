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

#include "pqw/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Eigenvalues>

namespace pqw {

int taylor_R(double eps) {
  if (!(eps > 0.0) || eps >= 1.0) throw InvalidInput("taylor_R: eps must lie in (0, 1)");
  return std::max(4, static_cast<int>(std::ceil(std::log2(1.0 / eps) - 1e-12)));
}

double taylor_remainder(int R, int samples) {
  if (R < 1 || samples < 1) throw InvalidInput("taylor_remainder: R and samples must be positive");
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const cplx z = std::polar(0.5, 2.0 * M_PI * k / samples);
    cplx term = 1.0, sum = 0.0;
    for (int r = 0; r < R; ++r) {
      sum += term;
      term *= z / static_cast<double>(r + 1);
    }
    worst = std::max(worst, std::abs(std::exp(z) - sum));
  }
  return worst;
}

double oaa_alpha(int l) {
  if (l < 0) throw InvalidInput("oaa_alpha: l must be >= 0");
  return 1.0 / std::sin(M_PI / (2.0 * (2 * l + 1)));
}

int oaa_rounds(double alpha, int max_l) {
  if (!(alpha > 0.0)) throw InvalidInput("oaa_rounds: alpha must be positive");
  for (int l = 0; l <= max_l; ++l)
    if (oaa_alpha(l) >= alpha - 1e-12) return l;
  throw InvalidInput("oaa_rounds: alpha above every amplification threshold up to l = " + std::to_string(max_l));
}

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Distance from m to the nearest unitary: max_i |sigma_i - 1|.
double unitarity_gap(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  double g = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) g = std::max(g, std::abs(svd.singularValues()(i) - 1.0));
  return g;
}

struct Amplified {
  std::shared_ptr<Circuit> circuit;
  Reg system;
};

// U' = U x R_Y(theta) with cos(theta/2) = alpha / alpha_l, then
// (-1)^l U' (R U'^dag R U')^l.
Amplified amplify_circuit(const Circuit& u, const Reg& u_system, double alpha, int l) {
  Circuit up;
  Reg sys = up.alloc(static_cast<int>(u_system.size()), "system");
  Reg place = place_encoding(up, u, u_system, sys, "enc");
  Reg pre = up.alloc(1, "oaa.pre");
  up.append(u, place);
  up.add_gate("oaa.pre", pre, gates::Rot(Axis::Y, 2.0 * std::acos(std::min(1.0, alpha / oaa_alpha(l)))));

  Amplified out;
  out.circuit = std::make_shared<Circuit>(up.num_qubits());
  out.system = sys;
  Reg all(static_cast<size_t>(up.num_qubits()));
  for (int i = 0; i < up.num_qubits(); ++i) all[i] = i;
  Reg anc;
  for (int i = static_cast<int>(sys.size()); i < up.num_qubits(); ++i) anc.push_back(i);
  const Circuit updag = up.dagger();
  Circuit& c = *out.circuit;
  c.append(up, all);
  for (int i = 0; i < l; ++i) {
    add_reflect_zero(c, anc);
    c.append(updag, all);
    add_reflect_zero(c, anc);
    c.append(up, all);
  }
  if (l % 2) c.add_gate("oaa.sign", {anc[0]}, gates::GlobalPhase(-1.0));
  return out;
}

double oaa_bound(const BlockEncodingCert& cert, int l) {
  // Lipschitz estimate of the degree-(2l+1) amplifier plus the distance of
  // the target itself from the unitaries.
  const double gap = unitarity_gap(cert.target);
  const double k = 2 * l + 1;
  return k * k / oaa_alpha(l) * (cert.eps_bound + gap) + gap;
}

}  // namespace

Mat oaa_block(const Mat& a, double alpha, int l) {
  const Eigen::Index N = a.rows();
  const Mat ap = a * (alpha / oaa_alpha(l));
  const Mat I = Mat::Identity(N, N);
  Mat u(2 * N, 2 * N);
  u << ap, psd_sqrt(I - ap * ap.adjoint()), psd_sqrt(I - ap.adjoint() * ap), -ap.adjoint();
  Mat refl = Mat::Identity(2 * N, 2 * N);
  refl.topLeftCorner(N, N) *= -1.0;  // 1 - 2 Pi
  Mat m = u;
  for (int i = 0; i < l; ++i) m = u * refl * u.adjoint() * refl * m;
  if (l % 2) m = -m;
  return m.topLeftCorner(N, N);
}

double oaa_constant(const Mat& v, double alpha, double eps, int probes, uint64_t seed) {
  if (!(eps > 0.0) || probes < 1) throw InvalidInput("oaa_constant: need eps > 0 and probes >= 1");
  const int l = oaa_rounds(alpha);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  double c = 0.0;
  for (int p = 0; p < probes; ++p) {
    Mat e(v.rows(), v.cols());
    for (Eigen::Index i = 0; i < e.size(); ++i) e(i) = cplx(nd(rng), nd(rng));
    e *= eps / spectral_norm(e);
    c = std::max(c, spectral_distance(oaa_block((v + e) / alpha, alpha, l), v) / eps);
  }
  return c;
}

BlockEncodingCert oaa(const BlockEncodingCert& cert, bool use_circuit) {
  const int l = oaa_rounds(cert.alpha);
  BlockEncodingCert out;
  out.target_id = cert.target_id;
  out.alpha = 1.0;
  out.ancillas = cert.ancillas + 1;
  out.target = cert.target;
  out.eps_bound = oaa_bound(cert, l);
  if (use_circuit && cert.circuit) {
    Amplified amp = amplify_circuit(*cert.circuit, cert.system, cert.alpha, l);
    out.block = extract_block(*amp.circuit, amp.system);
    out.system = amp.system;
    out.cost = amp.circuit->cost();
    out.circuit = amp.circuit;
  } else {
    out.block = oaa_block(cert.block, cert.alpha, l);
    out.cost = cert.cost.scaled(2 * l + 1);
  }
  measure(out);
  return out;
}

nlohmann::json SimulationPlan::to_json() const {
  return {{"t", t},
          {"eps", eps},
          {"half_scaling", half_scaling},
          {"t_sim", t_sim},
          {"delta_t", delta_t},
          {"tau", tau},
          {"full_segments", full_segments},
          {"t_tilde", t_tilde},
          {"segments", segments},
          {"eps_segment", eps_segment},
          {"R", R},
          {"s", s},
          {"b", b},
          {"prep_bits", prep_bits},
          {"oaa_l", oaa_l},
          {"level", level},
          {"variant", variant_name(variant)},
          {"walk_eps", walk_eps},
          {"prep_delta", prep_delta}};
}

SimulationPlan plan(const HamiltonianSpec& spec, double t, double eps, const SimOptions& opt) {
  if (!(eps > 0.0) || eps > 0.05) throw InvalidInput("simulate: eps must lie in (0, 0.05]");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("simulate: t must be finite and >= 0");
  if (opt.b != 0 && (opt.b < 8 || opt.b > kExactBits || opt.b % 2)) throw InvalidInput("simulate: b must be even in [8, 104]");
  SimulationPlan p;
  p.t = t;
  p.eps = eps;
  p.half_scaling = opt.half_scaling;
  p.t_sim = opt.half_scaling ? 2.0 * t : t;
  const int md = spec.m() * spec.d();
  p.variant = spec.m() > 1 ? WalkVariant::Extended : WalkVariant::Single;
  p.delta_t = 1.0 / md;
  p.tau = md * p.t_sim;
  p.full_segments = static_cast<int>(std::floor(p.tau + 1e-9));
  p.t_tilde = std::max(0.0, p.t_sim - p.full_segments * p.delta_t);
  if (p.t_tilde * md < 1e-9) p.t_tilde = 0.0;
  p.segments = p.full_segments + (p.t_tilde > 0.0 ? 1 : 0);
  if (p.segments == 0) return p;
  p.eps_segment = eps / p.segments;
  // Half the segment budget goes to truncation, a quarter each to the
  // state preparation and the walks.
  p.R = taylor_R(p.eps_segment / 2.0);
  p.s = ceil_log2(p.R);
  const double alpha = taylor_series(p.R).alpha();
  p.oaa_l = oaa_rounds(alpha);
  p.prep_delta = p.eps_segment / (4.0 * alpha * p.R);
  p.walk_eps = p.eps_segment / (4.0 * alpha * p.s);
  p.prep_bits = std::clamp(static_cast<int>(std::ceil(std::log2(3.0 * p.s * M_PI / (2.0 * p.prep_delta)))), 4, kExactAngleBits);
  if (opt.b > 0) {
    p.b = opt.b;
  } else {
    const double rmax = std::ldexp(1.0, p.s - 1);
    const int half = static_cast<int>(std::ceil(std::log2(8.0 * rmax / p.walk_eps)));
    p.b = std::clamp(2 * half, 16, kExactBits);
  }
  // Simulating W branches over every edge choice and rotation outcome of
  // its largest walk, and T^dagger branches the leftover bad branches again:
  // roughly (2md)^(2^s) basis states per column.
  const double branches = std::pow(2.0 * md, std::ldexp(1.0, p.s));
  const bool level1_ok = p.s <= 3 && branches <= 4096.0;
  if (opt.level == 1 && !level1_ok) throw InvalidInput("simulate: level 1 needs s <= 3 and (2md)^(2^s) <= 4096");
  if (opt.level == 1 || opt.level == 2) {
    p.level = opt.level;
  } else {
    p.level = level1_ok ? 1 : 2;
  }
  return p;
}

SegmentResult segment_encoding(std::shared_ptr<const HamiltonianSpec> spec, const SimulationPlan& p) {
  if (p.R < 1) throw InvalidInput("segment_encoding: empty plan");
  const int md = spec->m() * spec->d();
  const CoefficientSeries series = taylor_series(p.R);
  const Mat K = spec->materialize_dense() / static_cast<double>(md);
  const Mat exact = expm_hermitian(K, 1.0);
  const Mat taylor = series_target(series, K);
  StatePrep V = state_prep(series, p.prep_delta);

  SegmentResult res;
  res.lcu_alpha = series.alpha();
  res.lcu_bound = res.lcu_alpha * p.R * p.prep_delta + res.lcu_alpha * p.s * p.walk_eps;
  std::vector<WalkBuild> walks = power_walks(spec, p.s, p.b, p.variant);
  WCircuit W = build_W(walks);
  Mat A;
  if (p.level == 1) {
    BlockEncodingCert lcu = lcu_combine(V, W, series, K, p.prep_delta, p.walk_eps);
    A = lcu.block;
    // The amplified block is a polynomial in A alone, so it is evaluated on
    // the dilation; simulating the amplifier circuit branches as K^(2l+1).
    res.block = oaa_block(A, res.lcu_alpha, p.oaa_l);
    Amplified amp = amplify_circuit(*lcu.circuit, lcu.system, res.lcu_alpha, p.oaa_l);
    res.circuit = amp.circuit;
    res.system = amp.system;
  } else {
    // Edge-factorized: one circuit-evaluated Q^(1) block, raised to 2^j.
    std::vector<Mat> blocks;
    Mat m = edge_factorized_block(spec, 1, p.b, p.variant);
    for (int j = 0; j < p.s; ++j) {
      blocks.push_back(m);
      m = m * m;
    }
    A = lcu_block(prep_amplitudes(V), blocks);
    res.block = oaa_block(A, res.lcu_alpha, p.oaa_l);
    auto lc = lcu_circuit(V, W);
    Amplified amp = amplify_circuit(*lc, W.system, res.lcu_alpha, p.oaa_l);
    res.circuit = amp.circuit;
    res.system = amp.system;
  }
  res.lcu_measured = spectral_distance(res.lcu_alpha * A, taylor);
  res.before = spectral_distance(res.lcu_alpha * A, exact);
  res.after = spectral_distance(res.block, exact);
  return res;
}

Circuit pipeline_circuit(const SegmentResult& seg, int segments) {
  Circuit c;
  if (!seg.circuit) throw InvalidInput("pipeline_circuit: segment has no circuit");
  Reg sys = c.alloc(static_cast<int>(seg.system.size()), "system");
  Reg place = place_encoding(c, *seg.circuit, seg.system, sys, "segment");
  for (int i = 0; i < segments; ++i) c.append_block(seg.circuit, place, "segment");
  return c;
}

bool SimulationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json SimulationReport::to_json() const {
  nlohmann::json checks_j = nlohmann::json::array();
  for (const auto& c : checks) checks_j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"plan", plan.to_json()},
          {"measured_error", measured_error},
          {"bound", bound},
          {"oaa_ratio", oaa_ratio},
          {"cost",
           {{"gate_depth", cost.depth[kGate]},
            {"gate_size", cost.size[kGate]},
            {"oh_depth", cost.depth[kOH]},
            {"oh_size", cost.size[kOH]},
            {"op_depth", cost.depth[kOP]},
            {"op_size", cost.size[kOP]}}},
          {"checks", checks_j},
          {"pass", pass()}};
}

SimulationReport simulate(const HamiltonianSpec& spec, double t, double eps, const SimOptions& opt) {
  SimulationReport rep;
  rep.plan = plan(spec, t, eps, opt);
  rep.bound = eps;
  const Mat H = spec.materialize_dense();
  const Mat ref = expm_hermitian(H, t);
  const auto N = static_cast<Eigen::Index>(spec.N());
  if (rep.plan.segments == 0) {
    rep.unitary = Mat::Identity(N, N);
    rep.measured_error = spectral_distance(rep.unitary, ref);
    rep.checks.push_back({"error_within_eps", rep.measured_error <= eps, "identity for t = 0"});
    return rep;
  }
  const SimulationPlan& p = rep.plan;
  auto base = std::make_shared<const HamiltonianSpec>(opt.half_scaling ? spec.scaled(0.5) : spec);
  Mat U = Mat::Identity(N, N);
  const SegmentResult* costed = nullptr;
  SegmentResult full, frac;
  if (p.full_segments > 0) {
    full = segment_encoding(base, p);
    for (int i = 0; i < p.full_segments; ++i) U = full.block * U;
    rep.oaa_ratio = full.before > 0 ? full.after / full.before : 0.0;
    costed = &full;
  }
  if (p.t_tilde > 0.0) {
    auto last = std::make_shared<const HamiltonianSpec>(base->scaled(p.t_tilde / p.delta_t));
    frac = segment_encoding(last, p);
    U = frac.block * U;
    if (!costed) {
      costed = &frac;
      rep.oaa_ratio = frac.before > 0 ? frac.after / frac.before : 0.0;
    }
  }
  rep.unitary = U;
  rep.measured_error = spectral_distance(U, ref);

  const double alpha = costed->lcu_alpha;
  rep.checks.push_back({"error_within_eps", rep.measured_error <= eps,
                        "measured " + sci(rep.measured_error) + " vs eps " + sci(eps)});
  rep.checks.push_back({"alpha_below_e", alpha < std::exp(1.0), "alpha " + sci(alpha)});
  rep.checks.push_back({"truncation_within_budget", taylor_remainder(p.R) <= std::ldexp(1.0, -p.R),
                        "R " + std::to_string(p.R)});
  const bool lcu_ok = costed->lcu_measured <= costed->lcu_bound + 1e-12 &&
                      (p.t_tilde == 0.0 || frac.lcu_measured <= frac.lcu_bound + 1e-12);
  rep.checks.push_back({"lcu_within_bound", lcu_ok,
                        "measured " + sci(costed->lcu_measured) + " bound " + sci(costed->lcu_bound)});
  if (opt.build_pipeline || p.level == 1) {
    rep.cost = pipeline_circuit(*costed, p.segments).cost();
    const long long expect = static_cast<long long>(2 * p.oaa_l + 1) * 4 * p.s * p.segments;
    rep.checks.push_back({"oh_depth_formula", rep.cost.depth[kOH] == expect,
                          "oh_depth " + std::to_string(rep.cost.depth[kOH]) + " expected " + std::to_string(expect)});
  }
  return rep;
}

}  // namespace pqw
