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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pqw/cli.hpp"
#include "pqw/report.hpp"

namespace {

void add_common(CLI::App* sub, pqw::RunConfig& c, std::string& r_list, std::string& tau_list) {
  sub->add_option("--family", c.family, "band | pauli-product | pauli-sum | local-clause | local-hamiltonian");
  sub->add_option("--pauli", c.pauli, "Pauli string, or comma-separated coeff*STRING terms for pauli-sum");
  sub->add_flag("--band-example", c.band_example, "use the 4x4 three-band example matrix");
  sub->add_option("--model", c.model, "heisenberg | syk | molecular | parity");
  sub->add_option("--model-file", c.model_file, "integral JSON for --model molecular");
  sub->add_option("--x", c.x, "input bits for --model parity");
  sub->add_option("--n", c.n, "qubits (or sites, or fermion pairs for syk)");
  sub->add_option("--d", c.d, "band width for a random band Hamiltonian");
  sub->add_option("--m", c.m, "clause count for a random local Hamiltonian");
  sub->add_option("--locality", c.locality, "clause locality for random local families");
  sub->add_option("--r", c.r, "walk steps");
  sub->add_option("--t", c.t, "simulation time");
  sub->add_option("--eps", c.eps, "target precision");
  sub->add_option("--J", c.J, "SYK coupling scale");
  sub->add_option("--b", c.b, "oracle bits (even, 8..104)");
  sub->add_option("--seed", c.seed, "seed for random instances");
  sub->add_flag("--exact", c.exact, "exact-rotation mode (b = 104)");
  sub->add_flag("--queries-as-gates", c.queries_as_gates, "count oracle queries as unit gates in gate totals");
  sub->add_flag("!--no-half-scaling", c.half_scaling, "simulate H for time t instead of H/2 for 2t");
  sub->add_option("--level", c.level, "1 full circuits, 2 edge-factorized blocks, 0 automatic");
  sub->add_option("--variant", c.variant, "single | extended | childs");
  sub->add_option("--r-list", r_list, "comma-separated r sweep for bench-depth");
  sub->add_option("--tau-list", tau_list, "comma-separated segment-count sweep for bench-depth");
  sub->add_option("--max-qubits", c.max_qubits, "circuit width cap (default PQW_MAX_QUBITS or 4096)");
  sub->add_option("--enum-limit", c.enum_limit, "path enumeration cap (default PQW_ENUM_LIMIT or 1e6)");
  sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
  sub->add_option("--csv", c.csv, "also write the table as CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel quantum walk Hamiltonian simulation driver"};
  app.require_subcommand(1);
  pqw::RunConfig cfg;
  cfg.apply_env_caps();
  std::string r_list = "1,2,4,8", tau_list = "1,2,4";
  const std::pair<const char*, const char*> subs[] = {
      {"verify-walk", "certify Q^(r) against (H/d)^r and brute-force path sums"},
      {"simulate", "build the segmented simulation circuit and compare with e^{-iHt}"},
      {"bench-depth", "sweep r and segment count, recording counted depths"}};
  for (const auto& [name, about] : subs) {
    CLI::App* sub = app.add_subcommand(name, about);
    add_common(sub, cfg, r_list, tau_list);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pqw::kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  pqw::CommandResult res;
  try {
    cfg.r_list = pqw::parse_int_list(r_list);
    cfg.tau_list = pqw::parse_int_list(tau_list);
    res = pqw::run_command(cfg);
  } catch (const pqw::InvalidInput& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return pqw::kExitConfig;
  }

  const std::string text = res.report.dump(2) + "\n";
  if (res.exit_code == pqw::kExitConfig || res.exit_code == pqw::kExitCap) {
    std::cerr << text;
    return res.exit_code;
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!(f << text)) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return pqw::kExitConfig;
    }
  }
  if (!cfg.csv.empty()) {
    std::ofstream f(cfg.csv);
    if (!(f << pqw::csv_table(res.rows))) {
      std::cerr << "cannot write " << cfg.csv << "\n";
      return pqw::kExitConfig;
    }
  }
  return res.exit_code;
}
