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

#ifndef PQW_CLI_HPP
#define PQW_CLI_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pqw/hamiltonians.hpp"

namespace pqw {

enum ExitCode : int { kExitPass = 0, kExitBound = 2, kExitConfig = 3, kExitCap = 4 };

struct RunConfig {
  std::string command;  // verify-walk | simulate | bench-depth
  // Hamiltonian selector: a family with its parameters, or a model.
  std::string family;   // band | pauli-product | pauli-sum | local-clause | local-hamiltonian
  std::string pauli;    // "XZ", or "0.5*XX,0.3*ZI" for pauli-sum
  bool band_example = false;  // the 4x4 three-band example matrix
  std::string model;    // heisenberg | syk | molecular | parity
  std::string model_file;
  std::string x;        // parity input bits, e.g. "101"
  int n = 0, d = 3, m = 2, locality = 2;
  int r = 1;
  double t = 0.0, eps = 1e-2, J = 1.0;
  int b = 0;            // 0: exact rotations for verify-walk, derived for simulate
  uint64_t seed = 0;
  bool exact = false, queries_as_gates = false, half_scaling = true;
  int level = 0;
  std::string variant;  // single | extended | childs, empty for automatic
  std::vector<int> r_list{1, 2, 4, 8}, tau_list{1, 2, 4};
  int max_qubits = 4096;
  uint64_t enum_limit = 1000000;
  std::string out, csv;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  // Caps default to PQW_MAX_QUBITS / PQW_ENUM_LIMIT when set.
  void apply_env_caps();
  // Throws InvalidInput on inconsistent combinations.
  void validate() const;
};

struct CommandResult {
  int exit_code = kExitPass;
  nlohmann::json report;  // full envelope
  nlohmann::json rows = nlohmann::json::array();  // CSV mirror
};

std::shared_ptr<const HamiltonianSpec> build_spec(const RunConfig& cfg);
// [[1, i, 0, 0], [-i, 2, 3, 0], [0, 3, -1, -i], [0, 0, i, 1]], three-band.
Mat band_example_matrix();

CommandResult cmd_verify_walk(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);
CommandResult cmd_bench_depth(const RunConfig& cfg);
// Dispatches and maps InvalidInput to 3 and CapExceeded to 4 with an error report.
CommandResult run_command(const RunConfig& cfg);

std::vector<int> parse_int_list(const std::string& s);

}  // namespace pqw

#endif  // PQW_CLI_HPP
