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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pqw/cli.hpp"
#include "pqw/report.hpp"

namespace pqw {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

// Runs the driver binary with stderr folded into stdout.
CliRun cli(const std::string& args) {
  const char* bin = std::getenv("PQW_CLI");
  if (!bin) bin = "./pqw_cli";
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  CliRun r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), k);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool all_pass(const nlohmann::json& checks) {
  for (const auto& c : checks)
    if (!c.at("pass").get<bool>()) return false;
  return !checks.empty();
}

TEST(Cli, VerifyWalkPauliProduct) {
  const CliRun r = cli("verify-walk --family pauli-product --pauli XZ --r 2");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = r.json();
  EXPECT_EQ(j.at("schema"), "pqw.report/1");
  EXPECT_TRUE(all_pass(j.at("result").at("checks")));
  EXPECT_EQ(j.at("result").at("checks").size(), 4u);
}

TEST(Cli, VerifyWalkBandExampleIsThirdOfH) {
  const CliRun r = cli("verify-walk --band-example --r 1");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto cert = r.json().at("result").at("certificate");
  EXPECT_LE(cert.at("measured_distance").get<double>(), 1e-8);
  EXPECT_TRUE(cert.at("pass").get<bool>());
  // The band example enters normalized by its largest entry, 3.
  const Mat via_lib = build_spec({.family = "band", .band_example = true})->materialize_dense();
  EXPECT_LT(spectral_distance(via_lib * 3.0, band_example_matrix()), 1e-15);
}

TEST(Cli, VerifyWalkZeroStepsIsIdentity) {
  const CliRun r = cli("verify-walk --family pauli-product --pauli X --r 0");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json().at("result").at("certificate").at("target"), "I");
}

TEST(Cli, SimulateZeroTimeAndHeisenberg) {
  CliRun r = cli("simulate --family pauli-product --pauli Z --t 0 --eps 1e-2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.json().at("result").at("plan").at("segments"), 0);

  r = cli("simulate --model heisenberg --n 3 --seed 1 --t 0.5 --eps 1e-2");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto res = r.json().at("result");
  EXPECT_TRUE(res.at("pass").get<bool>());
  EXPECT_LE(res.at("measured_error").get<double>(), 1e-2);
}

TEST(Cli, BenchDepthSweeps) {
  const std::string csv = ::testing::TempDir() + "pqw_bench.csv";
  const CliRun r = cli("bench-depth --family pauli-product --pauli XZ --r-list 1,2,4 --tau-list 1,2 --csv " + csv);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto res = r.json().at("result");
  EXPECT_EQ(res.at("table").size(), 5u);
  EXPECT_TRUE(all_pass(res.at("checks")));
  for (const auto& row : res.at("table"))
    if (row.at("sweep") == "r") EXPECT_EQ(row.at("oh_depth"), 4);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("gate_depth,gate_size,oh_depth,op_depth,prewalk_gate_depth,qubits,r,sweep,R,", 0), 0u) << text;
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
  std::remove(csv.c_str());
}

TEST(Cli, BenchDepthEmptyLists) {
  const CliRun r = cli("bench-depth --family pauli-product --pauli Z --r-list '' --tau-list ''");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.json().at("result").at("table").empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("verify-walk --family nonsense").code, kExitConfig);
  EXPECT_EQ(cli("simulate --family pauli-product --pauli Z --t 1 --eps 0.5").code, kExitConfig);
  EXPECT_EQ(cli("verify-walk --family pauli-product --pauli XQ").code, kExitConfig);
  EXPECT_EQ(cli("bench-depth --family pauli-product --pauli Z --r-list 1,x").code, kExitConfig);
  EXPECT_EQ(cli("no-such-command").code, kExitConfig);
  EXPECT_EQ(cli("simulate --model heisenberg --n 11 --t 0.1").code, kExitCap);
  EXPECT_EQ(cli("verify-walk --family pauli-product --pauli XZ --r 4 --max-qubits 8").code, kExitCap);
}

TEST(Cli, ByteIdenticalReports) {
  const std::string args = "verify-walk --model heisenberg --n 3 --seed 7 --r 1 --b 24";
  const CliRun a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const auto j = a.json();
  EXPECT_EQ(j.at("config_hash"), hex64(fnv1a64(j.at("config").dump())));
  EXPECT_NE(cli("verify-walk --model heisenberg --n 3 --seed 8 --r 1 --b 24").json().at("config_hash"), j.at("config_hash"));
}

TEST(Cli, OutFileMatchesStdout) {
  const std::string path = ::testing::TempDir() + "pqw_report.json";
  const std::string args = "verify-walk --family pauli-product --pauli Y --r 1";
  const CliRun a = cli(args), b = cli(args + " --out " + path);
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(slurp(path), a.out);
  std::remove(path.c_str());
}

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.command = "simulate";
  c.model = "syk";
  c.n = 3;
  c.t = 0.7;
  c.seed = 99;
  c.r_list = {1, 3};
  c.half_scaling = false;
  const auto j = c.to_json();
  EXPECT_EQ(RunConfig::from_json(j).to_json(), j);
}

TEST(RunConfig, ParseIntList) {
  EXPECT_EQ(parse_int_list("1,2,16"), (std::vector<int>{1, 2, 16}));
  EXPECT_TRUE(parse_int_list("").empty());
  EXPECT_THROW(parse_int_list("1,2x"), InvalidInput);
}

TEST(Report, CsvUnionHeader) {
  const nlohmann::json rows = {{{"a", 1}, {"b", "x"}}, {{"b", "y"}, {"c", {1, 2}}}};
  EXPECT_EQ(csv_table(rows), "a,b,c\n1,x,\n,y,\"[1,2]\"\n");
}

}  // namespace
}  // namespace pqw
