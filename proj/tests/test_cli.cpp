// Copyright 2026 The dqcopt Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dqc/cli.hpp"
#include "test_support.hpp"

using namespace dqc;
using dqc::testing::read_file;
using dqc::testing::source_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("dqcopt_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::string kExample = source_path("circuits/example.dqc");

}  // namespace

TEST(Cli, OptimizeAllConfigs) {
  const auto r = run({"optimize", kExample, "--all-configs"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(count_lines(r.out), 1 + 32 + 1 + 5U);
  EXPECT_NE(r.out.find("best n_t: 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("mode: strict\n"), std::string::npos);
}

TEST(Cli, OptimizeBestOnly) {
  const auto r = run({"optimize", kExample});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("config | teleportations | n_t\n24 | g2(T), g5(C) | 4\n", 0), 0U);
}

TEST(Cli, RelaxedModeMatchesGolden) {
  const auto r = run({"optimize", kExample, "--all-configs", "--mode", "relaxed"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, read_file("tests/fixtures/example_table.txt"));
}

TEST(Cli, Verify) {
  const auto r = run({"optimize", kExample, "--verify"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verification: pass"), std::string::npos);

  const auto m = run({"optimize", kExample, "--verify", "--output", "machine"});
  EXPECT_EQ(m.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(m.out)["verification"], "pass");
}

TEST(Cli, VerifyFailureExitCode) {
  const std::string file = write_temp("thetapi.dqc", "qubits 2 2\ncnot p0:0 p1:0\ncnot p0:1 p1:1\nz p1:1\n");
  EXPECT_EQ(run({"optimize", file, "--verify"}).code, kExitOk);
  const auto r = run({"optimize", file, "--verify", "--mode", "relaxed"});
  EXPECT_EQ(r.code, kExitVerifyFailed);
  EXPECT_NE(r.out.find("verification: FAIL"), std::string::npos);
}

TEST(Cli, MachineOutput) {
  const auto r = run({"optimize", kExample, "--output", "machine", "--jobs", "3"});
  EXPECT_EQ(r.code, kExitOk);
  const auto rep = parse_machine_report(r.out);
  EXPECT_EQ(rep.best_index, 24U);
  EXPECT_EQ(rep.per_config.size(), 32U);
}

TEST(Cli, CapExceeded) {
  const auto r = run({"optimize", kExample, "--max-global", "3"});
  EXPECT_EQ(r.code, kExitCap);
  EXPECT_NE(r.err.find("--max-global"), std::string::npos);

  std::string big = "qubits 1 1\n";
  for (int i = 0; i < 13; ++i) big += "h p0:0\n";
  EXPECT_EQ(run({"oracle", write_temp("big.dqc", big)}).code, kExitCap);
  EXPECT_EQ(run({"oracle", kExample, "--limit", "2"}).code, kExitCap);
}

TEST(Cli, NoFinalReturn) {
  const auto r = run({"optimize", kExample, "--no-final-return"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("best n_t: 3\n"), std::string::npos);
}

TEST(Cli, Check) {
  const auto ok = run({"check", kExample});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_EQ(ok.out, "ok: 4 qubits (2+2), 9 gates, 5 global\n");

  const std::string bad = write_temp("bad.dqc", "qubits 1 1\ncnot p0:0 p0:0\n");
  const auto r = run({"check", bad});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find(bad + ":2:11: error: CNOT control equals target"), std::string::npos);
}

TEST(Cli, Oracle) {
  const auto r = run({"oracle", kExample});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("min n_t: 4\n"), std::string::npos);

  const auto pinned = run({"oracle", kExample, "--config", "9"});
  EXPECT_EQ(pinned.code, kExitOk);
  EXPECT_NE(pinned.out.find("config: {0,1,0,0,1}\n"), std::string::npos);
  EXPECT_EQ(run({"oracle", kExample, "--config", "32"}).code, kExitInvalid);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitInvalid);
  EXPECT_EQ(run({"optimize"}).code, kExitInvalid);
  EXPECT_EQ(run({"optimize", kExample, "--mode", "loose"}).code, kExitInvalid);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInvalid);
  EXPECT_EQ(run({"check", "/nonexistent/file.dqc"}).code, kExitInvalid);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("optimize"), std::string::npos);
}
