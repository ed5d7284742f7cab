// Copyright 2026 The sqlclp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "json.hpp"
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "criteria.hpp"

namespace sqlclp::testing {
namespace {

namespace fs = std::filesystem;

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "sqlclp_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string cli(const std::string& args, int* status) {
  return run_command(std::string("'") + SQLCLP_CLI_PATH + "' " + args + " 2>&1", status);
}

TEST(Cli, WarningExitsOne) {
  std::string f = write_temp("examples.sql",
                             "CREATE TABLE employees(ename VARCHAR(20), dept VARCHAR(10), salary INT);\n"
                             "SELECT * FROM employees WHERE dept='IT' AND dept='HR';\n");
  int status = -1;
  std::string out = cli("analyze '" + f + "'", &status);
  EXPECT_EQ(status, 1);
  EXPECT_EQ(out, "warning[W001] " + f + ":2:45 inconsistent condition\n");
}

TEST(Cli, CleanScriptIsSilent) {
  std::string f = write_temp("clean.sql", "CREATE TABLE t(a INT);\nSELECT a FROM t;\n");
  int status = -1;
  EXPECT_EQ(cli("analyze '" + f + "'", &status), "");
  EXPECT_EQ(status, 0);
}

TEST(Cli, SyntaxErrorExitsTwo) {
  std::string f = write_temp("bad.sql", "SELECT FROM;\n");
  int status = -1;
  std::string out = cli("analyze '" + f + "'", &status);
  EXPECT_EQ(status, 2);
  EXPECT_EQ(out.rfind("error[syntax] " + f + ":1:8", 0), 0u) << out;
}

TEST(Cli, MissingFileExitsTwo) {
  int status = -1;
  cli("analyze /nonexistent/nothing.sql", &status);
  EXPECT_EQ(status, 2);
}

TEST(Cli, JsonFromStdin) {
  std::string f = write_temp("gas.sql", "CREATE TABLE t(x INT);\nSELECT x FROM t WHERE x > 3 AND x < 2;\n");
  int status = -1;
  std::string out = run_command(std::string("'") + SQLCLP_CLI_PATH + "' analyze --format json - < '" + f + "'", &status);
  EXPECT_EQ(status, 1);
  auto j = nlohmann::json::parse(out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["code"], "W001");
  EXPECT_EQ(j[0]["file"], "<stdin>");
  EXPECT_EQ(j[0]["line"], 2);
  EXPECT_EQ(j[0].size(), 5u);
}

TEST(Cli, EmitPrograms) {
  std::string f = write_temp("emit.sql", "CREATE TABLE t(x INT CHECK x > 0);\nSELECT x FROM t WHERE x < 5;\n");
  int status = -1;
  std::string out = cli("analyze --emit datalog --emit clp '" + f + "'", &status);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("answer(X1) :- t(X1), X1<5."), std::string::npos) << out;
  EXPECT_NE(out.find("ctr(X1>0,integer)"), std::string::npos) << out;
}

TEST(Cli, Bench) {
  int status = -1;
  std::string out = cli("bench --nest 5 --format json", &status);
  EXPECT_EQ(status, 0);
  auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["n"], 5);
  EXPECT_TRUE(j.contains("total_ms"));
}

TEST(Cli, Deterministic) {
  auto r = determinism_criterion(SQLCLP_CLI_PATH, SQLCLP_CORPUS_DIR);
  for (const auto& d : r.details) std::cout << d << "\n";
  EXPECT_TRUE(r.pass);
}

}  // namespace
}  // namespace sqlclp::testing
