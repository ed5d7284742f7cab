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

#include <filesystem>

#include "criteria.hpp"
#include "sqlclp/analyzer.hpp"
#include "sqlclp/bench.hpp"
#include "sqlclp/report.hpp"
#include "sqlclp/session.hpp"
#include "test_util.hpp"

namespace sqlclp {
namespace {

using testing::codes_of;
using Codes = std::vector<std::string>;

const std::string kEmployees = testing::kEmployees;
const std::string kEmpDept = testing::kEmpDept;
const std::string kGas = testing::kGas;

std::vector<Diagnostic> diags(const std::string& script) { return analyze_script(script).diagnostics; }

TEST(Constraints, InconsistentStrings) {
  auto ds = diags(kEmployees + "SELECT * FROM employees WHERE dept='IT' AND dept='HR';");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W001");
  EXPECT_EQ(ds[0].message, "inconsistent condition");
  EXPECT_EQ(ds[0].span.start_line, 3);
}

TEST(Constraints, InconsistentGas) {
  EXPECT_EQ(codes_of(kGas + "SELECT name FROM gas_products WHERE butane>60 AND propane>50;"), Codes{"W001"});
}

TEST(Constraints, PlainQueryIsClean) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT a FROM t;"), Codes{});
  EXPECT_EQ(codes_of(kEmpDept + "SELECT emp.name, dept.name FROM emp, dept WHERE emp.dept=dept.id;"), Codes{});
}

TEST(Constraints, ConstantOutputColumns) {
  auto ds = diags(kGas + "SELECT butane, propane FROM gas_products WHERE butane-propane=10 AND butane+propane=80;");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].code, "W003");
  EXPECT_NE(ds[0].message.find("butane = 45"), std::string::npos) << ds[0].message;
  EXPECT_NE(ds[1].message.find("propane = 35"), std::string::npos) << ds[1].message;
}

TEST(Constraints, ConstantByNonLinearFd) {
  auto ds = diags("CREATE TABLE t(x INT);\nSELECT x FROM t WHERE x*x=4 AND x>0 AND x<4;");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W003");
  EXPECT_NE(ds[0].message.find("x = 2"), std::string::npos);
}

TEST(Constraints, NonIntegralValueForIntegerColumn) {
  EXPECT_EQ(codes_of("CREATE TABLE t(x INT);\nSELECT x FROM t WHERE x = 2.5;"), Codes{"W001"});
}

TEST(Constraints, CheckInconsistent) {
  auto ds = diags("CREATE TABLE departments(dept VARCHAR(10) PRIMARY KEY);\n"
                  "CREATE TABLE employees(ename VARCHAR(20), dept VARCHAR(10) REFERENCES departments,\n"
                  "  salary INT CHECK salary BETWEEN 5000 AND 2000);");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W001");
  EXPECT_EQ(ds[0].span.start_line, 3);
}

TEST(Constraints, CheckTautology) {
  auto ds = diags("CREATE TABLE employees(ename VARCHAR(20), salary INT CHECK salary > 2000 OR salary < 5000);");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W008");
}

TEST(Constraints, CheckImpliedByAnother) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT CHECK a > 10, CHECK a > 5);"), Codes{"W008"});
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT CHECK a > 10, CHECK a < 50);"), Codes{});
}

TEST(Constraints, WhereTautology) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT a FROM t WHERE a > 3 OR a < 5;"), Codes{"W008"});
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT a FROM t WHERE a > 3 OR a < 1;"), Codes{});
}

TEST(Constraints, SimplifiableCondition) {
  auto ds = diags("CREATE TABLE t(a INT, b INT);\nSELECT b FROM t WHERE a = 3 AND a > 1;");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W008");
  EXPECT_EQ(ds[0].message, "simplifiable condition");
}

TEST(Constraints, DuplicatedColumns) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT a, a FROM t;"), Codes{"W004"});
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT, b INT);\nSELECT a, b FROM t WHERE a = b;"), Codes{"W004"});
}

TEST(Constraints, SubqueryInProjection) {
  auto ds = diags(kEmployees +
                  "SELECT (SELECT ename FROM employees WHERE salary BETWEEN 5000 AND 1000)\n"
                  "FROM departments WHERE dname='Human resources';");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].code, "W027");
  EXPECT_EQ(ds[0].message, "missing join condition for [departments,employees]");
  EXPECT_EQ(ds[1].code, "W001");
}

TEST(Constraints, DeleteCondition) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT CHECK a > 0);\nDELETE FROM t WHERE a < 0;"), Codes{"W001"});
}

TEST(Joins, MissingJoin) {
  auto ds = diags(kEmpDept + "SELECT emp.name, dept.name FROM emp, dept;");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W027");
  EXPECT_EQ(ds[0].message, "missing join condition for [dept,emp]");
}

TEST(Joins, IdenticalTupleVariables) {
  auto ds = diags("CREATE TABLE t(a INT PRIMARY KEY, b INT);\n"
                  "SELECT t1.b, t2.b FROM t t1, t t2 WHERE t1.a = t2.a;");
  Codes got;
  for (const auto& d : ds) got.push_back(d.code);
  EXPECT_NE(std::find(got.begin(), got.end(), "W007"), got.end());
}

TEST(Joins, UnnecessaryJoinCoveredByForeignKey) {
  auto ds = diags(kEmpDept + "SELECT emp.name FROM emp, dept WHERE emp.dept = dept.id;");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W006");
}

TEST(Joins, UnusedTupleVariable) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT 1 FROM t;"), Codes{"W005"});
}

TEST(Syntax, NullComparison) {
  // The comparison is never true, so the condition is also inconsistent.
  EXPECT_EQ(codes_of("CREATE TABLE t(x INT, y INT);\nSELECT y FROM t WHERE x = NULL;"), (Codes{"W001", "W009"}));
  EXPECT_EQ(codes_of("CREATE TABLE t(x INT, y INT);\nSELECT y FROM t WHERE x = NULL OR y > 1;"), Codes{"W009"});
}

TEST(Syntax, LikeWithoutWildcards) {
  EXPECT_EQ(codes_of("CREATE TABLE p(name VARCHAR(9), age INT);\nSELECT age FROM p WHERE name LIKE 'Smith';"),
            Codes{"W012"});
}

TEST(Syntax, LikeOnlyWildcards) {
  EXPECT_EQ(codes_of("CREATE TABLE p(name VARCHAR(9), age INT);\nSELECT age FROM p WHERE name LIKE '%';"),
            Codes{"W011"});
}

TEST(Syntax, ComplicatedExists) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT); CREATE TABLE u(b INT);\n"
                     "SELECT a FROM t WHERE EXISTS (SELECT b FROM u WHERE u.b = t.a);"),
            Codes{"W013"});
}

TEST(Syntax, HavingWithoutGroupBy) {
  auto ds = diags("CREATE TABLE t(a INT);\nSELECT a FROM t HAVING COUNT(*) > 1;");
  Codes got;
  for (const auto& d : ds) got.push_back(d.code);
  EXPECT_NE(std::find(got.begin(), got.end(), "W032"), got.end());
}

TEST(Syntax, DistinctInSum) {
  EXPECT_EQ(codes_of("CREATE TABLE t(a INT);\nSELECT SUM(DISTINCT a) FROM t;"), Codes{"W033"});
}

TEST(Metadata, UnnecessaryDistinct) {
  EXPECT_EQ(codes_of(kEmpDept + "SELECT DISTINCT name FROM emp;"), Codes{"W002"});
  EXPECT_EQ(codes_of(kEmpDept + "SELECT DISTINCT dept FROM emp;"), Codes{});
}

TEST(Metadata, UnnecessaryDistinctThroughKeyJoin) {
  EXPECT_EQ(codes_of(kEmpDept + "SELECT DISTINCT emp.name, dept.name FROM emp, dept WHERE emp.dept = dept.id;"),
            Codes{"W002"});
}

TEST(Metadata, DistinctInMinMax) {
  EXPECT_EQ(codes_of(kEmpDept + "SELECT MIN(DISTINCT salary) FROM emp;"), Codes{"W016"});
  EXPECT_EQ(codes_of(kEmpDept + "SELECT COUNT(DISTINCT name) FROM emp;"), Codes{"W016"});
}

TEST(Metadata, CountOfKey) {
  EXPECT_EQ(codes_of(kEmpDept + "SELECT COUNT(name) FROM emp;"), Codes{"W017"});
  EXPECT_EQ(codes_of(kEmpDept + "SELECT COUNT(salary) FROM emp;"), Codes{});
}

TEST(Session, ErrorsAndRecovery) {
  auto r = analyze_script("SELECT FROM;\nCREATE TABLE t(a INT);\nSELECT nope FROM t;\nSELECT a FROM t WHERE a>1 AND a<0;");
  ASSERT_EQ(r.diagnostics.size(), 3u);
  EXPECT_EQ(r.diagnostics[0].code, "syntax");
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Error);
  EXPECT_EQ(r.diagnostics[1].code, "semantic");
  EXPECT_EQ(r.diagnostics[2].code, "W001");
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(analyze_script("CREATE TABLE t(a INT);").exit_code(), 0);
}

TEST(Session, DiagnosticsAreOrdered) {
  auto r = analyze_script(kEmployees +
                          "SELECT * FROM employees WHERE dept='IT' AND dept='HR';\n"
                          "SELECT ename FROM employees WHERE ename LIKE 'x' AND salary = NULL;");
  for (std::size_t i = 1; i < r.diagnostics.size(); ++i) {
    const auto& a = r.diagnostics[i - 1].span;
    const auto& b = r.diagnostics[i].span;
    EXPECT_TRUE(a.start_line < b.start_line || (a.start_line == b.start_line && a.start_col <= b.start_col));
  }
}

TEST(Report, TextAndJson) {
  std::vector<Diagnostic> ds = {warning("W001", "inconsistent condition", {3, 5, 3, 9})};
  EXPECT_EQ(render_text(ds, "x.sql"), "warning[W001] x.sql:3:5 inconsistent condition\n");
  EXPECT_EQ(render_json(ds, "x.sql"),
            "[\n  {\n    \"code\": \"W001\",\n    \"message\": \"inconsistent condition\",\n"
            "    \"file\": \"x.sql\",\n    \"line\": 3,\n    \"col\": 5\n  }\n]\n");
  EXPECT_EQ(render_text({}, "x.sql"), "");
}

TEST(Corpus, MatchesScenarioExpectations) {
  auto r = testing::corpus_criterion(SQLCLP_CORPUS_DIR);
  for (const auto& d : r.details) std::cout << d << "\n";
  EXPECT_TRUE(r.pass);
}

TEST(Corpus, MatchesRecordedOutput) {
  namespace fs = std::filesystem;
  int files = 0;
  for (const auto& entry : fs::directory_iterator(SQLCLP_CORPUS_DIR)) {
    if (entry.path().extension() != ".sql") continue;
    ++files;
    auto expected_path = entry.path();
    expected_path.replace_extension(".expected");
    auto text = testing::read_file(entry.path().string());
    auto got = render_text(analyze_script(text).diagnostics, entry.path().filename().string());
    EXPECT_EQ(got, testing::read_file(expected_path.string())) << entry.path();
  }
  EXPECT_EQ(files, 7);
}

TEST(Bench, NestedFamily) {
  EXPECT_EQ(nested_query(1), "SELECT t_1.a FROM t_1 WHERE t_1.a>1");
  auto small = run_bench(10);
  EXPECT_TRUE(small.success);
  EXPECT_TRUE(small.diagnostics.empty());
  auto big = run_bench(100);
  EXPECT_TRUE(big.success);
  for (const auto& d : big.diagnostics) EXPECT_NE(d.code, "W001");
  EXPECT_LT(big.total_ms, 10000.0);
}

}  // namespace
}  // namespace sqlclp
