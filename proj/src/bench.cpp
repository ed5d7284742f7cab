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

#include "sqlclp/bench.hpp"

#include <chrono>

#include "sqlclp/parser.hpp"

namespace sqlclp {

std::string nested_query(int n) {
  std::string q;
  for (int i = 1; i <= n; ++i) {
    std::string t = "t_" + std::to_string(i);
    q += "SELECT " + t + ".a FROM " + t + " WHERE " + t + ".a>" + std::to_string(i);
    if (i < n) q += " AND " + t + ".a IN (";
  }
  q += std::string(static_cast<std::size_t>(n - 1), ')');
  return q;
}

std::string nested_script(int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += "CREATE TABLE t_" + std::to_string(i) + "(a INT CHECK a>=0);\n";
  return s + nested_query(n) + ";\n";
}

BenchReport run_bench(int n, const AnalyzerOptions& opts) {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  BenchReport r;
  r.n = n;
  auto t0 = Clock::now();
  auto stmts = sql::parse_script(nested_script(n));
  Catalog catalog;
  for (std::size_t i = 0; i + 1 < stmts.size(); ++i) catalog = catalog.apply_ddl(stmts[i]);
  const sql::Statement& query = stmts.back();
  auto t1 = Clock::now();
  auto pre = preprocess(query, catalog);
  dl::Program prog = dl::simplify(dl::sqls_to_dl(*pre, catalog));
  auto t2 = Clock::now();
  clp::Program cp = clp::dl_to_clp(prog, catalog);
  auto t3 = Clock::now();
  auto res = solver::solve_target(cp, opts.solver);
  auto t4 = Clock::now();
  Analysis a = analyze_statement(query, catalog, opts);
  auto t5 = Clock::now();
  r.parse_ms = ms(t0, t1);
  r.sql_to_dl_ms = ms(t1, t2);
  r.dl_to_clp_ms = ms(t2, t3);
  r.solve_ms = ms(t3, t4);
  r.checks_ms = ms(t4, t5);
  r.total_ms = ms(t0, t5);
  r.success = res.success;
  r.diagnostics = std::move(a.diagnostics);
  return r;
}

}  // namespace sqlclp
