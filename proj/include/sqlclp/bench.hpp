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

#ifndef SQLCLP_BENCH_HPP
#define SQLCLP_BENCH_HPP

#include <string>
#include <vector>

#include "sqlclp/analyzer.hpp"

namespace sqlclp {

/// n tables t_i(a INT CHECK a>=0) followed by the nested query
/// Q_i = SELECT t_i.a FROM t_i WHERE t_i.a>i AND t_i.a IN (Q_{i+1}),
/// with Q_n lacking the IN part.
std::string nested_script(int n);
std::string nested_query(int n);

struct BenchReport {
  int n = 0;
  double parse_ms = 0;
  double sql_to_dl_ms = 0;  // preprocess, translation and simplification
  double dl_to_clp_ms = 0;
  double solve_ms = 0;
  double checks_ms = 0;     // full analyzer pass, pipeline included
  double total_ms = 0;
  bool success = false;     // the nested query is satisfiable
  std::vector<Diagnostic> diagnostics;
};

BenchReport run_bench(int n, const AnalyzerOptions& opts = {});

}  // namespace sqlclp

#endif  // SQLCLP_BENCH_HPP
