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

#ifndef SQLCLP_ANALYZER_HPP
#define SQLCLP_ANALYZER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqlclp/ast.hpp"
#include "sqlclp/catalog.hpp"
#include "sqlclp/clp.hpp"
#include "sqlclp/datalog.hpp"
#include "sqlclp/diagnostic.hpp"
#include "sqlclp/preprocess.hpp"
#include "sqlclp/solve.hpp"

namespace sqlclp {

struct AnalyzerOptions {
  solver::SolverOptions solver;
  /// Keep the intermediate programs in the result.
  bool keep_programs = false;
};

/// Every stage of the constraint pipeline for one preprocessed query.
struct Pipeline {
  dl::Program datalog;
  dl::Program simplified;
  clp::Program clp;
  solver::SolveResult result;
  std::vector<int> head_vars;
};

/// sqls_to_dl, simplify, dl_to_clp, solve. Throws what the stages throw.
Pipeline run_pipeline(const Preprocessed& defs, const Catalog& catalog, const solver::SolverOptions& opts);

struct Analysis {
  std::vector<Diagnostic> diagnostics;
  // Filled when keep_programs is set and translation succeeded; one entry
  // per analyzed query (a CREATE TABLE has one per CHECK).
  std::vector<dl::Program> datalog;
  std::vector<dl::Program> simplified;
  std::vector<clp::Program> clp;
};

/// Runs every check on one statement. `catalog` must already contain the
/// effect of the statement when it is DDL.
Analysis analyze_statement(const sql::Statement& stmt, const Catalog& catalog, const AnalyzerOptions& opts = {});

/// One output position of the analyzed query.
struct OutputColumn {
  std::string name;
  SourceSpan span;
  bool literal = false;  // written as a constant in the projection
};

struct ConstraintContext {
  SourceSpan statement;
  std::vector<OutputColumn> outputs;
  std::vector<SourceSpan> where_spans;
  bool projection_checks = true;
};

/// Inconsistency, constant and duplicated output columns, and simplifiable
/// conditions, read off a finished solve.
std::vector<Diagnostic> constraint_checks(const clp::Program& prog, const solver::SolveResult& res,
                                          const std::vector<int>& head_vars, const ConstraintContext& ctx);

/// Locates the FROM entry that introduced a relation, for reporting.
using RelationLocator = std::function<std::pair<std::string, SourceSpan>(const std::string& relation, int occurrence)>;

/// Join-graph checks over the simplified program.
std::vector<Diagnostic> join_checks(const dl::Program& prog, const Catalog& catalog, SourceSpan statement,
                                    const RelationLocator& locate);

/// Pure tree scans over the statement as written.
std::vector<Diagnostic> syntactic_checks(const sql::Statement& stmt);

/// Checks that consult keys and NOT NULL declarations.
std::vector<Diagnostic> metadata_checks(const sql::Statement& stmt, const Catalog& catalog);

}  // namespace sqlclp

#endif  // SQLCLP_ANALYZER_HPP
