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

#ifndef SQLCLP_SESSION_HPP
#define SQLCLP_SESSION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sqlclp/analyzer.hpp"
#include "sqlclp/catalog.hpp"

namespace sqlclp {

struct StatementReport {
  SourceSpan span;
  Analysis analysis;
};

struct ScriptResult {
  std::vector<Diagnostic> diagnostics;  // whole script, ordered by position
  std::vector<StatementReport> statements;
  Catalog catalog;                      // after the last statement

  [[nodiscard]] bool has_errors() const;
  [[nodiscard]] bool has_warnings() const;
  /// 0 clean, 1 warnings only, 2 errors.
  [[nodiscard]] int exit_code() const;
};

/// Parses the script and analyzes its statements in order, applying DDL to
/// the catalog as it goes. Statements that fail to parse or to apply are
/// reported as errors and skipped.
ScriptResult analyze_script(std::string_view text, const AnalyzerOptions& opts = {});

}  // namespace sqlclp

#endif  // SQLCLP_SESSION_HPP
