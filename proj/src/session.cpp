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

#include "sqlclp/session.hpp"

#include <algorithm>

#include "sqlclp/parser.hpp"

namespace sqlclp {

bool ScriptResult::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool ScriptResult::has_warnings() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

int ScriptResult::exit_code() const {
  if (has_errors()) return 2;
  return has_warnings() ? 1 : 0;
}

ScriptResult analyze_script(std::string_view text, const AnalyzerOptions& opts) {
  ScriptResult out;
  sql::ParseOutcome parsed = sql::parse_script_recovering(text);
  for (const auto& e : parsed.errors) out.diagnostics.push_back(error("syntax", e.what(), e.span()));
  for (const auto& stmt : parsed.statements) {
    StatementReport report;
    report.span = sql::span_of(stmt);
    bool ddl = std::holds_alternative<sql::CreateTable>(stmt) || std::holds_alternative<sql::CreateView>(stmt);
    if (ddl) {
      try {
        out.catalog = out.catalog.apply_ddl(stmt);
      } catch (const Error& e) {
        out.diagnostics.push_back(error("semantic", e.what(), e.span().valid() ? e.span() : report.span));
        continue;
      }
    }
    report.analysis = analyze_statement(stmt, out.catalog, opts);
    for (const auto& d : report.analysis.diagnostics) out.diagnostics.push_back(d);
    out.statements.push_back(std::move(report));
  }
  normalize(out.diagnostics);
  return out;
}

}  // namespace sqlclp
