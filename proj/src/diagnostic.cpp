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

#include "sqlclp/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace sqlclp {

Diagnostic warning(std::string code, std::string message, SourceSpan span) {
  return {std::move(code), std::move(message), span, Severity::Warning};
}

Diagnostic error(std::string code, std::string message, SourceSpan span) {
  return {std::move(code), std::move(message), span, Severity::Error};
}

void normalize(std::vector<Diagnostic>& diags) {
  auto key = [](const Diagnostic& d) {
    return std::tie(d.span.start_line, d.span.start_col, d.code, d.message, d.span.end_line, d.span.end_col);
  };
  std::stable_sort(diags.begin(), diags.end(), [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
}

std::string format_text(const Diagnostic& d, const std::string& file) {
  std::string kind = d.severity == Severity::Warning ? "warning" : "error";
  return kind + "[" + d.code + "] " + file + ":" + std::to_string(d.span.start_line) + ":" +
         std::to_string(d.span.start_col) + " " + d.message;
}

}  // namespace sqlclp
