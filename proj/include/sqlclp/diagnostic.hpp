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

#ifndef SQLCLP_DIAGNOSTIC_HPP
#define SQLCLP_DIAGNOSTIC_HPP

#include <string>
#include <vector>

#include "sqlclp/common.hpp"

namespace sqlclp {

enum class Severity { Warning, Error };

struct Diagnostic {
  std::string code;  // "W001".."W033", or "syntax"/"semantic" for errors
  std::string message;
  SourceSpan span;
  Severity severity = Severity::Warning;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

Diagnostic warning(std::string code, std::string message, SourceSpan span);
Diagnostic error(std::string code, std::string message, SourceSpan span);

/// Orders by position, then code, and drops exact duplicates.
void normalize(std::vector<Diagnostic>& diags);

/// `warning[W001] file:line:col message`
std::string format_text(const Diagnostic& d, const std::string& file);

}  // namespace sqlclp

#endif  // SQLCLP_DIAGNOSTIC_HPP
