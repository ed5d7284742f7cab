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

#ifndef SQLCLP_PARSER_HPP
#define SQLCLP_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlclp/ast.hpp"

namespace sqlclp::sql {

/// Parses a whole script. Keywords and identifiers are case-insensitive
/// (identifiers are stored lower-case); string literals are single-quoted
/// with '' as the escape for a quote. Throws SyntaxError on the first error.
std::vector<Statement> parse_script(std::string_view text);

struct ParseOutcome {
  std::vector<Statement> statements;
  std::vector<SyntaxError> errors;
};

/// Like parse_script, but skips to the next `;` after an error and keeps going.
ParseOutcome parse_script_recovering(std::string_view text);

Query parse_query(std::string_view text);
Cond parse_condition(std::string_view text);
Expr parse_expression(std::string_view text);

/// Maps a SQL type spelling (upper-cased, without length) to a value domain.
/// Returns nullopt for unknown names.
std::optional<DType> dtype_for_type_name(std::string_view upper_name);

}  // namespace sqlclp::sql

#endif  // SQLCLP_PARSER_HPP
