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

#ifndef SQLCLP_PRINTER_HPP
#define SQLCLP_PRINTER_HPP

#include <string>
#include <vector>

#include "sqlclp/ast.hpp"

namespace sqlclp::sql {

// Canonical SQL rendering. Keywords upper-case, minimal parentheses; the
// output parses back to an equivalent tree.
std::string to_sql(const Expr& e);
std::string to_sql(const Cond& c);
std::string to_sql(const Query& q);
std::string to_sql(const Statement& s);
std::string to_sql(const std::vector<Statement>& script);

std::string quote_string(const std::string& s);

}  // namespace sqlclp::sql

#endif  // SQLCLP_PRINTER_HPP
