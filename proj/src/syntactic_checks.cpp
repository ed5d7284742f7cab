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

#include <algorithm>

#include "sqlclp/analyzer.hpp"

namespace sqlclp {

namespace {

using sql::Cond;
using sql::Expr;

bool has_wildcard(const std::string& p) { return p.find_first_of("%_") != std::string::npos; }

class SyntacticScan : public sql::Visitor {
 public:
  std::vector<Diagnostic> out;

  void on_cond(const Cond& c) override {
    switch (c.kind) {
      case Cond::Kind::Cmp:
        if (c.exprs[0].is_null_literal() || c.exprs[1].is_null_literal())
          out.push_back(warning("W009", "comparison with NULL", c.span));
        break;
      case Cond::Kind::Like: {
        bool all_percent = !c.pattern.empty() && std::all_of(c.pattern.begin(), c.pattern.end(), [](char ch) { return ch == '%'; });
        if (all_percent || c.exprs[0].kind == Expr::Kind::Const)
          out.push_back(warning("W011", "unnecessary general comparison operator", c.span));
        if (!has_wildcard(c.pattern)) out.push_back(warning("W012", "LIKE without wildcards", c.span));
        break;
      }
      case Cond::Kind::Exists:
        if (c.subquery && c.subquery->kind == sql::Query::Kind::Select) {
          const auto& items = c.subquery->select.items;
          bool plain_star = items.size() == 1 && items[0].star && items[0].star_qualifier.empty();
          if (!plain_star)
            out.push_back(warning("W013", "unnecessarily complicated SELECT in EXISTS subquery", c.span));
        }
        break;
      default: break;
    }
  }

  void on_select(const sql::Select& s) override {
    if (s.having && s.group_by.empty()) out.push_back(warning("W032", "strange HAVING", s.having->span));
  }

  void on_expr(const Expr& e) override {
    if (e.kind == Expr::Kind::Aggregate && e.agg_quantifier == sql::Quantifier::Distinct &&
        (e.agg_fn == sql::AggFn::Sum || e.agg_fn == sql::AggFn::Avg))
      out.push_back(warning("W033", "DISTINCT in SUM or AVG", e.span));
  }
};

}  // namespace

std::vector<Diagnostic> syntactic_checks(const sql::Statement& stmt) {
  SyntacticScan scan;
  sql::walk(stmt, scan);
  return std::move(scan.out);
}

}  // namespace sqlclp
