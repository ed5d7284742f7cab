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

#include "sqlclp/printer.hpp"

namespace sqlclp::sql {

namespace {

int precedence(ArithOp op) { return op == ArithOp::Add || op == ArithOp::Sub ? 1 : 2; }

std::string constant(const Expr& e) {
  if (e.value.is_null()) return "NULL";
  if (e.value.is_string()) return quote_string(e.value.string());
  std::string s = rational_to_string(e.value.number());
  if (s.find('/') != std::string::npos) return "(" + s + ")";
  if (e.const_type == DType::Float && s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string operand(const Expr& e, int parent_prec, bool right) {
  std::string s = to_sql(e);
  if (e.kind == Expr::Kind::Arith) {
    int p = precedence(e.arith_op);
    if (p < parent_prec || (right && p == parent_prec)) return "(" + s + ")";
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

int setop_level(const Query& q) { return q.set_op == SetOpKind::Intersect ? 2 : 1; }

std::string select_sql(const Select& s) {
  std::string out = "SELECT ";
  if (s.quantifier == Quantifier::Distinct) out += "DISTINCT ";
  if (s.top) out += "TOP " + std::to_string(*s.top) + " ";
  std::vector<std::string> items;
  for (const auto& item : s.items) {
    if (item.star) {
      items.push_back(item.star_qualifier.empty() ? "*" : item.star_qualifier + ".*");
      continue;
    }
    std::string i = to_sql(item.expr);
    if (!item.alias.empty()) i += " AS " + item.alias;
    items.push_back(std::move(i));
  }
  out += join(items, ", ");
  std::vector<std::string> from;
  for (const auto& f : s.from) {
    std::string i = f.subquery ? "(" + to_sql(*f.subquery) + ")" : f.name;
    if (!f.alias.empty()) i += " " + f.alias;
    from.push_back(std::move(i));
  }
  out += " FROM " + join(from, ", ");
  if (s.has_where) out += " WHERE " + to_sql(s.where);
  if (!s.group_by.empty()) {
    std::vector<std::string> g;
    for (const auto& e : s.group_by) g.push_back(to_sql(e));
    out += " GROUP BY " + join(g, ", ");
  }
  if (s.having) out += " HAVING " + to_sql(*s.having);
  return out;
}

std::string column_sql(const ColumnSpec& c) {
  std::string out = c.name + " " + c.type_name;
  if (c.primary_key) out += " PRIMARY KEY";
  if (c.not_null) out += " NOT NULL";
  if (c.references) {
    out += " REFERENCES " + c.references->table;
    if (!c.references->column.empty()) out += "(" + c.references->column + ")";
  }
  if (c.check) out += " CHECK (" + to_sql(*c.check) + ")";
  return out;
}

}  // namespace

std::string quote_string(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += "''";
    else out += ch;
  }
  return out + "'";
}

std::string to_sql(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const: return constant(e);
    case Expr::Kind::Column: return e.qualifier.empty() ? e.column : e.qualifier + "." + e.column;
    case Expr::Kind::Arith: {
      int p = precedence(e.arith_op);
      return operand(e.args[0], p, false) + " " + to_string(e.arith_op) + " " + operand(e.args[1], p, true);
    }
    case Expr::Kind::Neg: {
      const Expr& inner = e.args[0];
      bool bare = inner.kind == Expr::Kind::Column ||
                  (inner.kind == Expr::Kind::Const && inner.value.is_number() && inner.value.number() >= 0);
      return bare ? "-" + to_sql(inner) : "-(" + to_sql(inner) + ")";
    }
    case Expr::Kind::Subquery: return "(" + to_sql(*e.subquery) + ")";
    case Expr::Kind::Aggregate: {
      std::string out = std::string(to_string(e.agg_fn)) + "(";
      if (e.agg_quantifier == Quantifier::Distinct) out += "DISTINCT ";
      out += e.agg_star ? "*" : to_sql(e.args[0]);
      return out + ")";
    }
  }
  return "?";
}

std::string to_sql(const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::Cmp:
      return to_sql(c.exprs[0]) + " " + to_string(c.cmp_op) + " " + to_sql(c.exprs[1]);
    case Cond::Kind::Not: return "NOT (" + to_sql(c.children[0]) + ")";
    case Cond::Kind::And: {
      std::vector<std::string> parts;
      for (const auto& ch : c.children)
        parts.push_back(ch.kind == Cond::Kind::Or ? "(" + to_sql(ch) + ")" : to_sql(ch));
      return join(parts, " AND ");
    }
    case Cond::Kind::Or: {
      std::vector<std::string> parts;
      for (const auto& ch : c.children) parts.push_back(to_sql(ch));
      return join(parts, " OR ");
    }
    case Cond::Kind::True: return "TRUE";
    case Cond::Kind::False: return "FALSE";
    case Cond::Kind::In: return to_sql(c.exprs[0]) + " IN (" + to_sql(*c.subquery) + ")";
    case Cond::Kind::Exists: return "EXISTS (" + to_sql(*c.subquery) + ")";
    case Cond::Kind::Between:
      return to_sql(c.exprs[0]) + " BETWEEN " + to_sql(c.exprs[1]) + " AND " + to_sql(c.exprs[2]);
    case Cond::Kind::Like:
      return to_sql(c.exprs[0]) + (c.negated ? " NOT LIKE " : " LIKE ") + quote_string(c.pattern);
    case Cond::Kind::IsNull: return to_sql(c.exprs[0]) + (c.negated ? " IS NOT NULL" : " IS NULL");
  }
  return "?";
}

std::string to_sql(const Query& q) {
  if (q.kind == Query::Kind::Select) return select_sql(q.select);
  int level = setop_level(q);
  auto side = [&](const Query& sub, bool right) {
    std::string s = to_sql(sub);
    if (sub.kind == Query::Kind::SetOp && (right || setop_level(sub) < level)) return "(" + s + ")";
    return s;
  };
  std::string op = to_string(q.set_op);
  if (q.set_quantifier == Quantifier::All) op += " ALL";
  return side(*q.left, false) + " " + op + " " + side(*q.right, true);
}

std::string to_sql(const Statement& s) {
  return std::visit(
      [](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, CreateTable>) {
          std::vector<std::string> elems;
          for (const auto& c : st.columns) elems.push_back(column_sql(c));
          for (const auto& c : st.checks) elems.push_back("CHECK (" + to_sql(c) + ")");
          if (!st.primary_key.empty()) elems.push_back("PRIMARY KEY (" + join(st.primary_key, ", ") + ")");
          for (const auto& fk : st.foreign_keys) {
            std::string f = "FOREIGN KEY (" + join(fk.columns, ", ") + ") REFERENCES " + fk.target.table;
            if (!fk.target_columns.empty()) f += " (" + join(fk.target_columns, ", ") + ")";
            elems.push_back(std::move(f));
          }
          return "CREATE TABLE " + st.name + " (" + join(elems, ", ") + ");";
        } else if constexpr (std::is_same_v<T, CreateView>) {
          return "CREATE VIEW " + st.name + " AS " + to_sql(st.query) + ";";
        } else if constexpr (std::is_same_v<T, Insert>) {
          return "INSERT INTO " + st.table + " " + to_sql(st.query) + ";";
        } else if constexpr (std::is_same_v<T, Delete>) {
          std::string out = "DELETE FROM " + st.table;
          if (st.has_where) out += " WHERE " + to_sql(st.where);
          return out + ";";
        } else {
          return to_sql(st.query) + ";";
        }
      },
      s);
}

std::string to_sql(const std::vector<Statement>& script) {
  std::string out;
  for (const auto& s : script) out += to_sql(s) + "\n";
  return out;
}

}  // namespace sqlclp::sql
