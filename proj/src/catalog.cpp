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

#include "sqlclp/catalog.hpp"

#include <set>

#include "sqlclp/preprocess.hpp"

namespace sqlclp {

using sql::Cond;
using sql::Expr;

std::optional<int> TableSchema::column_index(const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == column) return static_cast<int>(i);
  return std::nullopt;
}

bool compatible(DType a, DType b) { return (a == DType::String) == (b == DType::String); }

std::optional<DType> infer_type(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const:
      if (e.value.is_null()) return std::nullopt;
      return e.const_type;
    case Expr::Kind::Column: return e.column_type;
    case Expr::Kind::Neg: {
      auto t = infer_type(e.args[0]);
      if (t == DType::String) throw SemanticError("arithmetic on string operand", e.span);
      return t;
    }
    case Expr::Kind::Arith: {
      auto l = infer_type(e.args[0]);
      auto r = infer_type(e.args[1]);
      if (l == DType::String || r == DType::String)
        throw SemanticError("arithmetic on string operand", e.span);
      if (!l) return r;
      if (!r) return l;
      return *l == DType::Float || *r == DType::Float ? DType::Float : DType::Integer;
    }
    case Expr::Kind::Subquery: {
      const sql::Query* q = &*e.subquery;
      while (q->kind == sql::Query::Kind::SetOp) q = &*q->left;
      const auto& items = q->select.items;
      if (items.size() != 1 || items[0].star)
        throw SemanticError("scalar subquery must project exactly one column", e.span);
      return infer_type(items[0].expr);
    }
    case Expr::Kind::Aggregate:
      if (e.agg_fn == sql::AggFn::Count) return DType::Integer;
      if (e.agg_fn == sql::AggFn::Avg) return DType::Float;
      return infer_type(e.args[0]);
  }
  return std::nullopt;
}

DType type_of(const Expr& e) { return infer_type(e).value_or(DType::Integer); }

namespace {

void mismatch(DType a, DType b, SourceSpan span) {
  throw SemanticError(std::string("type mismatch: ") + dtype_name(a) + " compared with " + dtype_name(b), span);
}

void check_pair(const Expr& a, const Expr& b, SourceSpan span) {
  auto ta = infer_type(a);
  auto tb = infer_type(b);
  if (ta && tb && !compatible(*ta, *tb)) mismatch(*ta, *tb, span);
}

void collect_columns(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::Column) out.push_back(&e);
  for (const auto& a : e.args) collect_columns(a, out);
}

}  // namespace

void check_types(const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::Cmp: check_pair(c.exprs[0], c.exprs[1], c.span); break;
    case Cond::Kind::Between:
      check_pair(c.exprs[0], c.exprs[1], c.span);
      check_pair(c.exprs[0], c.exprs[2], c.span);
      break;
    case Cond::Kind::Like: {
      auto t = infer_type(c.exprs[0]);
      if (t && *t != DType::String) mismatch(*t, DType::String, c.span);
      break;
    }
    case Cond::Kind::In: {
      const sql::Query* q = &*c.subquery;
      while (q->kind == sql::Query::Kind::SetOp) q = &*q->left;
      const auto& items = q->select.items;
      if (items.size() == 1 && !items[0].star) check_pair(c.exprs[0], items[0].expr, c.span);
      break;
    }
    default: break;
  }
  for (const auto& ch : c.children) check_types(ch);
  for (const auto& e : c.exprs) (void)infer_type(e);
}

const TableSchema* Catalog::table(const std::string& name) const {
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : &it->second;
}

const ViewSchema* Catalog::view(const std::string& name) const {
  auto it = views_.find(name);
  return it == views_.end() ? nullptr : &it->second;
}

bool Catalog::has_relation(const std::string& name) const {
  return tables_.count(name) != 0 || views_.count(name) != 0;
}

std::optional<RelationShape> Catalog::shape(const std::string& name) const {
  if (const auto* t = table(name)) {
    RelationShape s{t->name, {}, {}, false};
    for (const auto& c : t->columns) {
      s.columns.push_back(c.name);
      s.types.push_back(c.dtype);
    }
    return s;
  }
  if (const auto* v = view(name)) return RelationShape{v->name, v->column_names, v->column_types, true};
  return std::nullopt;
}

Catalog Catalog::apply_ddl(const sql::Statement& stmt) const {
  if (const auto* ct = std::get_if<sql::CreateTable>(&stmt)) return add_table(*ct);
  if (const auto* cv = std::get_if<sql::CreateView>(&stmt)) return add_view(*cv);
  return *this;
}

Catalog Catalog::without_check(const std::string& name, std::size_t index) const {
  Catalog out = *this;
  auto it = out.tables_.find(name);
  if (it != out.tables_.end() && index < it->second.checks.size())
    it->second.checks.erase(it->second.checks.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

namespace {

// Qualifies and resolves every column of a CHECK condition against `t`.
Cond resolve_check(const Cond& raw, const TableSchema& t) {
  Cond c = sql::expand_between(raw);
  struct Resolver {
    const TableSchema& t;
    void expr(Expr& e) const {
      if (e.kind == Expr::Kind::Subquery)
        throw SemanticError("subqueries are not supported in CHECK constraints", e.span);
      if (e.kind == Expr::Kind::Aggregate)
        throw SemanticError("aggregates are not allowed in CHECK constraints", e.span);
      if (e.kind == Expr::Kind::Column) {
        if (!e.qualifier.empty() && e.qualifier != t.name)
          throw SemanticError("check references column '" + e.qualifier + "." + e.column +
                                  "' outside table '" + t.name + "'",
                              e.span);
        auto idx = t.column_index(e.column);
        if (!idx)
          throw SemanticError("check references unknown column '" + e.column + "'", e.span);
        e.qualifier = t.name;
        e.column_index = *idx;
        e.column_type = t.columns[static_cast<std::size_t>(*idx)].dtype;
      }
      for (auto& a : e.args) expr(a);
    }
    void cond(Cond& c) const {
      if (c.kind == Cond::Kind::In || c.kind == Cond::Kind::Exists)
        throw SemanticError("subqueries are not supported in CHECK constraints", c.span);
      for (auto& e : c.exprs) expr(e);
      for (auto& ch : c.children) cond(ch);
    }
  };
  Resolver{t}.cond(c);
  check_types(c);
  return c;
}

}  // namespace

Catalog Catalog::add_table(const sql::CreateTable& ct) const {
  if (has_relation(ct.name)) throw SemanticError("relation '" + ct.name + "' already defined", ct.span);
  TableSchema t;
  t.name = ct.name;
  t.span = ct.span;
  std::set<std::string> seen;
  for (const auto& c : ct.columns) {
    if (!seen.insert(c.name).second)
      throw SemanticError("duplicate column '" + c.name + "' in table '" + ct.name + "'", c.span);
    ColumnDef def;
    def.name = c.name;
    def.sql_type = c.type_name;
    def.dtype = c.dtype;
    def.not_null = c.not_null;
    def.is_pk = c.primary_key;
    t.columns.push_back(std::move(def));
  }
  if (t.columns.empty()) throw SemanticError("table '" + ct.name + "' has no columns", ct.span);

  for (std::size_t i = 0; i < ct.columns.size(); ++i) {
    if (!ct.columns[i].primary_key) continue;
    if (!t.primary_key.empty())
      throw SemanticError("table '" + ct.name + "' has more than one primary key", ct.columns[i].span);
    t.primary_key.push_back(static_cast<int>(i));
  }
  if (!ct.primary_key.empty()) {
    if (!t.primary_key.empty())
      throw SemanticError("table '" + ct.name + "' has more than one primary key", ct.span);
    for (const auto& name : ct.primary_key) {
      auto idx = t.column_index(name);
      if (!idx) throw SemanticError("primary key names unknown column '" + name + "'", ct.span);
      t.primary_key.push_back(*idx);
      t.columns[static_cast<std::size_t>(*idx)].is_pk = true;
    }
  }

  auto target_of = [&](const std::string& name, SourceSpan span) -> const TableSchema& {
    if (name == t.name) return t;
    const TableSchema* target = table(name);
    if (!target) throw SemanticError("foreign key references unknown table '" + name + "'", span);
    return *target;
  };
  auto add_fk = [&](std::vector<int> cols, const std::string& target_name,
                    const std::vector<std::string>& target_cols, SourceSpan span) {
    const TableSchema& target = target_of(target_name, span);
    ForeignKey fk;
    fk.columns = std::move(cols);
    fk.target = target_name;
    if (target_cols.empty()) {
      if (target.primary_key.empty())
        throw SemanticError("table '" + target_name + "' has no primary key to reference", span);
      fk.target_columns = target.primary_key;
    } else {
      for (const auto& name : target_cols) {
        auto idx = target.column_index(name);
        if (!idx)
          throw SemanticError("foreign key references unknown column '" + target_name + "." + name + "'", span);
        fk.target_columns.push_back(*idx);
      }
    }
    if (fk.target_columns.size() != fk.columns.size())
      throw SemanticError("foreign key arity does not match the referenced key", span);
    for (std::size_t i = 0; i < fk.columns.size(); ++i) {
      const auto& from = t.columns[static_cast<std::size_t>(fk.columns[i])];
      const auto& to = target.columns[static_cast<std::size_t>(fk.target_columns[i])];
      if (from.dtype != to.dtype)
        throw SemanticError("foreign key column '" + from.name + "' has type " + dtype_name(from.dtype) +
                                " but '" + target_name + "." + to.name + "' has type " + dtype_name(to.dtype),
                            span);
    }
    if (fk.columns.size() == 1) {
      auto& col = t.columns[static_cast<std::size_t>(fk.columns[0])];
      col.fk = sql::ForeignKeyRef{target_name, target.columns[static_cast<std::size_t>(fk.target_columns[0])].name};
    }
    t.foreign_keys.push_back(std::move(fk));
  };
  for (std::size_t i = 0; i < ct.columns.size(); ++i) {
    const auto& c = ct.columns[i];
    if (!c.references) continue;
    std::vector<std::string> target_cols;
    if (!c.references->column.empty()) target_cols.push_back(c.references->column);
    add_fk({static_cast<int>(i)}, c.references->table, target_cols, c.span);
  }
  for (const auto& fk : ct.foreign_keys) {
    std::vector<int> cols;
    for (const auto& name : fk.columns) {
      auto idx = t.column_index(name);
      if (!idx) throw SemanticError("foreign key names unknown column '" + name + "'", fk.span);
      cols.push_back(*idx);
    }
    add_fk(std::move(cols), fk.target.table, fk.target_columns, fk.span);
  }

  for (const auto& c : ct.columns)
    if (c.check) t.checks.push_back(resolve_check(*c.check, t));
  for (const auto& c : ct.checks) t.checks.push_back(resolve_check(c, t));

  Catalog out = *this;
  out.tables_.emplace(t.name, std::move(t));
  return out;
}

Catalog Catalog::add_view(const sql::CreateView& cv) const {
  if (has_relation(cv.name)) throw SemanticError("relation '" + cv.name + "' already defined", cv.span);
  RelationShape s = infer_shape(cv.query, *this);
  ViewSchema v;
  v.name = cv.name;
  v.query = cv.query;
  v.column_names = std::move(s.columns);
  v.column_types = std::move(s.types);
  v.span = cv.span;
  Catalog out = *this;
  out.views_.emplace(v.name, std::move(v));
  return out;
}

}  // namespace sqlclp
