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

#ifndef SQLCLP_AST_HPP
#define SQLCLP_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sqlclp/common.hpp"

namespace sqlclp::sql {

enum class CmpOp { Gt, Lt, Eq, Ne, Ge, Le };
enum class ArithOp { Add, Sub, Mul, Div };
enum class AggFn { Count, Sum, Avg, Min, Max };
enum class SetOpKind { Union, Except, Intersect };
enum class Quantifier { All, Distinct };

/// Logical complement: > <-> <=, < <-> >=, = <-> <>.
CmpOp negate(CmpOp op);
/// Operator with its operands swapped: a > b  <=>  b < a.
CmpOp mirror(CmpOp op);
const char* to_string(CmpOp op);
const char* to_string(ArithOp op);
const char* to_string(AggFn fn);
const char* to_string(SetOpKind op);

struct Query;

struct Expr {
  enum class Kind { Const, Column, Arith, Neg, Subquery, Aggregate };

  Kind kind = Kind::Const;
  SourceSpan span;

  // Const
  Value value;
  DType const_type = DType::Integer;

  // Column. After name resolution `qualifier` names the FROM entry and
  // `column_index`/`column_type` are filled in.
  std::string qualifier;
  std::string column;
  int column_index = -1;
  DType column_type = DType::Integer;

  // Arith (two args), Neg (one), Aggregate (zero when `agg_star`, else one).
  ArithOp arith_op = ArithOp::Add;
  std::vector<Expr> args;

  // Subquery
  Box<Query> subquery;

  // Aggregate
  AggFn agg_fn = AggFn::Count;
  Quantifier agg_quantifier = Quantifier::All;
  bool agg_star = false;

  static Expr constant(Value v, DType t, SourceSpan span = {});
  static Expr null(SourceSpan span = {});
  static Expr column_ref(std::string qualifier, std::string column, SourceSpan span = {});
  static Expr arith(ArithOp op, Expr lhs, Expr rhs, SourceSpan span = {});
  static Expr neg(Expr e, SourceSpan span = {});
  static Expr scalar(Query q, SourceSpan span = {});

  [[nodiscard]] bool is_null_literal() const { return kind == Kind::Const && value.is_null(); }
};

struct Cond {
  enum class Kind { Cmp, Not, And, Or, True, False, In, Exists, Between, Like, IsNull };

  Kind kind = Kind::True;
  SourceSpan span;

  CmpOp cmp_op = CmpOp::Eq;
  // Cmp: [lhs, rhs]; In: [needle]; Between: [e, low, high]; Like/IsNull: [e].
  std::vector<Expr> exprs;
  // Not: one child; And/Or: two or more.
  std::vector<Cond> children;
  Box<Query> subquery;
  std::string pattern;
  bool negated = false;

  static Cond truth(SourceSpan span = {});
  static Cond falsity(SourceSpan span = {});
  static Cond cmp(CmpOp op, Expr lhs, Expr rhs, SourceSpan span = {});
  static Cond conj(std::vector<Cond> cs, SourceSpan span = {});
  static Cond disj(std::vector<Cond> cs, SourceSpan span = {});
  static Cond negation(Cond c, SourceSpan span = {});
};

struct FromItem {
  std::string name;   // relation name; empty for a derived table
  std::string alias;  // empty when absent
  Box<Query> subquery;
  SourceSpan span;

  /// Name column references use to address this entry.
  [[nodiscard]] const std::string& qualifier() const { return alias.empty() ? name : alias; }
};

struct SelectItem {
  bool star = false;          // `*` or `q.*`
  std::string star_qualifier; // set for `q.*`
  Expr expr;
  std::string alias;
  SourceSpan span;
};

struct Select {
  Quantifier quantifier = Quantifier::All;
  std::optional<std::int64_t> top;
  std::vector<SelectItem> items;
  std::vector<FromItem> from;
  Cond where;  // TRUE when the WHERE clause is absent
  bool has_where = false;
  std::vector<Expr> group_by;
  std::optional<Cond> having;
  SourceSpan span;
};

struct Query {
  enum class Kind { Select, SetOp };

  Kind kind = Kind::Select;
  Select select;
  SetOpKind set_op = SetOpKind::Union;
  Quantifier set_quantifier = Quantifier::Distinct;
  Box<Query> left;
  Box<Query> right;
  SourceSpan span;
};

struct ForeignKeyRef {
  std::string table;
  std::string column;  // empty: the target's primary key
};

struct ColumnSpec {
  std::string name;
  std::string type_name;  // upper-case spelling as written, e.g. "VARCHAR(10)"
  DType dtype = DType::Integer;
  bool not_null = false;
  bool primary_key = false;
  std::optional<ForeignKeyRef> references;
  std::optional<Cond> check;
  SourceSpan span;
};

struct TableForeignKey {
  std::vector<std::string> columns;
  ForeignKeyRef target;
  std::vector<std::string> target_columns;
  SourceSpan span;
};

struct CreateTable {
  std::string name;
  std::vector<ColumnSpec> columns;
  std::vector<Cond> checks;  // table-level CHECK clauses
  std::vector<std::string> primary_key;  // table-level PRIMARY KEY (...)
  std::vector<TableForeignKey> foreign_keys;
  SourceSpan span;
};

struct CreateView {
  std::string name;
  Query query;
  SourceSpan span;
};

struct Insert {
  std::string table;
  Query query;
  SourceSpan span;
};

struct Delete {
  std::string table;
  Cond where;
  bool has_where = false;
  SourceSpan span;
};

struct QueryStatement {
  Query query;
  SourceSpan span;
};

using Statement = std::variant<CreateTable, CreateView, Insert, Delete, QueryStatement>;

SourceSpan span_of(const Statement& stmt);

/// Rewrites every `e BETWEEN a AND b` (including inside subqueries) into
/// `e >= a AND e <= b`.
Cond expand_between(const Cond& c);
Query expand_between(const Query& q);
Expr expand_between(const Expr& e);

// Generic pre-order traversal helpers over the tree. The callbacks see every
// node, including those inside subqueries.
struct Visitor {
  virtual ~Visitor() = default;
  virtual void on_query(const Query&) {}
  virtual void on_select(const Select&) {}
  virtual void on_cond(const Cond&) {}
  virtual void on_expr(const Expr&) {}
};

void walk(const Query& q, Visitor& v);
void walk(const Cond& c, Visitor& v);
void walk(const Expr& e, Visitor& v);
void walk(const Statement& s, Visitor& v);

}  // namespace sqlclp::sql

#endif  // SQLCLP_AST_HPP
