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

#include "sqlclp/ast.hpp"

namespace sqlclp::sql {

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
  }
  return op;
}

CmpOp mirror(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return CmpOp::Lt;
    case CmpOp::Lt: return CmpOp::Gt;
    case CmpOp::Ge: return CmpOp::Le;
    case CmpOp::Le: return CmpOp::Ge;
    default: return op;
  }
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "<>";
    case CmpOp::Ge: return ">=";
    case CmpOp::Le: return "<=";
  }
  return "?";
}

const char* to_string(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
  }
  return "?";
}

const char* to_string(AggFn fn) {
  switch (fn) {
    case AggFn::Count: return "COUNT";
    case AggFn::Sum: return "SUM";
    case AggFn::Avg: return "AVG";
    case AggFn::Min: return "MIN";
    case AggFn::Max: return "MAX";
  }
  return "?";
}

const char* to_string(SetOpKind op) {
  switch (op) {
    case SetOpKind::Union: return "UNION";
    case SetOpKind::Except: return "EXCEPT";
    case SetOpKind::Intersect: return "INTERSECT";
  }
  return "?";
}

Expr Expr::constant(Value v, DType t, SourceSpan span) {
  Expr e;
  e.kind = Kind::Const;
  e.value = std::move(v);
  e.const_type = t;
  e.span = span;
  return e;
}

Expr Expr::null(SourceSpan span) { return constant(Value{}, DType::Integer, span); }

Expr Expr::column_ref(std::string qualifier, std::string column, SourceSpan span) {
  Expr e;
  e.kind = Kind::Column;
  e.qualifier = std::move(qualifier);
  e.column = std::move(column);
  e.span = span;
  return e;
}

Expr Expr::arith(ArithOp op, Expr lhs, Expr rhs, SourceSpan span) {
  Expr e;
  e.kind = Kind::Arith;
  e.arith_op = op;
  e.span = span.valid() ? span : merge(lhs.span, rhs.span);
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::neg(Expr inner, SourceSpan span) {
  Expr e;
  e.kind = Kind::Neg;
  e.span = span.valid() ? span : inner.span;
  e.args.push_back(std::move(inner));
  return e;
}

Expr Expr::scalar(Query q, SourceSpan span) {
  Expr e;
  e.kind = Kind::Subquery;
  e.span = span.valid() ? span : q.span;
  e.subquery = std::move(q);
  return e;
}

Cond Cond::truth(SourceSpan span) {
  Cond c;
  c.kind = Kind::True;
  c.span = span;
  return c;
}

Cond Cond::falsity(SourceSpan span) {
  Cond c;
  c.kind = Kind::False;
  c.span = span;
  return c;
}

Cond Cond::cmp(CmpOp op, Expr lhs, Expr rhs, SourceSpan span) {
  Cond c;
  c.kind = Kind::Cmp;
  c.cmp_op = op;
  c.span = span.valid() ? span : merge(lhs.span, rhs.span);
  c.exprs.push_back(std::move(lhs));
  c.exprs.push_back(std::move(rhs));
  return c;
}

namespace {
Cond junction(Cond::Kind kind, std::vector<Cond> cs, SourceSpan span) {
  Cond c;
  c.kind = kind;
  if (!span.valid())
    for (const auto& child : cs) span = merge(span, child.span);
  c.span = span;
  c.children = std::move(cs);
  return c;
}
}  // namespace

Cond Cond::conj(std::vector<Cond> cs, SourceSpan span) {
  if (cs.empty()) return truth(span);
  if (cs.size() == 1) return std::move(cs.front());
  return junction(Kind::And, std::move(cs), span);
}

Cond Cond::disj(std::vector<Cond> cs, SourceSpan span) {
  if (cs.empty()) return falsity(span);
  if (cs.size() == 1) return std::move(cs.front());
  return junction(Kind::Or, std::move(cs), span);
}

Cond Cond::negation(Cond inner, SourceSpan span) {
  Cond c;
  c.kind = Kind::Not;
  c.span = span.valid() ? span : inner.span;
  c.children.push_back(std::move(inner));
  return c;
}

SourceSpan span_of(const Statement& stmt) {
  return std::visit([](const auto& s) { return s.span; }, stmt);
}

namespace {

void expand_in_place(Query& q);

void expand_in_place(Expr& e) {
  for (auto& a : e.args) expand_in_place(a);
  if (e.subquery) expand_in_place(*e.subquery);
}

void expand_in_place(Cond& c) {
  for (auto& e : c.exprs) expand_in_place(e);
  for (auto& ch : c.children) expand_in_place(ch);
  if (c.subquery) expand_in_place(*c.subquery);
  if (c.kind == Cond::Kind::Between) {
    Expr subject = c.exprs[0];
    Cond lo = Cond::cmp(CmpOp::Ge, std::move(subject), std::move(c.exprs[1]), c.span);
    Cond hi = Cond::cmp(CmpOp::Le, std::move(c.exprs[0]), std::move(c.exprs[2]), c.span);
    c = Cond::conj({std::move(lo), std::move(hi)}, c.span);
  }
}

void expand_in_place(Query& q) {
  if (q.kind == Query::Kind::SetOp) {
    expand_in_place(*q.left);
    expand_in_place(*q.right);
    return;
  }
  Select& s = q.select;
  for (auto& item : s.items)
    if (!item.star) expand_in_place(item.expr);
  for (auto& f : s.from)
    if (f.subquery) expand_in_place(*f.subquery);
  expand_in_place(s.where);
  for (auto& g : s.group_by) expand_in_place(g);
  if (s.having) expand_in_place(*s.having);
}

}  // namespace

Expr expand_between(const Expr& e) {
  Expr out = e;
  expand_in_place(out);
  return out;
}

Cond expand_between(const Cond& c) {
  Cond out = c;
  expand_in_place(out);
  return out;
}

Query expand_between(const Query& q) {
  Query out = q;
  expand_in_place(out);
  return out;
}

void walk(const Expr& e, Visitor& v) {
  v.on_expr(e);
  for (const auto& a : e.args) walk(a, v);
  if (e.subquery) walk(*e.subquery, v);
}

void walk(const Cond& c, Visitor& v) {
  v.on_cond(c);
  for (const auto& e : c.exprs) walk(e, v);
  for (const auto& child : c.children) walk(child, v);
  if (c.subquery) walk(*c.subquery, v);
}

void walk(const Query& q, Visitor& v) {
  v.on_query(q);
  if (q.kind == Query::Kind::SetOp) {
    walk(*q.left, v);
    walk(*q.right, v);
    return;
  }
  const Select& s = q.select;
  v.on_select(s);
  for (const auto& item : s.items)
    if (!item.star) walk(item.expr, v);
  for (const auto& f : s.from)
    if (f.subquery) walk(*f.subquery, v);
  walk(s.where, v);
  for (const auto& g : s.group_by) walk(g, v);
  if (s.having) walk(*s.having, v);
}

void walk(const Statement& s, Visitor& v) {
  std::visit(
      [&v](const auto& st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, CreateTable>) {
          for (const auto& col : st.columns)
            if (col.check) walk(*col.check, v);
          for (const auto& c : st.checks) walk(c, v);
        } else if constexpr (std::is_same_v<T, Delete>) {
          walk(st.where, v);
        } else {
          walk(st.query, v);
        }
      },
      s);
}

}  // namespace sqlclp::sql
