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

#include "sqlclp/store.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace sqlclp::solver {

using dl::DlExpr;

Store::Store(SolverOptions opts) : opts_(opts) {
  fd_.set_propagation_cap(opts.max_fd_props);
  q_.set_fm_cap(opts.max_fm_ineqs);
  auto work = std::make_shared<std::size_t>(0);
  fd_.share_work(work);
  q_.share_work(work);
}

void Store::declare(int hvar, DType type) { types_[hvar] = type; }

DType Store::type_of(int hvar) const {
  auto it = types_.find(hvar);
  return it == types_.end() ? DType::Integer : it->second;
}

std::optional<Value> Store::value(int hvar) const {
  auto it = ground_.find(hvar);
  if (it == ground_.end()) return std::nullopt;
  return it->second;
}

int Store::copy_of(int hvar, Domain d) {
  auto key = std::make_pair(hvar, d);
  auto it = bridge_index_.find(key);
  if (it != bridge_index_.end()) return it->second;
  int dvar = d == Domain::Fd ? fd_.new_var() : q_.new_var();
  bridge_index_.emplace(key, dvar);
  bridges_.push_back({d, hvar, dvar});
  return dvar;
}

bool Store::fail() {
  failed_ = true;
  return false;
}

bool Store::ground(int hvar, const Value& v) {
  auto [it, inserted] = ground_.emplace(hvar, v);
  if (!inserted && !(it->second == v)) return fail();
  return true;
}

namespace {

bool fits_fd(const Rational& r) {
  if (denominator(r) != 1) return false;
  BigInt n = numerator(r);
  return n >= std::numeric_limits<std::int64_t>::min() / 2 && n <= std::numeric_limits<std::int64_t>::max() / 2;
}

std::int64_t to_int64(const Rational& r) { return static_cast<std::int64_t>(numerator(r)); }

bool fd_expressible(const DlExpr& e) {
  if (e.is_term()) return e.term.is_var() || (e.term.value.is_number() && fits_fd(e.term.value.number()));
  return std::all_of(e.args.begin(), e.args.end(), fd_expressible);
}

}  // namespace

bool Store::post(const clp::Ctr& ctr) {
  if (failed_) return false;
  bool ok = true;
  switch (ctr.type) {
    case DType::String: ok = post_h(ctr); break;
    case DType::Float: ok = post_q(ctr); break;
    case DType::Integer: ok = post_fd(ctr) && post_q(ctr); break;
  }
  if (!ok) return fail();
  return propagate_bridges();
}

bool Store::post_h(const clp::Ctr& ctr) {
  if (!ctr.lhs.is_term() || !ctr.rhs.is_term()) {
    dropped_.push_back(ctr.span);
    return true;
  }
  const dl::Term& a = ctr.lhs.term;
  const dl::Term& b = ctr.rhs.term;
  auto hterm = [&](const dl::Term& t) -> std::optional<HTerm> {
    if (t.is_var()) {
      if (std::find(string_vars_.begin(), string_vars_.end(), t.var) == string_vars_.end())
        string_vars_.push_back(t.var);
      if (auto g = value(t.var); g && g->is_string()) return HTerm(g->string());
      return HTerm(t.var);
    }
    if (!t.value.is_string()) return std::nullopt;
    return HTerm(t.value.string());
  };
  if (ctr.op != sql::CmpOp::Eq && ctr.op != sql::CmpOp::Ne) {
    // Ordering is outside the symbolic domain; only ground instances are decided.
    if (!a.is_var() && !b.is_var() && a.value.is_string() && b.value.is_string()) {
      int c = a.value.string().compare(b.value.string());
      switch (ctr.op) {
        case sql::CmpOp::Lt: return c < 0;
        case sql::CmpOp::Le: return c <= 0;
        case sql::CmpOp::Gt: return c > 0;
        case sql::CmpOp::Ge: return c >= 0;
        default: break;
      }
    }
    dropped_.push_back(ctr.span);
    return true;
  }
  auto ha = hterm(a);
  auto hb = hterm(b);
  if (!ha || !hb) {
    dropped_.push_back(ctr.span);
    return true;
  }
  return ctr.op == sql::CmpOp::Eq ? h_.post_eq(*ha, *hb) : h_.post_ne(*ha, *hb);
}

bool Store::post_fd(const clp::Ctr& ctr) {
  if (!fd_expressible(ctr.lhs) || !fd_expressible(ctr.rhs)) {
    dropped_.push_back(ctr.span);
    return true;
  }
  std::function<FdExpr(const DlExpr&)> conv = [&](const DlExpr& e) -> FdExpr {
    switch (e.kind) {
      case DlExpr::Kind::Term:
        if (e.term.is_var()) return FdExpr::variable(copy_of(e.term.var, Domain::Fd));
        return FdExpr::constant(to_int64(e.term.value.number()));
      case DlExpr::Kind::Neg: return FdExpr::negate(conv(e.args[0]));
      case DlExpr::Kind::Arith: {
        FdExpr::Kind k = FdExpr::Kind::Add;
        switch (e.op) {
          case sql::ArithOp::Add: k = FdExpr::Kind::Add; break;
          case sql::ArithOp::Sub: k = FdExpr::Kind::Sub; break;
          case sql::ArithOp::Mul: k = FdExpr::Kind::Mul; break;
          case sql::ArithOp::Div: k = FdExpr::Kind::Div; break;
        }
        return FdExpr::binary(k, conv(e.args[0]), conv(e.args[1]));
      }
    }
    return FdExpr::constant(0);
  };
  FdConstraint c;
  c.op = ctr.op;
  c.lhs = conv(ctr.lhs);
  c.rhs = conv(ctr.rhs);
  return fd_.post(std::move(c));
}

bool Store::post_q(const clp::Ctr& ctr) {
  // Linear form over program variables; nullopt when not expressible.
  std::function<DType(const DlExpr&)> type = [&](const DlExpr& e) -> DType {
    if (e.is_term()) return e.term.is_var() ? type_of(e.term.var) : e.term.dtype;
    for (const auto& a : e.args)
      if (type(a) == DType::Float) return DType::Float;
    return DType::Integer;
  };
  std::function<std::optional<LinExpr>(const DlExpr&)> lin = [&](const DlExpr& e) -> std::optional<LinExpr> {
    switch (e.kind) {
      case DlExpr::Kind::Term:
        if (e.term.is_var()) return LinExpr::var(e.term.var);
        if (!e.term.value.is_number()) return std::nullopt;
        return LinExpr::of(e.term.value.number());
      case DlExpr::Kind::Neg: {
        auto a = lin(e.args[0]);
        if (!a) return std::nullopt;
        return *a * Rational(-1);
      }
      case DlExpr::Kind::Arith: {
        auto a = lin(e.args[0]);
        auto b = lin(e.args[1]);
        if (!a || !b) return std::nullopt;
        switch (e.op) {
          case sql::ArithOp::Add: return *a + *b;
          case sql::ArithOp::Sub: return *a - *b;
          case sql::ArithOp::Mul:
            if (a->is_constant()) return *b * a->constant;
            if (b->is_constant()) return *a * b->constant;
            return std::nullopt;
          case sql::ArithOp::Div:
            // Integer division truncates; only FD models it.
            if (type(e.args[0]) == DType::Integer && type(e.args[1]) == DType::Integer) return std::nullopt;
            if (!b->is_constant() || b->constant == 0) return std::nullopt;
            return *a * (Rational(1) / b->constant);
        }
      }
    }
    return std::nullopt;
  };
  auto l = lin(ctr.lhs);
  auto r = lin(ctr.rhs);
  if (!l || !r) {
    dropped_.push_back(ctr.span);
    return true;
  }
  LinExpr diff = *l - *r;
  LinExpr local = LinExpr::of(diff.constant);
  for (const auto& [hvar, k] : diff.coef) local.coef[copy_of(hvar, Domain::Q)] = k;
  switch (ctr.op) {
    case sql::CmpOp::Eq: return q_.post_eq(std::move(local));
    case sql::CmpOp::Ne: return q_.post_ne(std::move(local));
    case sql::CmpOp::Gt: return q_.post_ineq(std::move(local), true);
    case sql::CmpOp::Ge: return q_.post_ineq(std::move(local), false);
    case sql::CmpOp::Lt: return q_.post_ineq(local * Rational(-1), true);
    case sql::CmpOp::Le: return q_.post_ineq(local * Rational(-1), false);
  }
  return true;
}

bool Store::propagate_bridges() {
  if (failed_) return false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s : string_vars_)
      if (auto v = h_.value(s); v && !ground_.count(s)) {
        ground_.emplace(s, Value(*v));
        changed = true;
      }
    for (const auto& b : bridges_) {
      std::optional<Rational> v;
      if (b.domain == Domain::Fd) {
        if (auto x = fd_.value(b.dvar)) v = Rational(*x);
      } else {
        v = q_.value(b.dvar);
      }
      if (!v) continue;
      if (type_of(b.hvar) == DType::Integer && denominator(*v) != 1) return fail();
      auto it = ground_.find(b.hvar);
      if (it == ground_.end()) {
        ground_.emplace(b.hvar, Value(*v));
        changed = true;
      } else if (!(it->second == Value(*v))) {
        return fail();
      }
    }
    for (const auto& b : bridges_) {
      auto it = ground_.find(b.hvar);
      if (it == ground_.end() || !it->second.is_number()) continue;
      const Rational& v = it->second.number();
      if (b.domain == Domain::Fd) {
        if (fd_.value(b.dvar)) continue;
        if (!fits_fd(v)) return fail();
        FdConstraint c;
        c.lhs = FdExpr::variable(b.dvar);
        c.rhs = FdExpr::constant(to_int64(v));
        if (!fd_.post(std::move(c))) return fail();
      } else {
        if (q_.value(b.dvar)) continue;
        if (!q_.post_eq(LinExpr::var(b.dvar) - LinExpr::of(v))) return fail();
      }
      changed = true;
    }
  }
  return true;
}

// ---- complement ---------------------------------------------------------

namespace {

bool plain_expr(const sql::Expr& e) {
  if (e.kind == sql::Expr::Kind::Subquery || e.kind == sql::Expr::Kind::Aggregate || e.is_null_literal())
    return false;
  return std::all_of(e.args.begin(), e.args.end(), plain_expr);
}

std::optional<sql::Cond> nnf(const sql::Cond& c, bool positive) {
  using K = sql::Cond::Kind;
  switch (c.kind) {
    case K::True: return positive ? sql::Cond::truth(c.span) : sql::Cond::falsity(c.span);
    case K::False: return positive ? sql::Cond::falsity(c.span) : sql::Cond::truth(c.span);
    case K::Not: return nnf(c.children[0], !positive);
    case K::Cmp: {
      if (!plain_expr(c.exprs[0]) || !plain_expr(c.exprs[1])) return std::nullopt;
      sql::Cond out = c;
      if (!positive) out.cmp_op = sql::negate(c.cmp_op);
      return out;
    }
    case K::Between: return nnf(sql::expand_between(c), positive);
    case K::And:
    case K::Or: {
      std::vector<sql::Cond> parts;
      for (const auto& ch : c.children) {
        auto p = nnf(ch, positive);
        if (!p) return std::nullopt;
        parts.push_back(std::move(*p));
      }
      bool conjunctive = (c.kind == K::And) == positive;
      return conjunctive ? sql::Cond::conj(std::move(parts), c.span) : sql::Cond::disj(std::move(parts), c.span);
    }
    case K::In:
    case K::Exists:
    case K::Like:
    case K::IsNull: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<sql::Cond> complement(const sql::Cond& c) { return nnf(c, false); }

}  // namespace sqlclp::solver
