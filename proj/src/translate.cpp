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
#include <deque>
#include <functional>
#include <tuple>

#include "sqlclp/datalog.hpp"

namespace sqlclp::dl {

namespace {

using sql::Cond;
using sql::Expr;
using sql::Query;
using sql::Select;

bool contains_null(const Expr& e) {
  if (e.is_null_literal()) return true;
  return std::any_of(e.args.begin(), e.args.end(), contains_null);
}

bool has_wildcard(const std::string& pattern) { return pattern.find_first_of("%_") != std::string::npos; }

Goal false_goal(SourceSpan span) {
  return Goal::cmp(sql::CmpOp::Eq, DlExpr::of(Term::constant(Value::integer(1), DType::Integer)),
                   DlExpr::of(Term::constant(Value::integer(0), DType::Integer)), span);
}

bool distinct_rooted(const Query& q) {
  return q.kind == Query::Kind::SetOp ? q.set_quantifier == sql::Quantifier::Distinct
                                      : q.select.quantifier == sql::Quantifier::Distinct;
}

class Translator {
 public:
  Translator(const Preprocessed& defs, const Catalog& catalog) : defs_(defs), catalog_(catalog), names_(defs.names) {}

  Program run() {
    prog_.target = defs_.defs.front().name;
    for (const auto& d : defs_.defs) {
      PredInfo info;
      info.arity = static_cast<int>(d.columns.size());
      info.types = d.types;
      info.names = d.columns;
      info.origin = d.from_view ? "view" : "definition";
      info.span = d.query.span;
      prog_.preds[d.name] = info;
    }
    for (const auto& d : defs_.defs) {
      open(d.name);
      emit_query(d.query, d.name, false);
      close();
    }
    order_rules();
    for (const auto& r : prog_.rules) {
      int params = prog_.preds[r.head.pred].num_params;
      if (!is_safe(r, params)) throw SemanticError("unsafe rule for '" + r.head.pred + "'", {});
    }
    return std::move(prog_);
  }

 private:
  struct Entry {
    std::string relation;
    std::vector<int> vars;
  };
  struct Context {
    std::string pred;
    std::size_t base_depth;
    std::vector<int> params;
    std::vector<Rule> rules;
  };

  // ---- contexts ---------------------------------------------------------

  void open(const std::string& pred) { ctxs_.push_back(Context{pred, frames_.size(), {}, {}}); }

  // Closes the innermost context: prepends parameters to its heads.
  std::vector<int> close() {
    Context ctx = std::move(ctxs_.back());
    ctxs_.pop_back();
    auto& info = prog_.preds[ctx.pred];
    info.num_params = static_cast<int>(ctx.params.size());
    for (auto& r : ctx.rules) {
      std::vector<Term> head;
      for (int p : ctx.params) head.push_back(Term::variable(p));
      head.insert(head.end(), r.head.args.begin(), r.head.args.end());
      r.head.args = std::move(head);
      finish_rule(r);
    }
    if (!ctx.rules.empty()) {
      const Rule& first = ctx.rules.front();
      info.arity = static_cast<int>(first.head.args.size());
      if (info.origin.empty() || info.origin == "fresh") {
        info.origin = "fresh";
        info.types.clear();
        for (const auto& t : first.head.args) info.types.push_back(t.is_var() ? var_type(t.var) : t.dtype);
      } else {
        std::vector<DType> types;
        for (int p : ctx.params) types.push_back(var_type(p));
        types.insert(types.end(), info.types.begin(), info.types.end());
        info.types = std::move(types);
      }
    }
    for (auto& r : ctx.rules) prog_.rules.push_back(std::move(r));
    return ctx.params;
  }

  void finish_rule(Rule& r) {
    for (int v : vars_of(r)) r.var_types[v] = var_type(v);
  }

  void add_rule(Rule r) { ctxs_.back().rules.push_back(std::move(r)); }

  DType var_type(int v) const {
    auto it = types_.find(v);
    return it == types_.end() ? DType::Integer : it->second;
  }

  int fresh_var(DType t) {
    int v = prog_.fresh_var();
    types_[v] = t;
    return v;
  }

  std::vector<Term> fresh_terms(const std::vector<DType>& types) {
    std::vector<Term> out;
    for (DType t : types) out.push_back(Term::variable(fresh_var(t)));
    return out;
  }

  std::vector<Term> param_terms(const std::vector<int>& params) {
    std::vector<Term> out;
    for (int p : params) out.push_back(Term::variable(p));
    return out;
  }

  std::string fresh_pred() {
    std::string name = names_.fresh();
    PredInfo info;
    info.origin = "fresh";
    prog_.preds[name] = info;
    return name;
  }

  // Translates `q` as a fresh predicate. Returns its name and parameters.
  std::pair<std::string, std::vector<int>> sub_predicate(const Query& q, bool exists_mode) {
    std::string name = fresh_pred();
    prog_.preds[name].span = q.span;
    open(name);
    emit_query(q, name, exists_mode);
    return {name, close()};
  }

  Atom call(const std::string& pred, const std::vector<int>& params, std::vector<Term> args = {}) {
    Atom a{pred, param_terms(params)};
    a.args.insert(a.args.end(), args.begin(), args.end());
    return a;
  }

  // ---- relations --------------------------------------------------------

  std::vector<DType> relation_types(const std::string& name) {
    if (const auto* d = defs_.find(name)) return d->types;
    auto shape = catalog_.shape(name);
    if (!shape) throw SemanticError("unknown relation '" + name + "'", {});
    if (!prog_.preds.count(name)) {
      PredInfo info;
      info.is_base = !shape->is_view;
      info.arity = static_cast<int>(shape->columns.size());
      info.types = shape->types;
      info.names = shape->columns;
      info.origin = "table";
      prog_.preds[name] = info;
    }
    return shape->types;
  }

  Term lookup(const Expr& col) {
    for (std::size_t d = frames_.size(); d-- > 0;) {
      for (const auto& e : frames_[d]) {
        if (e.relation != col.qualifier) continue;
        int v = e.vars.at(static_cast<std::size_t>(col.column_index));
        for (auto& ctx : ctxs_)
          if (ctx.base_depth > d && std::find(ctx.params.begin(), ctx.params.end(), v) == ctx.params.end())
            ctx.params.push_back(v);
        return Term::variable(v);
      }
    }
    throw SemanticError("unresolved column '" + col.qualifier + "." + col.column + "'", col.span);
  }

  // ---- queries ----------------------------------------------------------

  void emit_query(const Query& q, const std::string& pred, bool exists_mode) {
    if (q.kind == Query::Kind::SetOp) {
      emit_setop(q, pred, exists_mode);
      return;
    }
    emit_select(q, pred, exists_mode);
  }

  std::vector<DType> shape_types(const Query& q) {
    const Query* l = &q;
    while (l->kind == Query::Kind::SetOp) l = &*l->left;
    std::vector<DType> out;
    for (const auto& item : l->select.items) out.push_back(type_of(item.expr));
    // Widen with the right operands.
    std::function<void(const Query&)> widen = [&](const Query& x) {
      if (x.kind == Query::Kind::SetOp) {
        widen(*x.left);
        widen(*x.right);
        return;
      }
      for (std::size_t i = 0; i < out.size() && i < x.select.items.size(); ++i)
        if (type_of(x.select.items[i].expr) == DType::Float) out[i] = DType::Float;
    };
    widen(q);
    return out;
  }

  void emit_setop(const Query& q, const std::string& pred, bool exists_mode) {
    std::vector<DType> types = shape_types(q);
    if (exists_mode) {
      auto [inner, params] = sub_predicate(q, false);
      Rule r;
      r.head = Atom{pred, {}};
      r.body.push_back(Goal::of(Goal::Kind::Atom, call(inner, params, fresh_terms(types))));
      add_rule(std::move(r));
      return;
    }
    if (q.set_quantifier == sql::Quantifier::Distinct) {
      Query all = q;
      all.set_quantifier = sql::Quantifier::All;
      auto [inner, params] = sub_predicate(all, false);
      std::vector<Term> xs = fresh_terms(types);
      Rule r;
      r.head = Atom{pred, xs};
      r.body.push_back(Goal::of(Goal::Kind::Distinct, call(inner, params, xs)));
      add_rule(std::move(r));
      return;
    }
    if (q.set_op == sql::SetOpKind::Union) {
      emit_query(*q.left, pred, false);
      emit_query(*q.right, pred, false);
      return;
    }
    auto [left, lp] = sub_predicate(*q.left, false);
    auto [right, rp] = sub_predicate(*q.right, false);
    std::vector<Term> xs = fresh_terms(types);
    Rule r;
    r.head = Atom{pred, xs};
    r.body.push_back(Goal::of(Goal::Kind::Atom, call(left, lp, xs)));
    r.body.push_back(Goal::of(q.set_op == sql::SetOpKind::Except ? Goal::Kind::Not : Goal::Kind::Atom,
                              call(right, rp, xs)));
    add_rule(std::move(r));
  }

  static void reject_aggregates(const Select& s) {
    if (!s.group_by.empty()) throw UnsupportedError("GROUP BY is analyzed syntactically only", s.span);
    if (s.having) throw UnsupportedError("HAVING is analyzed syntactically only", s.having->span);
    std::function<bool(const Expr&)> has_agg = [&](const Expr& e) {
      if (e.kind == Expr::Kind::Aggregate) return true;
      return std::any_of(e.args.begin(), e.args.end(), has_agg);
    };
    for (const auto& item : s.items)
      if (has_agg(item.expr)) throw UnsupportedError("aggregates are analyzed syntactically only", item.span);
  }

  bool trivial_projection(const Select& s) {
    if (s.from.size() != 1 || s.where.kind != Cond::Kind::True) return false;
    std::size_t arity = relation_types(s.from[0].name).size();
    if (s.items.size() != arity) return false;
    for (std::size_t i = 0; i < arity; ++i) {
      const Expr& e = s.items[i].expr;
      if (e.kind != Expr::Kind::Column || e.qualifier != s.from[0].name ||
          e.column_index != static_cast<int>(i))
        return false;
    }
    return true;
  }

  void emit_select(const Query& q, const std::string& pred, bool exists_mode) {
    const Select& s = q.select;
    reject_aggregates(s);
    bool distinct = s.quantifier == sql::Quantifier::Distinct;
    if (!exists_mode && (distinct || s.top)) {
      std::vector<DType> types;
      for (const auto& item : s.items) types.push_back(type_of(item.expr));
      std::string source;
      std::vector<int> params;
      if (trivial_projection(s)) {
        source = s.from[0].name;
        (void)relation_types(source);
      } else {
        Query plain = q;
        plain.select.quantifier = sql::Quantifier::All;
        plain.select.top.reset();
        std::tie(source, params) = sub_predicate(plain, false);
      }
      std::vector<Term> xs = fresh_terms(types);
      if (distinct && s.top) {
        std::string d = fresh_pred();
        open(d);
        std::vector<Term> ys = fresh_terms(types);
        Rule inner;
        inner.head = Atom{d, ys};
        inner.body.push_back(Goal::of(Goal::Kind::Distinct, call(source, params, ys)));
        add_rule(std::move(inner));
        std::vector<int> dp = close();
        Rule r;
        r.head = Atom{pred, xs};
        Goal g = Goal::of(Goal::Kind::Top, call(d, dp, xs));
        g.top = *s.top;
        r.body.push_back(std::move(g));
        add_rule(std::move(r));
        return;
      }
      Rule r;
      r.head = Atom{pred, xs};
      Goal g = Goal::of(distinct ? Goal::Kind::Distinct : Goal::Kind::Top, call(source, params, xs));
      if (s.top) g.top = *s.top;
      r.body.push_back(std::move(g));
      add_rule(std::move(r));
      return;
    }

    Rule r;
    r.head.pred = pred;
    std::vector<Entry> frame;
    std::vector<Atom> atoms;
    for (const auto& f : s.from) {
      std::vector<Term> vars = fresh_terms(relation_types(f.name));
      Entry e{f.name, {}};
      for (const auto& t : vars) e.vars.push_back(t.var);
      frame.push_back(std::move(e));
      atoms.push_back(Atom{f.name, std::move(vars)});
    }
    frames_.push_back(std::move(frame));
    if (atoms.size() == 1) {
      r.body.push_back(Goal::of(Goal::Kind::Atom, atoms.front()));
    } else {
      std::string conj = fresh_pred();
      Rule cr;
      cr.head.pred = conj;
      for (auto& a : atoms) {
        cr.head.args.insert(cr.head.args.end(), a.args.begin(), a.args.end());
        cr.body.push_back(Goal::of(Goal::Kind::Atom, a));
      }
      finish_rule(cr);
      auto& info = prog_.preds[conj];
      info.arity = static_cast<int>(cr.head.args.size());
      for (const auto& t : cr.head.args) info.types.push_back(var_type(t.var));
      info.span = s.span;
      r.body.push_back(Goal::of(Goal::Kind::Atom, Atom{conj, cr.head.args}));
      prog_.rules.push_back(std::move(cr));
    }
    for (std::size_t i = 0; i < s.from.size(); ++i) r.body.push_back(Goal::truth());
    cond_goals(s.where, true, r.body);
    if (!exists_mode) {
      for (const auto& item : s.items) {
        if (item.expr.kind == Expr::Kind::Column) {
          r.head.args.push_back(lookup(item.expr));
          continue;
        }
        if (contains_null(item.expr)) {
          r.head.args.push_back(Term::constant(Value(), type_of(item.expr)));
          continue;
        }
        DlExpr value = expr(item.expr, r.body);
        if (value.is_term()) {
          if (value.term.is_var()) {
            r.head.args.push_back(value.term);
            continue;
          }
        }
        int x = fresh_var(type_of(item.expr));
        r.body.push_back(Goal::cmp(sql::CmpOp::Eq, DlExpr::of(Term::variable(x)), std::move(value), item.span));
        r.head.args.push_back(Term::variable(x));
      }
    }
    frames_.pop_back();
    add_rule(std::move(r));
  }

  // ---- expressions and conditions ---------------------------------------

  DlExpr expr(const Expr& e, std::vector<Goal>& goals) {
    switch (e.kind) {
      case Expr::Kind::Const: return DlExpr::of(Term::constant(e.value, e.const_type));
      case Expr::Kind::Column: return DlExpr::of(lookup(e));
      case Expr::Kind::Arith: {
        DlExpr l = expr(e.args[0], goals);
        DlExpr r = expr(e.args[1], goals);
        return DlExpr::arith(e.arith_op, std::move(l), std::move(r));
      }
      case Expr::Kind::Neg: return DlExpr::neg(expr(e.args[0], goals));
      case Expr::Kind::Subquery: {
        auto [pred, params] = sub_predicate(*e.subquery, false);
        int y = fresh_var(type_of(e));
        goals.push_back(Goal::of(Goal::Kind::Atom, call(pred, params, {Term::variable(y)})));
        return DlExpr::of(Term::variable(y));
      }
      case Expr::Kind::Aggregate: throw UnsupportedError("aggregates are analyzed syntactically only", e.span);
    }
    return DlExpr{};
  }

  void cond_goals(const Cond& c, bool positive, std::vector<Goal>& out) {
    switch (c.kind) {
      case Cond::Kind::True:
        if (!positive) out.push_back(false_goal(c.span));
        return;
      case Cond::Kind::False:
        if (positive) out.push_back(false_goal(c.span));
        return;
      case Cond::Kind::Not: cond_goals(c.children[0], !positive, out); return;
      case Cond::Kind::And:
      case Cond::Kind::Or: {
        bool conjunctive = (c.kind == Cond::Kind::And) == positive;
        if (conjunctive) {
          for (const auto& ch : c.children) cond_goals(ch, positive, out);
          return;
        }
        std::vector<std::vector<Goal>> alts;
        for (const auto& ch : c.children) {
          std::vector<Goal> alt;
          cond_goals(ch, positive, alt);
          alts.push_back(std::move(alt));
        }
        out.push_back(Goal::disj(std::move(alts)));
        return;
      }
      case Cond::Kind::Cmp: {
        if (contains_null(c.exprs[0]) || contains_null(c.exprs[1])) {
          out.push_back(false_goal(c.span));
          return;
        }
        DlExpr l = expr(c.exprs[0], out);
        DlExpr r = expr(c.exprs[1], out);
        out.push_back(Goal::cmp(positive ? c.cmp_op : sql::negate(c.cmp_op), std::move(l), std::move(r), c.span));
        return;
      }
      case Cond::Kind::Between: cond_goals(sql::expand_between(c), positive, out); return;
      case Cond::Kind::Like: {
        if (has_wildcard(c.pattern)) return;
        if (contains_null(c.exprs[0])) {
          out.push_back(false_goal(c.span));
          return;
        }
        DlExpr l = expr(c.exprs[0], out);
        bool equal = positive != c.negated;
        out.push_back(Goal::cmp(equal ? sql::CmpOp::Eq : sql::CmpOp::Ne, std::move(l),
                                DlExpr::of(Term::constant(Value(c.pattern), DType::String)), c.span));
        return;
      }
      case Cond::Kind::IsNull: return;
      case Cond::Kind::In: {
        if (contains_null(c.exprs[0])) {
          out.push_back(false_goal(c.span));
          return;
        }
        int x = fresh_var(type_of(c.exprs[0]));
        DlExpr needle = expr(c.exprs[0], out);
        out.push_back(Goal::cmp(sql::CmpOp::Eq, DlExpr::of(Term::variable(x)), std::move(needle), c.span));
        auto [pred, params] = sub_predicate(*c.subquery, false);
        Atom a = call(pred, params, {Term::variable(x)});
        Goal::Kind k = !positive ? Goal::Kind::Not
                       : distinct_rooted(*c.subquery) ? Goal::Kind::Atom
                                                      : Goal::Kind::Distinct;
        Goal g = Goal::of(k, std::move(a));
        g.span = c.span;
        out.push_back(std::move(g));
        return;
      }
      case Cond::Kind::Exists: {
        auto [pred, params] = sub_predicate(*c.subquery, true);
        Goal g = Goal::of(positive ? Goal::Kind::Distinct : Goal::Kind::Not, call(pred, params));
        g.span = c.span;
        out.push_back(std::move(g));
        return;
      }
    }
  }

  // Target first, then predicates in order of first call.
  void order_rules() {
    std::vector<Rule> ordered;
    std::set<std::string> seen;
    std::deque<std::string> queue{prog_.target};
    seen.insert(prog_.target);
    std::vector<bool> taken(prog_.rules.size(), false);
    std::function<void(const Goal&)> discover = [&](const Goal& g) {
      if (g.kind == Goal::Kind::Disj) {
        for (const auto& alt : g.alternatives)
          for (const auto& sub : alt) discover(sub);
        return;
      }
      if (g.kind == Goal::Kind::Cmp || g.kind == Goal::Kind::True) return;
      if (seen.insert(g.atom.pred).second) queue.push_back(g.atom.pred);
    };
    while (!queue.empty()) {
      std::string p = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < prog_.rules.size(); ++i) {
        if (taken[i] || prog_.rules[i].head.pred != p) continue;
        taken[i] = true;
        for (const auto& g : prog_.rules[i].body) discover(g);
        ordered.push_back(std::move(prog_.rules[i]));
      }
    }
    for (std::size_t i = 0; i < prog_.rules.size(); ++i)
      if (!taken[i]) ordered.push_back(std::move(prog_.rules[i]));
    prog_.rules = std::move(ordered);
  }

  const Preprocessed& defs_;
  const Catalog& catalog_;
  NameSupply names_;
  Program prog_;
  std::map<int, DType> types_;
  std::vector<std::vector<Entry>> frames_;
  std::vector<Context> ctxs_;
};

}  // namespace

Program sqls_to_dl(const Preprocessed& defs, const Catalog& catalog) { return Translator(defs, catalog).run(); }

}  // namespace sqlclp::dl
