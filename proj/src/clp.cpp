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

#include "sqlclp/clp.hpp"

#include <functional>

namespace sqlclp::clp {

using dl::DlExpr;
using dl::Term;

Goal Goal::constraint(Ctr c) {
  Goal g;
  g.kind = Kind::Ctr;
  g.ctr = std::move(c);
  return g;
}

Goal Goal::conj(std::vector<Goal> items) {
  Goal g;
  g.kind = Kind::Conj;
  for (auto& it : items) {
    if (it.kind == Kind::Conj) {
      for (auto& sub : it.items) g.items.push_back(std::move(sub));
    } else {
      g.items.push_back(std::move(it));
    }
  }
  return g;
}

Goal Goal::disj(std::vector<Goal> alternatives) {
  Goal g;
  g.kind = Kind::Disj;
  for (auto& a : alternatives) g.items.push_back(a.kind == Kind::Conj ? std::move(a) : conj({std::move(a)}));
  return g;
}

Goal Goal::call_of(dl::Atom a) {
  Goal g;
  g.kind = Kind::Call;
  g.call = std::move(a);
  return g;
}

const std::vector<Rule>* Program::clauses(const std::string& pred) const {
  auto it = rules.find(pred);
  return it == rules.end() ? nullptr : &it->second;
}

namespace {

DType term_type(const Term& t, const std::map<int, DType>& types) {
  if (!t.is_var()) return t.dtype;
  auto it = types.find(t.var);
  return it == types.end() ? DType::Integer : it->second;
}

void expr_types(const DlExpr& e, const std::map<int, DType>& types, bool& any_string, bool& any_float) {
  if (e.is_term()) {
    DType t = term_type(e.term, types);
    any_string |= t == DType::String;
    any_float |= t == DType::Float;
    return;
  }
  for (const auto& a : e.args) expr_types(a, types, any_string, any_float);
}

Goal false_ctr(SourceSpan span, bool from_check) {
  Ctr c;
  c.op = sql::CmpOp::Eq;
  c.lhs = DlExpr::of(Term::constant(Value::integer(1), DType::Integer));
  c.rhs = DlExpr::of(Term::constant(Value::integer(0), DType::Integer));
  c.span = span;
  c.from_check = from_check;
  return Goal::constraint(std::move(c));
}

bool has_null(const sql::Expr& e) {
  if (e.is_null_literal()) return true;
  for (const auto& a : e.args)
    if (has_null(a)) return true;
  return false;
}

class CheckInstantiator {
 public:
  CheckInstantiator(const TableSchema& t, const std::vector<Term>& args) : table_(t), args_(args) {
    for (std::size_t i = 0; i < args.size() && i < t.columns.size(); ++i)
      if (args[i].is_var()) types_[args[i].var] = t.columns[i].dtype;
  }

  Goal cond(const sql::Cond& c, bool positive) {
    using K = sql::Cond::Kind;
    switch (c.kind) {
      case K::True: return positive ? Goal::truth() : false_ctr(c.span, true);
      case K::False: return positive ? false_ctr(c.span, true) : Goal::truth();
      case K::Not: return cond(c.children[0], !positive);
      case K::And:
      case K::Or: {
        std::vector<Goal> parts;
        for (const auto& ch : c.children) parts.push_back(cond(ch, positive));
        bool conjunctive = (c.kind == K::And) == positive;
        return conjunctive ? Goal::conj(std::move(parts)) : Goal::disj(std::move(parts));
      }
      case K::Cmp: {
        // A comparison with NULL is unknown, and an unknown CHECK admits the row.
        if (has_null(c.exprs[0]) || has_null(c.exprs[1])) return Goal::truth();
        return ctr(positive ? c.cmp_op : sql::negate(c.cmp_op), expr(c.exprs[0]), expr(c.exprs[1]), c.span);
      }
      case K::Between: return cond(sql::expand_between(c), positive);
      case K::Like: {
        if (c.pattern.find_first_of("%_") != std::string::npos || has_null(c.exprs[0])) return Goal::truth();
        bool equal = positive != c.negated;
        return ctr(equal ? sql::CmpOp::Eq : sql::CmpOp::Ne, expr(c.exprs[0]),
                   DlExpr::of(Term::constant(Value(c.pattern), DType::String)), c.span);
      }
      case K::IsNull:
      case K::In:
      case K::Exists: return Goal::truth();
    }
    return Goal::truth();
  }

 private:
  DlExpr expr(const sql::Expr& e) {
    using K = sql::Expr::Kind;
    switch (e.kind) {
      case K::Const: return DlExpr::of(Term::constant(e.value, e.const_type));
      case K::Column: {
        int idx = e.column_index >= 0 ? e.column_index : table_.column_index(e.column).value_or(-1);
        if (idx < 0 || static_cast<std::size_t>(idx) >= args_.size())
          throw SemanticError("CHECK references unknown column '" + e.column + "'", e.span);
        return DlExpr::of(args_[static_cast<std::size_t>(idx)]);
      }
      case K::Arith: return DlExpr::arith(e.arith_op, expr(e.args[0]), expr(e.args[1]));
      case K::Neg: return DlExpr::neg(expr(e.args[0]));
      default: throw SemanticError("unsupported expression in CHECK", e.span);
    }
  }

  Goal ctr(sql::CmpOp op, DlExpr l, DlExpr r, SourceSpan span) {
    Ctr c;
    c.op = op;
    c.type = ctr_type(l, r, types_);
    c.lhs = std::move(l);
    c.rhs = std::move(r);
    c.span = span;
    c.from_check = true;
    return Goal::constraint(std::move(c));
  }

  const TableSchema& table_;
  const std::vector<Term>& args_;
  std::map<int, DType> types_;
};

class Translator {
 public:
  Translator(const dl::Program& p, const Catalog& c) : dl_(p), catalog_(c) {}

  Program run() {
    Program out;
    out.target = dl_.target;
    out.next_var = dl_.next_var;
    if (auto it = dl_.preds.find(dl_.target); it != dl_.preds.end()) out.target_types = it->second.types;
    for (const auto& r : dl_.rules) {
      Rule cr;
      cr.head = r.head;
      types_ = r.var_types;
      note_types(r.head);
      std::vector<Goal> body;
      for (const auto& g : r.body) body.push_back(goal(g));
      cr.body = Goal::conj(std::move(body));
      if (cr.body.kind != Goal::Kind::Conj) cr.body = Goal::conj({cr.body});
      cr.var_types = types_;
      if (!out.rules.count(r.head.pred)) out.order.push_back(r.head.pred);
      out.rules[r.head.pred].push_back(std::move(cr));
    }
    return out;
  }

 private:
  void note(int var, DType t, SourceSpan span) {
    auto [it, inserted] = types_.emplace(var, t);
    if (!inserted && it->second != t && (it->second == DType::String || t == DType::String))
      throw SemanticError("variable X" + std::to_string(var) + " used as both " + dtype_name(it->second) +
                               " and " + dtype_name(t),
                           span);
  }

  void note_types(const dl::Atom& a) {
    auto it = dl_.preds.find(a.pred);
    if (it == dl_.preds.end()) return;
    const auto& types = it->second.types;
    for (std::size_t i = 0; i < a.args.size() && i < types.size(); ++i)
      if (a.args[i].is_var()) note(a.args[i].var, types[i], it->second.span);
  }

  Goal atom(const dl::Atom& a) {
    note_types(a);
    if (dl_.is_base(a.pred)) {
      const TableSchema* t = catalog_.table(a.pred);
      return t ? check_goal(*t, a.args) : Goal::truth();
    }
    return Goal::call_of(a);
  }

  Goal goal(const dl::Goal& g) {
    using K = dl::Goal::Kind;
    switch (g.kind) {
      case K::Atom:
      case K::Distinct:
      case K::Top: return atom(g.atom);
      case K::Not: return Goal::truth();
      case K::True: return Goal::truth();
      case K::Cmp: {
        Ctr c;
        c.op = g.op;
        c.lhs = g.lhs;
        c.rhs = g.rhs;
        c.type = ctr_type(g.lhs, g.rhs, types_);
        c.span = g.span;
        c.from_check = g.from_check;
        return Goal::constraint(std::move(c));
      }
      case K::Disj: {
        std::vector<Goal> alts;
        for (const auto& alt : g.alternatives) {
          std::vector<Goal> parts;
          for (const auto& sub : alt) parts.push_back(goal(sub));
          alts.push_back(Goal::conj(std::move(parts)));
        }
        return Goal::disj(std::move(alts));
      }
    }
    return Goal::truth();
  }

  const dl::Program& dl_;
  const Catalog& catalog_;
  std::map<int, DType> types_;
};

const char* ctr_op(sql::CmpOp op) { return op == sql::CmpOp::Le ? "=<" : sql::to_string(op); }

}  // namespace

DType ctr_type(const DlExpr& lhs, const DlExpr& rhs, const std::map<int, DType>& var_types) {
  bool s = false;
  bool f = false;
  expr_types(lhs, var_types, s, f);
  expr_types(rhs, var_types, s, f);
  return s ? DType::String : f ? DType::Float : DType::Integer;
}

Goal check_goal(const TableSchema& table, const std::vector<Term>& args) {
  if (table.checks.empty()) return Goal::truth();
  CheckInstantiator inst(table, args);
  std::vector<Goal> parts;
  for (const auto& c : table.checks) parts.push_back(inst.cond(c, true));
  return Goal::conj(std::move(parts));
}

Program dl_to_clp(const dl::Program& prog, const Catalog& catalog) { return Translator(prog, catalog).run(); }

std::vector<const Ctr*> constraints(const Goal& g) {
  std::vector<const Ctr*> out;
  std::function<void(const Goal&)> walk = [&](const Goal& x) {
    if (x.kind == Goal::Kind::Ctr) out.push_back(&x.ctr);
    for (const auto& it : x.items) walk(it);
  };
  walk(g);
  return out;
}

std::string to_string(const Ctr& c) {
  return "ctr(" + dl::to_string(c.lhs) + ctr_op(c.op) + dl::to_string(c.rhs) + "," + dtype_name(c.type) + ")";
}

std::string to_string(const Goal& g) {
  switch (g.kind) {
    case Goal::Kind::Ctr: return to_string(g.ctr);
    case Goal::Kind::True: return "true";
    case Goal::Kind::Call: return dl::to_string(g.call);
    case Goal::Kind::Conj: {
      if (g.items.empty()) return "true";
      std::string out;
      for (std::size_t i = 0; i < g.items.size(); ++i) {
        if (i) out += ", ";
        out += to_string(g.items[i]);
      }
      return out;
    }
    case Goal::Kind::Disj: {
      std::string out = "(";
      for (std::size_t i = 0; i < g.items.size(); ++i) {
        if (i) out += " ; ";
        out += to_string(g.items[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string to_string(const Rule& r) { return dl::to_string(r.head) + " :- " + to_string(r.body) + "."; }

std::string to_string(const Program& p) {
  std::string out;
  for (const auto& pred : p.order)
    for (const auto& r : p.rules.at(pred)) out += to_string(r) + "\n";
  return out;
}

}  // namespace sqlclp::clp
