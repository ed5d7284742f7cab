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

#include "sqlclp/datalog.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "sqlclp/printer.hpp"

namespace sqlclp::dl {

bool operator<(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.is_var()) return a.var < b.var;
  return a.value < b.value;
}

DlExpr DlExpr::arith(sql::ArithOp op, DlExpr l, DlExpr r) {
  DlExpr e;
  e.kind = Kind::Arith;
  e.op = op;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  return e;
}

DlExpr DlExpr::neg(DlExpr inner) {
  DlExpr e;
  e.kind = Kind::Neg;
  e.args.push_back(std::move(inner));
  return e;
}

Goal Goal::cmp(sql::CmpOp op, DlExpr l, DlExpr r, SourceSpan span) {
  Goal g;
  g.kind = Kind::Cmp;
  g.op = op;
  g.lhs = std::move(l);
  g.rhs = std::move(r);
  g.span = span;
  return g;
}

Goal Goal::disj(std::vector<std::vector<Goal>> alts) {
  Goal g;
  g.kind = Kind::Disj;
  g.alternatives = std::move(alts);
  return g;
}

std::vector<const Rule*> Program::rules_for(const std::string& pred) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules)
    if (r.head.pred == pred) out.push_back(&r);
  return out;
}

std::size_t Program::count_rules(const std::string& pred) const {
  return static_cast<std::size_t>(
      std::count_if(rules.begin(), rules.end(), [&](const Rule& r) { return r.head.pred == pred; }));
}

bool Program::is_base(const std::string& pred) const {
  auto it = preds.find(pred);
  return it != preds.end() && it->second.is_base;
}

void collect_vars(const DlExpr& e, std::vector<int>& out) {
  if (e.is_term()) {
    if (e.term.is_var()) out.push_back(e.term.var);
    return;
  }
  for (const auto& a : e.args) collect_vars(a, out);
}

void collect_vars(const Goal& g, std::vector<int>& out) {
  switch (g.kind) {
    case Goal::Kind::Atom:
    case Goal::Kind::Not:
    case Goal::Kind::Distinct:
    case Goal::Kind::Top:
      for (const auto& t : g.atom.args)
        if (t.is_var()) out.push_back(t.var);
      break;
    case Goal::Kind::Disj:
      for (const auto& alt : g.alternatives)
        for (const auto& sub : alt) collect_vars(sub, out);
      break;
    case Goal::Kind::Cmp:
      collect_vars(g.lhs, out);
      collect_vars(g.rhs, out);
      break;
    case Goal::Kind::True: break;
  }
}

std::set<int> vars_of(const Rule& r) {
  std::vector<int> v;
  for (const auto& t : r.head.args)
    if (t.is_var()) v.push_back(t.var);
  for (const auto& g : r.body) collect_vars(g, v);
  return {v.begin(), v.end()};
}

bool is_ground(const DlExpr& e) {
  if (e.is_term()) return !e.term.is_var();
  return std::all_of(e.args.begin(), e.args.end(), [](const DlExpr& a) { return is_ground(a); });
}

bool is_safe(const Rule& r, int num_params) {
  std::set<int> bound;
  for (int i = 0; i < num_params && i < static_cast<int>(r.head.args.size()); ++i)
    if (r.head.args[static_cast<std::size_t>(i)].is_var()) bound.insert(r.head.args[static_cast<std::size_t>(i)].var);
  // Positive atoms anywhere at the top level, and inside distinct/top wrappers.
  for (const auto& g : r.body) {
    if (g.kind == Goal::Kind::Atom || g.kind == Goal::Kind::Distinct || g.kind == Goal::Kind::Top)
      for (const auto& t : g.atom.args)
        if (t.is_var()) bound.insert(t.var);
  }
  // Equality chains X = e with e bound (or ground).
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& g : r.body) {
      if (g.kind != Goal::Kind::Cmp || g.op != sql::CmpOp::Eq) continue;
      auto bound_expr = [&](const DlExpr& e) {
        std::vector<int> vs;
        collect_vars(e, vs);
        return std::all_of(vs.begin(), vs.end(), [&](int v) { return bound.count(v) != 0; });
      };
      if (g.lhs.is_term() && g.lhs.term.is_var() && !bound.count(g.lhs.term.var) && bound_expr(g.rhs)) {
        bound.insert(g.lhs.term.var);
        changed = true;
      }
      if (g.rhs.is_term() && g.rhs.term.is_var() && !bound.count(g.rhs.term.var) && bound_expr(g.lhs)) {
        bound.insert(g.rhs.term.var);
        changed = true;
      }
    }
  }
  for (const auto& t : r.head.args)
    if (t.is_var() && !bound.count(t.var)) return false;
  return true;
}

// ---- printing -------------------------------------------------------------

namespace {

const char* dl_op(sql::CmpOp op) { return op == sql::CmpOp::Le ? "=<" : sql::to_string(op); }

std::string render_value(const Value& v, DType t) {
  if (v.is_string()) return sql::quote_string(v.string());
  if (v.is_null()) return "null";
  std::string s = rational_to_string(v.number());
  (void)t;
  return s;
}

int prec(const DlExpr& e) {
  if (e.kind != DlExpr::Kind::Arith) return 3;
  return e.op == sql::ArithOp::Add || e.op == sql::ArithOp::Sub ? 1 : 2;
}

struct Renderer {
  std::function<std::string(int)> var_name = [](int v) { return "X" + std::to_string(v); };
  std::function<std::string(const std::string&)> pred_name = [](const std::string& p) { return p; };

  std::string term(const Term& t) const { return t.is_var() ? var_name(t.var) : render_value(t.value, t.dtype); }

  std::string expr(const DlExpr& e) const {
    switch (e.kind) {
      case DlExpr::Kind::Term: return term(e.term);
      case DlExpr::Kind::Neg: {
        const DlExpr& a = e.args[0];
        return a.is_term() ? "-" + expr(a) : "-(" + expr(a) + ")";
      }
      case DlExpr::Kind::Arith: {
        int p = prec(e);
        std::string l = expr(e.args[0]);
        std::string r = expr(e.args[1]);
        if (prec(e.args[0]) < p) l = "(" + l + ")";
        if (prec(e.args[1]) <= p) r = "(" + r + ")";
        if (e.args[1].is_term() && !e.args[1].term.is_var() && e.args[1].term.value.is_number() &&
            e.args[1].term.value.number() < 0)
          r = "(" + r + ")";
        return l + sql::to_string(e.op) + r;
      }
    }
    return "?";
  }

  std::string atom(const Atom& a) const {
    std::string out = pred_name(a.pred);
    if (a.args.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ",";
      out += term(a.args[i]);
    }
    return out + ")";
  }

  std::string goal(const Goal& g) const {
    switch (g.kind) {
      case Goal::Kind::Atom: return atom(g.atom);
      case Goal::Kind::Not: return "not(" + atom(g.atom) + ")";
      case Goal::Kind::Distinct: return "distinct(" + atom(g.atom) + ")";
      case Goal::Kind::Top: return "top(" + std::to_string(g.top) + "," + atom(g.atom) + ")";
      case Goal::Kind::Cmp: return expr(g.lhs) + dl_op(g.op) + expr(g.rhs);
      case Goal::Kind::True: return "true";
      case Goal::Kind::Disj: {
        std::string out = "(";
        for (std::size_t i = 0; i < g.alternatives.size(); ++i) {
          if (i) out += " ; ";
          out += conj(g.alternatives[i]);
        }
        return out + ")";
      }
    }
    return "?";
  }

  std::string conj(const std::vector<Goal>& goals) const {
    if (goals.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < goals.size(); ++i) {
      if (i) out += ", ";
      out += goal(goals[i]);
    }
    return out;
  }

  std::string rule(const Rule& r) const { return atom(r.head) + " :- " + conj(r.body) + "."; }
};

}  // namespace

std::string to_string(const Term& t) { return Renderer{}.term(t); }
std::string to_string(const DlExpr& e) { return Renderer{}.expr(e); }
std::string to_string(const Atom& a) { return Renderer{}.atom(a); }
std::string to_string(const Goal& g) { return Renderer{}.goal(g); }
std::string to_string(const Rule& r) { return Renderer{}.rule(r); }

std::string to_string(const Program& p) {
  std::string out;
  for (const auto& r : p.rules) out += to_string(r) + "\n";
  return out;
}

std::string canonical(const Program& p) {
  std::map<std::string, std::string> pred_names;
  std::deque<std::string> queue;
  int next_pred = 1;
  auto visit_pred = [&](const std::string& name) {
    if (pred_names.count(name)) return;
    if (p.is_base(name) || name == p.target) {
      pred_names[name] = name;
    } else {
      pred_names[name] = "p" + std::to_string(next_pred++);
    }
    queue.push_back(name);
  };
  visit_pred(p.target);
  std::string out;
  std::vector<const Rule*> emitted;
  while (!queue.empty()) {
    std::string pred = queue.front();
    queue.pop_front();
    for (const Rule* r : p.rules_for(pred)) {
      // Discover called predicates in body order.
      std::function<void(const Goal&)> discover = [&](const Goal& g) {
        if (g.kind == Goal::Kind::Disj) {
          for (const auto& alt : g.alternatives)
            for (const auto& sub : alt) discover(sub);
        } else if (g.kind == Goal::Kind::Atom || g.kind == Goal::Kind::Not || g.kind == Goal::Kind::Distinct ||
                   g.kind == Goal::Kind::Top) {
          visit_pred(g.atom.pred);
        }
      };
      for (const auto& g : r->body) discover(g);
      std::map<int, int> vars;
      auto number = [&](int v) {
        auto it = vars.find(v);
        if (it == vars.end()) it = vars.emplace(v, static_cast<int>(vars.size()) + 1).first;
        return it->second;
      };
      for (const auto& t : r->head.args)
        if (t.is_var()) number(t.var);
      for (const auto& g : r->body) {
        std::vector<int> vs;
        collect_vars(g, vs);
        for (int v : vs) number(v);
      }
      Renderer rd;
      rd.var_name = [&](int v) { return "V" + std::to_string(number(v)); };
      rd.pred_name = [&](const std::string& name) {
        auto it = pred_names.find(name);
        return it == pred_names.end() ? name : it->second;
      };
      out += rd.rule(*r) + "\n";
    }
  }
  return out;
}

}  // namespace sqlclp::dl
