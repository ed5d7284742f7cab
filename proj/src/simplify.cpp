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
#include <map>

#include "sqlclp/datalog.hpp"

namespace sqlclp::dl {

namespace {

using Subst = std::map<int, Term>;

Term substitute(const Term& t, const Subst& s) {
  if (!t.is_var()) return t;
  auto it = s.find(t.var);
  return it == s.end() ? t : it->second;
}

DlExpr substitute(const DlExpr& e, const Subst& s) {
  if (e.is_term()) return DlExpr::of(substitute(e.term, s));
  DlExpr out = e;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

Goal substitute(const Goal& g, const Subst& s) {
  Goal out = g;
  for (auto& t : out.atom.args) t = substitute(t, s);
  out.lhs = substitute(g.lhs, s);
  out.rhs = substitute(g.rhs, s);
  for (auto& alt : out.alternatives)
    for (auto& sub : alt) sub = substitute(sub, s);
  return out;
}

void substitute(Rule& r, const Subst& s) {
  for (auto& t : r.head.args) t = substitute(t, s);
  for (auto& g : r.body) g = substitute(g, s);
  for (const auto& [v, _] : s) r.var_types.erase(v);
}

bool trivially_true(const Goal& g) {
  if (g.kind == Goal::Kind::True) return true;
  if (g.kind == Goal::Kind::Cmp && g.op == sql::CmpOp::Eq && g.lhs.is_term() && g.rhs.is_term() &&
      g.lhs.term.is_var() && g.rhs.term.is_var() && g.lhs.term.var == g.rhs.term.var)
    return true;
  return false;
}

bool clean_goals(std::vector<Goal>& goals) {
  bool changed = false;
  std::vector<Goal> out;
  out.reserve(goals.size());
  for (auto& g : goals) {
    if (trivially_true(g)) {
      changed = true;
      continue;
    }
    if (g.kind == Goal::Kind::Disj) {
      for (auto& alt : g.alternatives) changed |= clean_goals(alt);
      if (g.alternatives.size() == 1) {
        for (auto& sub : g.alternatives.front()) out.push_back(std::move(sub));
        changed = true;
        continue;
      }
    }
    out.push_back(std::move(g));
  }
  goals = std::move(out);
  return changed;
}

DType type_in(const Rule& r, const Term& t) {
  if (!t.is_var()) return t.dtype;
  auto it = r.var_types.find(t.var);
  return it == r.var_types.end() ? DType::Integer : it->second;
}

// One top-level binding X=Y or X=c applied as a substitution.
bool substitute_one(Rule& r) {
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    const Goal& g = r.body[i];
    if (g.kind != Goal::Kind::Cmp || g.op != sql::CmpOp::Eq || !g.lhs.is_term() || !g.rhs.is_term()) continue;
    const Term& a = g.lhs.term;
    const Term& b = g.rhs.term;
    Subst s;
    if (a.is_var() && b.is_var()) {
      if (a.var == b.var) continue;
      if (type_in(r, a) != type_in(r, b)) continue;
      int keep = std::min(a.var, b.var);
      int drop = std::max(a.var, b.var);
      s[drop] = Term::variable(keep);
    } else if (a.is_var() != b.is_var()) {
      const Term& v = a.is_var() ? a : b;
      const Term& c = a.is_var() ? b : a;
      if (c.value.is_null() || !compatible(type_in(r, v), c.dtype)) continue;
      if (type_in(r, v) == DType::Integer && !c.value.is_integral()) continue;
      // Keep the constant typed like the variable it replaces.
      s[v.var] = Term::constant(c.value, type_in(r, v));
    } else {
      continue;
    }
    r.body.erase(r.body.begin() + static_cast<std::ptrdiff_t>(i));
    substitute(r, s);
    return true;
  }
  return false;
}

bool clean(Rule& r) {
  bool changed = clean_goals(r.body);
  while (substitute_one(r)) changed = true;
  changed |= clean_goals(r.body);
  return changed;
}

class Unfolder {
 public:
  explicit Unfolder(Program& p) : p_(p) {}

  bool pass() {
    std::map<std::string, int> counts;
    for (const auto& r : p_.rules) counts[r.head.pred]++;
    bool changed = false;
    for (std::size_t i = 0; i < p_.rules.size(); ++i) {
      Rule& r = p_.rules[i];
      changed |= unfold_goals(r, r.body, counts);
    }
    return changed;
  }

 private:
  const Rule* single_clause(const std::string& pred, const std::string& caller,
                            const std::map<std::string, int>& counts) const {
    if (pred == caller || p_.is_base(pred)) return nullptr;
    auto it = counts.find(pred);
    if (it == counts.end() || it->second != 1) return nullptr;
    for (const auto& r : p_.rules)
      if (r.head.pred == pred) return calls(r, pred) ? nullptr : &r;
    return nullptr;
  }

  static bool calls(const Rule& r, const std::string& pred) {
    std::function<bool(const Goal&)> hit = [&](const Goal& g) {
      if (g.kind == Goal::Kind::Disj) {
        for (const auto& alt : g.alternatives)
          for (const auto& sub : alt)
            if (hit(sub)) return true;
        return false;
      }
      return g.kind != Goal::Kind::Cmp && g.kind != Goal::Kind::True && g.atom.pred == pred;
    };
    return std::any_of(r.body.begin(), r.body.end(), hit);
  }

  bool unfold_goals(Rule& owner, std::vector<Goal>& goals, const std::map<std::string, int>& counts) {
    bool changed = false;
    std::vector<Goal> out;
    out.reserve(goals.size());
    for (auto& g : goals) {
      if (g.kind == Goal::Kind::Disj) {
        for (auto& alt : g.alternatives) changed |= unfold_goals(owner, alt, counts);
        out.push_back(std::move(g));
        continue;
      }
      const Rule* callee = g.kind == Goal::Kind::Atom ? single_clause(g.atom.pred, owner.head.pred, counts) : nullptr;
      if (!callee) {
        out.push_back(std::move(g));
        continue;
      }
      // Rename apart, then bind head positions to the call arguments.
      Rule copy = *callee;
      Subst rename;
      for (int v : vars_of(copy)) {
        int fresh = p_.fresh_var();
        rename[v] = Term::variable(fresh);
        owner.var_types[fresh] = copy.var_types.count(v) ? copy.var_types.at(v) : DType::Integer;
      }
      substitute(copy, rename);
      Subst bind;
      std::vector<Goal> extra;
      for (std::size_t i = 0; i < copy.head.args.size(); ++i) {
        const Term& h = copy.head.args[i];
        const Term& a = g.atom.args[i];
        if (h.is_var() && !bind.count(h.var)) {
          bind[h.var] = a;
          continue;
        }
        extra.push_back(Goal::cmp(sql::CmpOp::Eq, DlExpr::of(substitute(h, bind)), DlExpr::of(a), g.span));
      }
      for (const auto& [v, _] : bind) owner.var_types.erase(v);
      for (const auto& sub : copy.body) out.push_back(substitute(sub, bind));
      for (auto& e : extra) out.push_back(std::move(e));
      changed = true;
    }
    goals = std::move(out);
    return changed;
  }

  Program& p_;
};

void drop_unreachable(Program& p) {
  std::set<std::string> reach{p.target};
  std::deque<std::string> queue{p.target};
  std::function<void(const Goal&)> visit = [&](const Goal& g) {
    if (g.kind == Goal::Kind::Disj) {
      for (const auto& alt : g.alternatives)
        for (const auto& sub : alt) visit(sub);
      return;
    }
    if (g.kind == Goal::Kind::Cmp || g.kind == Goal::Kind::True) return;
    if (reach.insert(g.atom.pred).second) queue.push_back(g.atom.pred);
  };
  // Index rules by head once; the benchmark programs have hundreds of predicates.
  std::map<std::string, std::vector<std::size_t>> by_head;
  for (std::size_t i = 0; i < p.rules.size(); ++i) by_head[p.rules[i].head.pred].push_back(i);
  while (!queue.empty()) {
    std::string pred = queue.front();
    queue.pop_front();
    for (std::size_t i : by_head[pred])
      for (const auto& g : p.rules[i].body) visit(g);
  }
  std::vector<Rule> kept;
  for (auto& r : p.rules)
    if (reach.count(r.head.pred)) kept.push_back(std::move(r));
  p.rules = std::move(kept);
  for (auto it = p.preds.begin(); it != p.preds.end();) {
    if (!it->second.is_base && !reach.count(it->first)) it = p.preds.erase(it);
    else ++it;
  }
}

void atoms_first(Rule& r) {
  std::stable_partition(r.body.begin(), r.body.end(), [](const Goal& g) { return g.kind == Goal::Kind::Atom; });
}

void restrict_types(Rule& r) {
  std::set<int> live = vars_of(r);
  for (auto it = r.var_types.begin(); it != r.var_types.end();) {
    if (!live.count(it->first)) it = r.var_types.erase(it);
    else ++it;
  }
}

}  // namespace

Program simplify(const Program& prog) {
  Program p = prog;
  for (int round = 0; round < 10000; ++round) {
    bool changed = false;
    for (auto& r : p.rules) changed |= clean(r);
    changed |= Unfolder(p).pass();
    drop_unreachable(p);
    if (!changed) break;
  }
  for (auto& r : p.rules) {
    atoms_first(r);
    restrict_types(r);
  }
  return p;
}

}  // namespace sqlclp::dl
