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

#include "sqlclp/solve.hpp"

#include <climits>
#include <memory>

namespace sqlclp::solver {

namespace {

using dl::DlExpr;
using dl::Term;

// Variable mapping of one clause instance. A raw environment maps every
// variable to itself.
struct Env {
  bool raw = false;
  int offset = 0;
  std::map<int, Term> bind;
  std::vector<clp::Goal> extra;  // head unification constraints
};

struct Pending {
  const clp::Goal* goal;
  std::shared_ptr<const Env> env;
  int depth;
};

struct Posted {
  const clp::Ctr* origin;
  std::vector<int> vars;
};

struct State {
  Store store;
  std::vector<Pending> stack;
  std::vector<Posted> posted;
};

Term resolve(const Term& t, const Env& env) {
  if (!t.is_var() || env.raw) return t;
  auto it = env.bind.find(t.var);
  if (it != env.bind.end()) return it->second;
  return Term::variable(env.offset + t.var);
}

DlExpr resolve(const DlExpr& e, const Env& env) {
  if (e.is_term()) return DlExpr::of(resolve(e.term, env));
  DlExpr out = e;
  for (auto& a : out.args) a = resolve(a, env);
  return out;
}

void vars_of(const DlExpr& e, std::vector<int>& out) {
  if (e.is_term()) {
    if (e.term.is_var()) out.push_back(e.term.var);
    return;
  }
  for (const auto& a : e.args) vars_of(a, out);
}

class Interpreter {
 public:
  Interpreter(const clp::Program& prog, const SolverOptions& opts)
      : prog_(prog), opts_(opts), stride_(std::max(prog.next_var, 1) + 1) {}

  SolveResult run(const clp::Goal& goal, Store store) {
    SolveResult res;
    auto root = std::make_shared<Env>();
    root->raw = true;
    std::vector<State> work;
    work.push_back(State{std::move(store), {{&goal, root, 0}}, {}});
    std::set<const clp::Ctr*> grounded;
    while (!work.empty()) {
      if (res.derivations >= opts_.max_derivations || exhausted_) {
        res.incomplete = true;
        break;
      }
      State st = std::move(work.back());
      work.pop_back();
      bool ok = derive(st, work, res);
      ++res.derivations;
      if (!ok) continue;
      std::map<const clp::Ctr*, bool> all_ground;
      const auto& g = st.store.groundings();
      for (const auto& p : st.posted) {
        bool ground = std::all_of(p.vars.begin(), p.vars.end(), [&](int v) { return g.count(v) != 0; });
        auto [it, inserted] = all_ground.emplace(p.origin, ground);
        if (!inserted) it->second = it->second && ground;
      }
      std::set<const clp::Ctr*> leaf;
      for (const auto& [c, ground] : all_ground)
        if (ground) leaf.insert(c);
      if (!res.success) {
        res.success = true;
        res.substitution = g;
        res.store = st.store;
        grounded = std::move(leaf);
        continue;
      }
      for (auto it = res.substitution.begin(); it != res.substitution.end();) {
        auto other = g.find(it->first);
        if (other == g.end() || !(other->second == it->second)) it = res.substitution.erase(it);
        else ++it;
      }
      for (auto it = grounded.begin(); it != grounded.end();) {
        if (!leaf.count(*it)) it = grounded.erase(it);
        else ++it;
      }
    }
    if (exhausted_) res.incomplete = true;
    if (res.incomplete) {
      res.success = true;
      res.substitution.clear();
      grounded.clear();
    }
    res.grounded = std::move(grounded);
    return res;
  }

 private:
  bool derive(State& st, std::vector<State>& work, SolveResult& res) {
    while (!st.stack.empty()) {
      Pending p = st.stack.back();
      st.stack.pop_back();
      const clp::Goal& g = *p.goal;
      switch (g.kind) {
        case clp::Goal::Kind::True: break;
        case clp::Goal::Kind::Conj:
          for (auto it = g.items.rbegin(); it != g.items.rend(); ++it) st.stack.push_back({&*it, p.env, p.depth});
          break;
        case clp::Goal::Kind::Disj: {
          if (g.items.empty()) return false;
          for (std::size_t i = g.items.size() - 1; i >= 1; --i) {
            State copy = st;
            copy.stack.push_back({&g.items[i], p.env, p.depth});
            work.push_back(std::move(copy));
          }
          st.stack.push_back({&g.items[0], p.env, p.depth});
          break;
        }
        case clp::Goal::Kind::Ctr: {
          clp::Ctr inst = g.ctr;
          inst.lhs = resolve(g.ctr.lhs, *p.env);
          inst.rhs = resolve(g.ctr.rhs, *p.env);
          bool posted = st.store.post(inst);
          if (st.store.work() > opts_.max_work) {
            exhausted_ = true;
            return false;
          }
          if (!posted) {
            if (!res.failing_span && g.ctr.span.valid()) res.failing_span = g.ctr.span;
            return false;
          }
          if (!g.ctr.from_check && !p.env->raw) {
            std::vector<int> vs;
            vars_of(inst.lhs, vs);
            vars_of(inst.rhs, vs);
            st.posted.push_back({&g.ctr, std::move(vs)});
          }
          break;
        }
        case clp::Goal::Kind::Call: {
          const auto* clauses = prog_.clauses(g.call.pred);
          if (!clauses || clauses->empty()) return false;
          if (p.depth + 1 > opts_.max_depth) throw Error("solve depth limit exceeded at " + g.call.pred, {});
          std::vector<Term> args;
          for (const auto& a : g.call.args) args.push_back(resolve(a, *p.env));
          for (std::size_t i = clauses->size() - 1; i >= 1; --i) {
            State copy = st;
            enter(copy, (*clauses)[i], args, p.depth + 1);
            work.push_back(std::move(copy));
          }
          enter(st, (*clauses)[0], args, p.depth + 1);
          break;
        }
      }
    }
    return true;
  }

  void enter(State& st, const clp::Rule& clause, const std::vector<Term>& args, int depth) {
    auto env = std::make_shared<Env>();
    if (next_block_ > INT_MAX / stride_ - 1) exhausted_ = true;
    env->offset = (next_block_++) * stride_;
    auto raw = std::make_shared<Env>();
    raw->raw = true;
    for (std::size_t i = 0; i < clause.head.args.size() && i < args.size(); ++i) {
      const Term& h = clause.head.args[i];
      if (h.is_var() && !env->bind.count(h.var)) {
        env->bind.emplace(h.var, args[i]);
        continue;
      }
      clp::Ctr eq;
      eq.op = sql::CmpOp::Eq;
      eq.lhs = DlExpr::of(resolve(h, *env));
      eq.rhs = DlExpr::of(args[i]);
      auto kind = [&](const Term& t) {
        if (!t.is_var()) return t.dtype;
        return st.store.type_of(t.var);
      };
      DType ta = kind(eq.lhs.term);
      DType tb = kind(eq.rhs.term);
      eq.type = (ta == DType::String || tb == DType::String)  ? DType::String
                : (ta == DType::Float || tb == DType::Float) ? DType::Float
                                                             : DType::Integer;
      raw->extra.push_back(clp::Goal::constraint(std::move(eq)));
    }
    for (const auto& [v, t] : clause.var_types)
      if (!env->bind.count(v)) st.store.declare(env->offset + v, t);
    st.stack.push_back({&clause.body, env, depth});
    for (auto it = raw->extra.rbegin(); it != raw->extra.rend(); ++it) st.stack.push_back({&*it, raw, depth});
  }

  const clp::Program& prog_;
  const SolverOptions& opts_;
  int stride_;
  int next_block_ = 1;
  bool exhausted_ = false;
};

}  // namespace

SolveResult solve(const clp::Goal& goal, const clp::Program& prog, Store store, const SolverOptions& opts) {
  return Interpreter(prog, opts).run(goal, std::move(store));
}

SolveResult solve_target(const clp::Program& prog, const SolverOptions& opts, std::vector<int>* args) {
  Store store(opts);
  dl::Atom call;
  call.pred = prog.target;
  for (std::size_t i = 0; i < prog.target_types.size(); ++i) {
    int v = -static_cast<int>(i) - 1;
    store.declare(v, prog.target_types[i]);
    call.args.push_back(Term::variable(v));
  }
  if (args) {
    args->clear();
    for (const auto& t : call.args) args->push_back(t.var);
  }
  clp::Goal goal = clp::Goal::call_of(std::move(call));
  return solve(goal, prog, std::move(store), opts);
}

}  // namespace sqlclp::solver
