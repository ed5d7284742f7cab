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
#include <map>
#include <numeric>
#include <set>

#include "sqlclp/analyzer.hpp"

namespace sqlclp {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<int> goal_vars(const dl::Goal& g) {
  std::vector<int> vs;
  dl::collect_vars(g, vs);
  return vs;
}

std::string render_components(std::vector<std::vector<std::string>> groups) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end());
  std::string out = "[";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ",";
    if (groups[i].size() == 1) {
      out += groups[i][0];
      continue;
    }
    out += "{";
    for (std::size_t j = 0; j < groups[i].size(); ++j) out += (j ? "," : "") + groups[i][j];
    out += "}";
  }
  return out + "]";
}

class RuleView {
 public:
  explicit RuleView(const dl::Rule& r) : rule(r) {
    for (std::size_t i = 0; i < r.body.size(); ++i)
      if (r.body[i].kind == dl::Goal::Kind::Atom) atoms.push_back(i);
    for (const auto& t : r.head.args)
      if (t.is_var()) ++count_[t.var];
    for (const auto& g : r.body)
      for (int v : goal_vars(g)) ++count_[v];
  }

  [[nodiscard]] const dl::Atom& atom(std::size_t k) const { return rule.body[atoms[k]].atom; }
  [[nodiscard]] int count(int v) const {
    auto it = count_.find(v);
    return it == count_.end() ? 0 : it->second;
  }
  // Occurrence number of atom k among the atoms of the same predicate.
  [[nodiscard]] int occurrence(std::size_t k) const {
    int n = 0;
    for (std::size_t j = 0; j < k; ++j) n += atom(j).pred == atom(k).pred;
    return n;
  }

  const dl::Rule& rule;
  std::vector<std::size_t> atoms;

 private:
  std::map<int, int> count_;
};

bool all_distinct_vars(const dl::Atom& a) {
  std::set<int> seen;
  for (const auto& t : a.args)
    if (!t.is_var() || !seen.insert(t.var).second) return false;
  return true;
}

void missing_joins(const RuleView& rv, SourceSpan statement, std::vector<Diagnostic>& out) {
  std::size_t n = rv.atoms.size();
  if (n < 2) return;
  UnionFind uf(n);
  std::map<int, std::vector<std::size_t>> holders;
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& t : rv.atom(k).args)
      if (t.is_var()) holders[t.var].push_back(k);
  for (const auto& [v, ks] : holders)
    for (std::size_t k : ks) uf.unite(ks[0], k);
  for (const auto& g : rv.rule.body) {
    if (g.kind == dl::Goal::Kind::Atom) continue;
    std::optional<std::size_t> first;
    for (int v : goal_vars(g)) {
      auto it = holders.find(v);
      if (it == holders.end()) continue;
      if (!first) first = it->second[0];
      uf.unite(*first, it->second[0]);
    }
  }
  std::map<std::size_t, std::vector<std::string>> comps;
  for (std::size_t k = 0; k < n; ++k) comps[uf.find(k)].push_back(rv.atom(k).pred);
  if (comps.size() < 2) return;
  std::vector<std::vector<std::string>> groups;
  for (auto& [root, names] : comps) groups.push_back(std::move(names));
  out.push_back(warning("W027", "missing join condition for " + render_components(std::move(groups)), statement));
}

void unused_tuple(const RuleView& rv, const dl::Program& prog, const RelationLocator& locate,
                  std::vector<Diagnostic>& out) {
  if (rv.atoms.size() != 1) return;
  const dl::Atom& a = rv.atom(0);
  if (!prog.is_base(a.pred) || !all_distinct_vars(a)) return;
  for (const auto& t : a.args)
    if (rv.count(t.var) != 1) return;
  auto [name, span] = locate(a.pred, 0);
  out.push_back(warning("W005", "unused tuple variable " + name, span));
}

void unnecessary_joins(const RuleView& rv, const dl::Program& prog, const Catalog& catalog,
                       const RelationLocator& locate, std::vector<Diagnostic>& out) {
  for (std::size_t k = 0; k < rv.atoms.size(); ++k) {
    const dl::Atom& a = rv.atom(k);
    const TableSchema* t = prog.is_base(a.pred) ? catalog.table(a.pred) : nullptr;
    if (!t || t->primary_key.empty() || !all_distinct_vars(a)) continue;
    std::set<int> pk(t->primary_key.begin(), t->primary_key.end());
    bool only_key_shared = true;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      bool shared = rv.count(a.args[i].var) > 1;
      if (shared && !pk.count(static_cast<int>(i))) only_key_shared = false;
    }
    if (!only_key_shared) continue;
    bool covered = false;
    for (std::size_t j = 0; j < rv.atoms.size() && !covered; ++j) {
      if (j == k) continue;
      const dl::Atom& b = rv.atom(j);
      const TableSchema* u = prog.is_base(b.pred) ? catalog.table(b.pred) : nullptr;
      if (!u) continue;
      for (const auto& fk : u->foreign_keys) {
        if (fk.target != a.pred) continue;
        std::set<int> targets(fk.target_columns.begin(), fk.target_columns.end());
        if (targets != pk) continue;
        bool linked = true;
        for (std::size_t c = 0; c < fk.columns.size(); ++c) {
          const auto& from = b.args[static_cast<std::size_t>(fk.columns[c])];
          const auto& to = a.args[static_cast<std::size_t>(fk.target_columns[c])];
          if (!(from == to)) linked = false;
        }
        if (linked) covered = true;
      }
    }
    if (!covered) continue;
    auto [name, span] = locate(a.pred, rv.occurrence(k));
    out.push_back(warning("W006", "unnecessary join with " + name, span));
  }
}

void identical_tuples(const RuleView& rv, const dl::Program& prog, const Catalog& catalog,
                      const RelationLocator& locate, std::vector<Diagnostic>& out) {
  std::set<std::string> reported;
  for (std::size_t k = 0; k < rv.atoms.size(); ++k) {
    for (std::size_t j = k + 1; j < rv.atoms.size(); ++j) {
      const dl::Atom& a = rv.atom(k);
      const dl::Atom& b = rv.atom(j);
      if (a.pred != b.pred || reported.count(a.pred)) continue;
      bool same = a.args == b.args;
      const TableSchema* t = prog.is_base(a.pred) ? catalog.table(a.pred) : nullptr;
      if (!same && t && !t->primary_key.empty()) {
        same = std::all_of(t->primary_key.begin(), t->primary_key.end(), [&](int c) {
          return a.args[static_cast<std::size_t>(c)] == b.args[static_cast<std::size_t>(c)];
        });
      }
      if (!same) continue;
      reported.insert(a.pred);
      auto [name, span] = locate(a.pred, rv.occurrence(j));
      out.push_back(warning("W007", "tuple variables are always identical for " + name, span));
    }
  }
}

}  // namespace

std::vector<Diagnostic> join_checks(const dl::Program& prog, const Catalog& catalog, SourceSpan statement,
                                    const RelationLocator& locate) {
  std::vector<Diagnostic> out;
  for (const auto& r : prog.rules) {
    RuleView rv(r);
    missing_joins(rv, statement, out);
    unnecessary_joins(rv, prog, catalog, locate, out);
    identical_tuples(rv, prog, catalog, locate, out);
  }
  auto target = prog.rules_for(prog.target);
  if (target.size() == 1) unused_tuple(RuleView(*target[0]), prog, locate, out);
  return out;
}

}  // namespace sqlclp
