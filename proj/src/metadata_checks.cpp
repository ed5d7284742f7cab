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

#include <set>

#include "sqlclp/analyzer.hpp"

namespace sqlclp {

namespace {

using sql::Cond;
using sql::Expr;

struct ColumnRef {
  std::size_t item;
  int column;
};

class Scope {
 public:
  Scope(const sql::Select& s, const Catalog& catalog) : select_(s) {
    for (const auto& f : s.from) tables_.push_back(f.subquery ? nullptr : catalog.table(f.name));
  }

  [[nodiscard]] const TableSchema* table(std::size_t i) const { return tables_[i]; }
  [[nodiscard]] std::size_t size() const { return tables_.size(); }
  [[nodiscard]] bool all_base() const {
    return std::all_of(tables_.begin(), tables_.end(), [](const TableSchema* t) { return t != nullptr; });
  }

  [[nodiscard]] std::optional<ColumnRef> resolve(const Expr& e) const {
    if (e.kind != Expr::Kind::Column) return std::nullopt;
    std::optional<ColumnRef> hit;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      const auto& f = select_.from[i];
      if (!e.qualifier.empty() && f.qualifier() != e.qualifier) continue;
      if (!tables_[i]) return std::nullopt;  // may come from a view or derived table
      auto c = tables_[i]->column_index(e.column);
      if (!c) continue;
      if (hit) return std::nullopt;
      hit = ColumnRef{i, *c};
    }
    return hit;
  }

 private:
  const sql::Select& select_;
  std::vector<const TableSchema*> tables_;
};

void conjuncts(const Cond& c, std::vector<const Cond*>& out) {
  if (c.kind == Cond::Kind::And) {
    for (const auto& ch : c.children) conjuncts(ch, out);
    return;
  }
  out.push_back(&c);
}

bool has_aggregate(const Expr& e) {
  if (e.kind == Expr::Kind::Aggregate) return true;
  if (e.kind == Expr::Kind::Subquery) return false;
  return std::any_of(e.args.begin(), e.args.end(), has_aggregate);
}

bool distinct_is_redundant(const sql::Select& s, const Scope& scope) {
  if (s.quantifier != sql::Quantifier::Distinct || s.from.empty() || !scope.all_base()) return false;
  if (!s.group_by.empty() || s.having) return false;
  for (std::size_t i = 0; i < scope.size(); ++i)
    if (scope.table(i)->primary_key.empty()) return false;
  std::set<std::pair<std::size_t, int>> known;
  auto add_all = [&](std::size_t i) {
    for (std::size_t c = 0; c < scope.table(i)->columns.size(); ++c) known.emplace(i, static_cast<int>(c));
  };
  for (const auto& item : s.items) {
    if (item.star) {
      for (std::size_t i = 0; i < scope.size(); ++i)
        if (item.star_qualifier.empty() || s.from[i].qualifier() == item.star_qualifier) add_all(i);
      continue;
    }
    if (has_aggregate(item.expr)) return false;
    if (auto r = scope.resolve(item.expr)) known.emplace(r->item, r->column);
  }
  std::vector<std::pair<ColumnRef, ColumnRef>> links;
  if (s.has_where) {
    std::vector<const Cond*> cs;
    conjuncts(s.where, cs);
    for (const Cond* c : cs) {
      if (c->kind != Cond::Kind::Cmp || c->cmp_op != sql::CmpOp::Eq) continue;
      for (int side = 0; side < 2; ++side) {
        const Expr& a = c->exprs[side];
        const Expr& b = c->exprs[1 - side];
        auto ra = scope.resolve(a);
        if (!ra) continue;
        if (b.kind == Expr::Kind::Const && !b.value.is_null()) known.emplace(ra->item, ra->column);
        if (auto rb = scope.resolve(b); rb && side == 0) links.emplace_back(*ra, *rb);
      }
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : links) {
      bool ka = known.count({a.item, a.column}) != 0;
      bool kb = known.count({b.item, b.column}) != 0;
      if (ka != kb) {
        known.emplace(a.item, a.column);
        known.emplace(b.item, b.column);
        changed = true;
      }
    }
    for (std::size_t i = 0; i < scope.size(); ++i) {
      const auto& pk = scope.table(i)->primary_key;
      bool keyed = std::all_of(pk.begin(), pk.end(), [&](int c) { return known.count({i, c}) != 0; });
      if (!keyed) continue;
      std::size_t before = known.size();
      add_all(i);
      changed = changed || known.size() != before;
    }
  }
  for (std::size_t i = 0; i < scope.size(); ++i) {
    const auto& pk = scope.table(i)->primary_key;
    if (!std::all_of(pk.begin(), pk.end(), [&](int c) { return known.count({i, c}) != 0; })) return false;
  }
  return true;
}

void scan_aggregates(const Expr& e, const Scope& scope, std::vector<Diagnostic>& out) {
  if (e.kind == Expr::Kind::Subquery) return;
  for (const auto& a : e.args) scan_aggregates(a, scope, out);
  if (e.kind != Expr::Kind::Aggregate || e.agg_star || e.args.empty()) return;
  auto ref = scope.resolve(e.args[0]);
  if (e.agg_quantifier == sql::Quantifier::Distinct) {
    bool min_max = e.agg_fn == sql::AggFn::Min || e.agg_fn == sql::AggFn::Max;
    bool key = false;
    if (ref && scope.size() == 1) {
      const auto& pk = scope.table(ref->item)->primary_key;
      key = pk.size() == 1 && pk[0] == ref->column;
    }
    if (min_max || key) out.push_back(warning("W016", "unnecessary DISTINCT in aggregation function", e.span));
    return;
  }
  if (e.agg_fn == sql::AggFn::Count && ref) {
    const ColumnDef& col = scope.table(ref->item)->columns[static_cast<std::size_t>(ref->column)];
    if (col.not_null || col.is_pk) out.push_back(warning("W017", "unnecessary argument of COUNT", e.span));
  }
}

void scan_aggregates(const Cond& c, const Scope& scope, std::vector<Diagnostic>& out) {
  for (const auto& e : c.exprs) scan_aggregates(e, scope, out);
  for (const auto& ch : c.children) scan_aggregates(ch, scope, out);
}

class MetadataScan : public sql::Visitor {
 public:
  MetadataScan(const Catalog& catalog) : catalog_(catalog) {}
  std::vector<Diagnostic> out;

  void on_select(const sql::Select& s) override {
    Scope scope(s, catalog_);
    if (distinct_is_redundant(s, scope)) out.push_back(warning("W002", "unnecessary DISTINCT", s.span));
    for (const auto& item : s.items)
      if (!item.star) scan_aggregates(item.expr, scope, out);
    if (s.having) scan_aggregates(*s.having, scope, out);
  }

 private:
  const Catalog& catalog_;
};

}  // namespace

std::vector<Diagnostic> metadata_checks(const sql::Statement& stmt, const Catalog& catalog) {
  MetadataScan scan(catalog);
  sql::walk(stmt, scan);
  return std::move(scan.out);
}

}  // namespace sqlclp
