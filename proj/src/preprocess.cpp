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

#include "sqlclp/preprocess.hpp"

#include <algorithm>
#include <map>

namespace sqlclp {

using sql::Cond;
using sql::Expr;
using sql::Query;
using sql::Select;

NameSupply::NameSupply(const Catalog& catalog) {
  for (const auto& [name, _] : catalog.tables()) used_.insert(name);
  for (const auto& [name, _] : catalog.views()) used_.insert(name);
}

std::string NameSupply::fresh() {
  while (true) {
    std::string candidate = "r" + std::to_string(next_++);
    if (used_.insert(candidate).second) return candidate;
  }
}

const RelationDef* Preprocessed::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

Query select_star_where(const std::string& table, const Cond& cond, SourceSpan span) {
  Query q;
  q.kind = Query::Kind::Select;
  sql::SelectItem star;
  star.star = true;
  star.span = span;
  q.select.items.push_back(star);
  sql::FromItem f;
  f.name = table;
  f.span = span;
  q.select.from.push_back(f);
  q.select.where = cond;
  q.select.has_where = cond.kind != Cond::Kind::True;
  q.select.span = span;
  q.span = span;
  return q;
}

namespace {

struct Entry {
  std::string qualifier;  // name visible in the SQL text
  std::string relation;   // relation after rewriting
  RelationShape shape;
};

struct Frame {
  std::vector<Entry> entries;
};

struct Resolved {
  Query query;
  RelationShape shape;
  bool correlated = false;
};

bool trivial_form(const Query& q, std::size_t arity) {
  if (q.kind != Query::Kind::Select) return false;
  const Select& s = q.select;
  if (s.quantifier != sql::Quantifier::Distinct) return false;
  if (s.from.size() != 1 || s.from[0].subquery || !s.from[0].alias.empty()) return false;
  if (s.where.kind != Cond::Kind::True || !s.group_by.empty() || s.having) return false;
  if (s.items.size() == 1 && s.items[0].star && s.items[0].star_qualifier.empty()) return true;
  if (s.items.size() != arity) return false;
  for (std::size_t i = 0; i < arity; ++i) {
    const auto& item = s.items[i];
    if (item.star || item.expr.kind != Expr::Kind::Column) return false;
    if (item.expr.qualifier != s.from[0].name && !item.expr.qualifier.empty()) return false;
    if (item.expr.column_index != static_cast<int>(i)) return false;
  }
  return true;
}

class Preprocessor {
 public:
  Preprocessor(const Catalog& catalog, Preprocessed& out) : catalog_(catalog), out_(out) {}

  void run(const Query& q, const std::string& target) {
    std::string name = target;
    if (out_.names.taken(name)) name = out_.names.fresh();
    out_.names.reserve(name);
    // Reserve slot 0 for the target so it stays first.
    out_.defs.push_back(RelationDef{name, {}, {}, {}, false});
    def_index_[name] = 0;
    Resolved r = resolve_query(sql::expand_between(q));
    finalize_def(0, std::move(r));
  }

  RelationShape shape_only(const Query& q) {
    Resolved r = resolve_query(sql::expand_between(q));
    return r.shape;
  }

 private:
  // ---- definitions ------------------------------------------------------

  std::size_t new_def(const std::string& name, bool from_view) {
    out_.names.reserve(name);
    out_.defs.push_back(RelationDef{name, {}, {}, {}, from_view});
    def_index_[name] = out_.defs.size() - 1;
    return out_.defs.size() - 1;
  }

  // Stores `r`, splitting a non-trivial DISTINCT root into two definitions.
  void finalize_def(std::size_t slot, Resolved r) {
    if (needs_split(r.query)) {
      std::string inner = out_.names.fresh();
      std::size_t inner_slot = new_def(inner, false);
      Query body = strip_distinct(r.query);
      Query wrapper = trivial_over(inner, r.shape, top_of(r.query));
      set_def(inner_slot, std::move(body), r.shape);
      set_def(slot, std::move(wrapper), r.shape);
      return;
    }
    set_def(slot, std::move(r.query), r.shape);
  }

  void set_def(std::size_t slot, Query q, const RelationShape& shape) {
    out_.defs[slot].query = std::move(q);
    out_.defs[slot].columns = shape.columns;
    out_.defs[slot].types = shape.types;
  }

  static bool is_distinct(const Query& q) {
    if (q.kind == Query::Kind::SetOp) return q.set_quantifier == sql::Quantifier::Distinct;
    return q.select.quantifier == sql::Quantifier::Distinct;
  }

  bool needs_split(const Query& q) const {
    return is_distinct(q) && !trivial_form(q, arity_of_trivial_source(q));
  }

  std::size_t arity_of_trivial_source(const Query& q) const {
    if (q.kind != Query::Kind::Select || q.select.from.size() != 1) return 0;
    auto shape = relation_shape(q.select.from[0].name);
    return shape ? shape->columns.size() : 0;
  }

  static std::optional<std::int64_t> top_of(const Query& q) {
    return q.kind == Query::Kind::Select ? q.select.top : std::nullopt;
  }

  static Query strip_distinct(Query q) {
    if (q.kind == Query::Kind::SetOp) {
      q.set_quantifier = sql::Quantifier::All;
    } else {
      q.select.quantifier = sql::Quantifier::All;
      q.select.top.reset();
    }
    return q;
  }

  static Query trivial_over(const std::string& relation, const RelationShape& shape,
                            std::optional<std::int64_t> top) {
    Query q;
    q.kind = Query::Kind::Select;
    q.select.quantifier = sql::Quantifier::Distinct;
    q.select.top = top;
    for (std::size_t i = 0; i < shape.columns.size(); ++i) {
      sql::SelectItem item;
      item.expr = Expr::column_ref(relation, shape.columns[i]);
      item.expr.column_index = static_cast<int>(i);
      item.expr.column_type = shape.types[i];
      q.select.items.push_back(std::move(item));
    }
    sql::FromItem f;
    f.name = relation;
    q.select.from.push_back(std::move(f));
    q.select.where = Cond::truth();
    return q;
  }

  // A subquery that can be lifted out of its context. Uncorrelated
  // non-trivial DISTINCT queries become `SELECT DISTINCT * FROM r'`.
  Query lift_inline(Resolved r) {
    if (r.correlated || !needs_split(r.query)) return std::move(r.query);
    std::string inner = out_.names.fresh();
    std::size_t slot = new_def(inner, false);
    Query wrapper = trivial_over(inner, r.shape, top_of(r.query));
    wrapper.span = r.query.span;
    wrapper.select.span = r.query.span;
    set_def(slot, strip_distinct(std::move(r.query)), r.shape);
    return wrapper;
  }

  // ---- relations --------------------------------------------------------

  std::optional<RelationShape> relation_shape(const std::string& name) const {
    auto it = def_index_.find(name);
    if (it != def_index_.end()) {
      const auto& d = out_.defs[it->second];
      return RelationShape{d.name, d.columns, d.types, d.from_view};
    }
    return catalog_.shape(name);
  }

  // Ensures views are available as definitions and returns the shape.
  RelationShape use_relation(const std::string& name, SourceSpan span) {
    if (def_index_.count(name)) return *relation_shape(name);
    if (const auto* v = catalog_.view(name)) {
      std::size_t slot = new_def(name, true);
      auto saved_frames = std::move(frames_);
      auto saved_mins = std::move(min_refs_);
      frames_.clear();
      min_refs_.clear();
      Resolved r = resolve_query(sql::expand_between(v->query));
      frames_ = std::move(saved_frames);
      min_refs_ = std::move(saved_mins);
      finalize_def(slot, std::move(r));
      return *relation_shape(name);
    }
    if (catalog_.table(name)) return *catalog_.shape(name);
    throw SemanticError("unknown relation '" + name + "'", span);
  }

  // `FROM r AS a`: definition a <- SELECT * FROM r.
  std::string alias_def(const std::string& relation, const std::string& alias, const RelationShape& shape,
                        SourceSpan span) {
    auto it = alias_sources_.find(alias);
    if (it != alias_sources_.end() && it->second == relation) return alias;
    std::string name = alias;
    if (out_.names.taken(name) || catalog_.has_relation(name)) name = out_.names.fresh();
    std::size_t slot = new_def(name, false);
    alias_sources_[name] = relation;
    Query body = select_star_where(relation, Cond::truth(), span);
    body.select.items.clear();
    for (std::size_t i = 0; i < shape.columns.size(); ++i) {
      sql::SelectItem item;
      item.expr = Expr::column_ref(relation, shape.columns[i], span);
      item.expr.column_index = static_cast<int>(i);
      item.expr.column_type = shape.types[i];
      item.span = span;
      body.select.items.push_back(std::move(item));
    }
    RelationShape def_shape{name, shape.columns, shape.types, false};
    set_def(slot, std::move(body), def_shape);
    return name;
  }

  // ---- queries ----------------------------------------------------------

  Resolved resolve_query(Query q) {
    int base = static_cast<int>(frames_.size());
    min_refs_.push_back(base);
    Resolved r;
    if (q.kind == Query::Kind::SetOp) {
      Resolved left = resolve_query(std::move(*q.left));
      Resolved right = resolve_query(std::move(*q.right));
      if (left.shape.columns.size() != right.shape.columns.size())
        throw SemanticError(std::string("operands of ") + sql::to_string(q.set_op) +
                                " have different numbers of columns",
                            q.span);
      r.shape = left.shape;
      for (std::size_t i = 0; i < r.shape.types.size(); ++i) {
        DType a = left.shape.types[i];
        DType b = right.shape.types[i];
        if (!compatible(a, b))
          throw SemanticError(std::string("operands of ") + sql::to_string(q.set_op) +
                                  " have incompatible column types",
                              q.span);
        if (b == DType::Float) r.shape.types[i] = DType::Float;
      }
      r.query = std::move(q);
      r.query.left = lift_inline(std::move(left));
      r.query.right = lift_inline(std::move(right));
    } else {
      r.query = std::move(q);
      r.shape = resolve_select(r.query.select);
    }
    int min_ref = min_refs_.back();
    min_refs_.pop_back();
    r.correlated = min_ref < base;
    if (!min_refs_.empty()) min_refs_.back() = std::min(min_refs_.back(), min_ref);
    return r;
  }

  RelationShape resolve_select(Select& s) {
    Frame frame;
    for (auto& f : s.from) frame.entries.push_back(resolve_from(f));
    frames_.push_back(std::move(frame));

    s.where = resolve_cond(std::move(s.where));
    if (s.where.kind == Cond::Kind::True && !s.has_where) s.where = Cond::truth();
    check_types(s.where);
    for (auto& g : s.group_by) {
      g = resolve_expr(std::move(g));
      if (g.kind != Expr::Kind::Column) throw UnsupportedError("GROUP BY supports column references only", g.span);
    }
    if (s.having) {
      s.having = resolve_cond(std::move(*s.having));
      check_types(*s.having);
    }

    RelationShape shape;
    std::vector<sql::SelectItem> items;
    int counter = 0;
    for (auto& item : s.items) {
      if (item.star) {
        bool matched = false;
        for (const auto& e : frames_.back().entries) {
          if (!item.star_qualifier.empty() && e.qualifier != item.star_qualifier) continue;
          matched = true;
          for (std::size_t i = 0; i < e.shape.columns.size(); ++i) {
            sql::SelectItem out;
            out.expr = Expr::column_ref(e.relation, e.shape.columns[i], item.span);
            out.expr.column_index = static_cast<int>(i);
            out.expr.column_type = e.shape.types[i];
            out.span = item.span;
            shape.columns.push_back(e.shape.columns[i]);
            shape.types.push_back(e.shape.types[i]);
            items.push_back(std::move(out));
            ++counter;
          }
        }
        if (!matched) throw SemanticError("unknown relation '" + item.star_qualifier + "'", item.span);
        continue;
      }
      ++counter;
      item.expr = resolve_expr(std::move(item.expr));
      DType t = type_of(item.expr);
      shape.columns.push_back(!item.alias.empty()                    ? item.alias
                              : item.expr.kind == Expr::Kind::Column ? item.expr.column
                                                                     : "col" + std::to_string(counter));
      shape.types.push_back(t);
      items.push_back(std::move(item));
    }
    s.items = std::move(items);
    frames_.pop_back();
    return shape;
  }

  Entry resolve_from(sql::FromItem& f) {
    Entry e;
    if (f.subquery) {
      auto saved_frames = std::move(frames_);
      auto saved_mins = std::move(min_refs_);
      frames_.clear();
      min_refs_.clear();
      Resolved r = resolve_query(std::move(*f.subquery));
      frames_ = std::move(saved_frames);
      min_refs_ = std::move(saved_mins);
      std::string name = f.alias;
      if (name.empty() || out_.names.taken(name) || catalog_.has_relation(name)) name = out_.names.fresh();
      std::size_t slot = new_def(name, false);
      RelationShape shape = r.shape;
      shape.name = name;
      finalize_def(slot, std::move(r));
      e.qualifier = f.alias.empty() ? name : f.alias;
      e.relation = name;
      e.shape = shape;
      f.subquery = Box<Query>();
      f.name = name;
      f.alias.clear();
      return e;
    }
    RelationShape shape = use_relation(f.name, f.span);
    e.qualifier = f.qualifier();
    if (!f.alias.empty() && f.alias != f.name) {
      e.relation = alias_def(f.name, f.alias, shape, f.span);
      f.name = e.relation;
      shape.name = e.relation;
    } else {
      e.relation = f.name;
    }
    f.alias.clear();
    e.shape = shape;
    return e;
  }

  // ---- expressions and conditions ---------------------------------------

  void note_ref(int depth) {
    for (auto& m : min_refs_) m = std::min(m, depth);
  }

  void resolve_column(Expr& e) {
    for (int d = static_cast<int>(frames_.size()) - 1; d >= 0; --d) {
      const Frame& frame = frames_[static_cast<std::size_t>(d)];
      std::vector<std::pair<const Entry*, int>> matches;
      bool qualifier_seen = false;
      for (const auto& entry : frame.entries) {
        if (!e.qualifier.empty() && entry.qualifier != e.qualifier && entry.relation != e.qualifier) continue;
        qualifier_seen = true;
        for (std::size_t i = 0; i < entry.shape.columns.size(); ++i)
          if (entry.shape.columns[i] == e.column) matches.emplace_back(&entry, static_cast<int>(i));
      }
      if (matches.size() > 1) throw SemanticError("ambiguous column '" + e.column + "'", e.span);
      if (matches.empty()) {
        if (qualifier_seen && !e.qualifier.empty())
          throw SemanticError("unknown column '" + e.qualifier + "." + e.column + "'", e.span);
        continue;
      }
      const auto& [entry, index] = matches.front();
      e.qualifier = entry->relation;
      e.column_index = index;
      e.column_type = entry->shape.types[static_cast<std::size_t>(index)];
      note_ref(d);
      return;
    }
    if (!e.qualifier.empty()) throw SemanticError("unknown relation '" + e.qualifier + "'", e.span);
    throw SemanticError("unknown column '" + e.column + "'", e.span);
  }

  Expr resolve_expr(Expr e) {
    switch (e.kind) {
      case Expr::Kind::Const: break;
      case Expr::Kind::Column: resolve_column(e); break;
      case Expr::Kind::Arith:
      case Expr::Kind::Neg:
        for (auto& a : e.args) a = resolve_expr(std::move(a));
        (void)infer_type(e);
        break;
      case Expr::Kind::Aggregate:
        for (auto& a : e.args) {
          if (contains_aggregate(a)) throw SemanticError("nested aggregate", a.span);
          a = resolve_expr(std::move(a));
        }
        (void)infer_type(e);
        break;
      case Expr::Kind::Subquery: {
        Resolved r = resolve_query(std::move(*e.subquery));
        if (r.shape.columns.size() != 1)
          throw SemanticError("scalar subquery must project exactly one column", e.span);
        e.subquery = lift_inline(std::move(r));
        break;
      }
    }
    return e;
  }

  static bool contains_aggregate(const Expr& e) {
    if (e.kind == Expr::Kind::Aggregate) return true;
    return std::any_of(e.args.begin(), e.args.end(), contains_aggregate);
  }

  Cond resolve_cond(Cond c) {
    for (auto& e : c.exprs) e = resolve_expr(std::move(e));
    for (auto& ch : c.children) ch = resolve_cond(std::move(ch));
    if (c.subquery) {
      Resolved r = resolve_query(std::move(*c.subquery));
      if (c.kind == Cond::Kind::In && r.shape.columns.size() != 1)
        throw SemanticError("IN subquery must project exactly one column", c.span);
      c.subquery = lift_inline(std::move(r));
    }
    return c;
  }

  const Catalog& catalog_;
  Preprocessed& out_;
  std::map<std::string, std::size_t> def_index_;
  std::map<std::string, std::string> alias_sources_;
  std::vector<Frame> frames_;
  std::vector<int> min_refs_;
};

}  // namespace

Preprocessed preprocess(const Query& query, const Catalog& catalog, const std::string& target) {
  Preprocessed out;
  out.names = NameSupply(catalog);
  Preprocessor(catalog, out).run(query, target);
  return out;
}

std::optional<Preprocessed> preprocess(const sql::Statement& stmt, const Catalog& catalog) {
  if (const auto* q = std::get_if<sql::QueryStatement>(&stmt)) return preprocess(q->query, catalog);
  if (const auto* v = std::get_if<sql::CreateView>(&stmt)) return preprocess(v->query, catalog);
  if (const auto* ins = std::get_if<sql::Insert>(&stmt)) return preprocess(ins->query, catalog);
  if (const auto* del = std::get_if<sql::Delete>(&stmt))
    return preprocess(select_star_where(del->table, del->where, del->span), catalog);
  return std::nullopt;
}

RelationShape infer_shape(const Query& query, const Catalog& catalog) {
  Preprocessed scratch;
  scratch.names = NameSupply(catalog);
  return Preprocessor(catalog, scratch).shape_only(query);
}

bool is_trivial_distinct(const Query& q, const Catalog& catalog, const Preprocessed* defs) {
  if (q.kind != Query::Kind::Select || q.select.from.size() != 1) return false;
  const std::string& name = q.select.from[0].name;
  std::size_t arity = 0;
  if (defs) {
    if (const auto* d = defs->find(name)) arity = d->columns.size();
  }
  if (arity == 0) {
    auto shape = catalog.shape(name);
    if (shape) arity = shape->columns.size();
  }
  return trivial_form(q, arity);
}

}  // namespace sqlclp
