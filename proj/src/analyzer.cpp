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

#include "sqlclp/analyzer.hpp"

#include <algorithm>

#include "sqlclp/printer.hpp"
#include "sqlclp/store.hpp"

namespace sqlclp {

Pipeline run_pipeline(const Preprocessed& defs, const Catalog& catalog, const solver::SolverOptions& opts) {
  Pipeline p;
  p.datalog = dl::sqls_to_dl(defs, catalog);
  p.simplified = dl::simplify(p.datalog);
  p.clp = clp::dl_to_clp(p.simplified, catalog);
  p.result = solver::solve_target(p.clp, opts, &p.head_vars);
  return p;
}

namespace {

std::string render(const Value& v) { return v.is_string() ? sql::quote_string(v.string()) : v.to_string(); }

const clp::Rule* single_target_rule(const clp::Program& prog) {
  const auto* rules = prog.clauses(prog.target);
  return rules && rules->size() == 1 ? &rules->front() : nullptr;
}

}  // namespace

std::vector<Diagnostic> constraint_checks(const clp::Program& prog, const solver::SolveResult& res,
                                          const std::vector<int>& head_vars, const ConstraintContext& ctx) {
  std::vector<Diagnostic> out;
  if (!res.success) {
    SourceSpan at = ctx.statement;
    if (res.failing_span && (!ctx.statement.valid() || ctx.statement.contains(*res.failing_span)))
      at = *res.failing_span;
    out.push_back(warning("W001", "inconsistent condition", at));
    return out;
  }
  if (res.incomplete) return out;

  std::vector<SourceSpan> simplifiable;
  for (const clp::Ctr* c : res.grounded) {
    if (c->from_check || !c->span.valid()) continue;
    bool in_where = std::any_of(ctx.where_spans.begin(), ctx.where_spans.end(),
                                [&](const SourceSpan& w) { return w.contains(c->span); });
    if (in_where) simplifiable.push_back(c->span);
  }
  std::sort(simplifiable.begin(), simplifiable.end(), span_less);

  bool constant_column = false;
  if (ctx.projection_checks && ctx.outputs.size() == head_vars.size()) {
    auto ground = [&](std::size_t i) -> std::optional<Value> {
      auto it = res.substitution.find(head_vars[i]);
      if (it == res.substitution.end()) return std::nullopt;
      return it->second;
    };
    for (std::size_t i = 0; i < head_vars.size(); ++i) {
      if (ctx.outputs[i].literal) continue;
      auto v = ground(i);
      if (!v) continue;
      std::string msg = "constant output column " + ctx.outputs[i].name + " = " + render(*v);
      if (!simplifiable.empty()) msg += "; condition simplifiable";
      out.push_back(warning("W003", msg, ctx.outputs[i].span));
      constant_column = true;
    }
    const clp::Rule* rule = single_target_rule(prog);
    for (std::size_t j = 1; j < head_vars.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        bool same_var = false;
        if (rule && j < rule->head.args.size()) {
          const auto& a = rule->head.args[i];
          const auto& b = rule->head.args[j];
          same_var = a.is_var() && b.is_var() && a.var == b.var;
        }
        auto vi = ground(i);
        auto vj = ground(j);
        bool same_value = vi && vj && *vi == *vj && !(ctx.outputs[i].literal && ctx.outputs[j].literal);
        if (!same_var && !same_value) continue;
        out.push_back(warning(
            "W004", "duplicated column values in " + ctx.outputs[i].name + " and " + ctx.outputs[j].name,
            ctx.outputs[j].span));
        break;
      }
    }
  }
  if (!constant_column && !simplifiable.empty())
    out.push_back(warning("W008", "simplifiable condition", simplifiable.front()));
  return out;
}

namespace {

struct FromEntry {
  std::string name;
  std::string qualifier;
  SourceSpan span;
};

class StatementFacts : public sql::Visitor {
 public:
  std::vector<FromEntry> from;
  std::vector<const sql::Select*> selects;
  std::vector<SourceSpan> where_spans;

  void on_select(const sql::Select& s) override {
    selects.push_back(&s);
    for (const auto& f : s.from)
      if (!f.subquery) from.push_back({f.name, f.qualifier(), f.span});
    if (s.has_where) where_spans.push_back(s.where.span);
  }
};

bool literal_expr(const sql::Expr& e) {
  if (e.kind == sql::Expr::Kind::Const) return true;
  if (e.kind == sql::Expr::Kind::Neg || e.kind == sql::Expr::Kind::Arith)
    return std::all_of(e.args.begin(), e.args.end(), literal_expr);
  return false;
}

std::vector<OutputColumn> outputs_of(const Preprocessed& pre, const Catalog& catalog, SourceSpan fallback) {
  const RelationDef& target = pre.defs[0];
  std::vector<OutputColumn> out;
  for (const auto& c : target.columns) out.push_back({c, fallback, false});
  const RelationDef* cur = &target;
  for (std::size_t guard = 0; guard < pre.defs.size() && is_trivial_distinct(cur->query, catalog, &pre); ++guard) {
    const RelationDef* next = pre.find(cur->query.select.from[0].name);
    if (!next) break;
    cur = next;
  }
  const sql::Query& q = cur->query;
  if (q.kind != sql::Query::Kind::Select) {
    for (auto& o : out) o.span = q.span.valid() ? q.span : fallback;
    return out;
  }
  const auto& items = q.select.items;
  for (std::size_t i = 0; i < out.size() && i < items.size(); ++i) {
    if (items[i].span.valid()) out[i].span = items[i].span;
    out[i].literal = !items[i].star && literal_expr(items[i].expr);
  }
  return out;
}

class Analyzer {
 public:
  Analyzer(const sql::Statement& stmt, const Catalog& catalog, const AnalyzerOptions& opts)
      : stmt_(stmt), catalog_(catalog), opts_(opts), span_(sql::span_of(stmt)) {
    sql::walk(stmt, facts_);
  }

  Analysis run() {
    append(syntactic_checks(stmt_));
    if (const auto* ct = std::get_if<sql::CreateTable>(&stmt_)) {
      table_checks(*ct);
    } else {
      query_checks();
    }
    normalize(out_.diagnostics);
    return std::move(out_);
  }

 private:
  void append(std::vector<Diagnostic> ds) {
    for (auto& d : ds) out_.diagnostics.push_back(std::move(d));
  }

  void keep(const Pipeline& p) {
    if (!opts_.keep_programs) return;
    out_.datalog.push_back(p.datalog);
    out_.simplified.push_back(p.simplified);
    out_.clp.push_back(p.clp);
  }

  // Failure of the pipeline for `q`; nullopt when the query is outside the
  // analyzable fragment.
  std::optional<bool> fails(const sql::Query& q, const Catalog& catalog) {
    try {
      Preprocessed pre = preprocess(q, catalog);
      Pipeline p = run_pipeline(pre, catalog, opts_.solver);
      return !p.result.success;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  void table_checks(const sql::CreateTable& ct) {
    const TableSchema* t = catalog_.table(ct.name);
    if (!t) return;
    for (std::size_t i = 0; i < t->checks.size(); ++i) {
      const sql::Cond& check = t->checks[i];
      SourceSpan at = check.span.valid() ? check.span : span_;
      Catalog without = catalog_.without_check(ct.name, i);
      std::optional<Pipeline> p;
      try {
        Preprocessed pre = preprocess(select_star_where(ct.name, check, at), without);
        p = run_pipeline(pre, without, opts_.solver);
      } catch (const Error&) {
        continue;
      }
      keep(*p);
      if (!p->result.success) {
        SourceSpan f = p->result.failing_span && span_.contains(*p->result.failing_span) ? *p->result.failing_span : at;
        out_.diagnostics.push_back(warning("W001", "inconsistent condition", f));
        continue;
      }
      if (check.kind == sql::Cond::Kind::True) continue;
      auto comp = solver::complement(check);
      if (!comp) continue;
      if (fails(select_star_where(ct.name, *comp, at), without).value_or(false))
        out_.diagnostics.push_back(warning("W008", "implied or tautological condition", at));
    }
  }

  void query_checks() {
    append(metadata_checks(stmt_, catalog_));
    std::optional<Preprocessed> pre;
    try {
      pre = preprocess(stmt_, catalog_);
    } catch (const SemanticError& e) {
      out_.diagnostics.push_back(error("semantic", e.what(), e.span().valid() ? e.span() : span_));
      return;
    } catch (const UnsupportedError&) {
      return;
    }
    if (!pre) return;
    std::optional<Pipeline> p;
    try {
      p = run_pipeline(*pre, catalog_, opts_.solver);
    } catch (const SemanticError& e) {
      out_.diagnostics.push_back(error("semantic", e.what(), e.span().valid() ? e.span() : span_));
      return;
    } catch (const Error&) {
      return;  // aggregates, or beyond the solver limits
    }
    keep(*p);
    RelationLocator locate = [this](const std::string& rel, int occurrence) {
      const FromEntry* first = nullptr;
      int seen = 0;
      for (const auto& f : facts_.from) {
        if (f.name != rel) continue;
        if (!first) first = &f;
        if (seen++ == occurrence) return std::make_pair(f.qualifier, f.span);
      }
      if (first) return std::make_pair(first->qualifier, first->span);
      return std::make_pair(rel, span_);
    };
    append(join_checks(p->simplified, catalog_, span_, locate));

    ConstraintContext ctx;
    ctx.statement = span_;
    ctx.outputs = outputs_of(*pre, catalog_, span_);
    ctx.where_spans = facts_.where_spans;
    if (const auto* d = std::get_if<sql::Delete>(&stmt_)) {
      ctx.projection_checks = false;
      if (d->has_where) ctx.where_spans.push_back(d->where.span);
    }
    auto cs = constraint_checks(p->clp, p->result, p->head_vars, ctx);
    bool inconsistent = std::any_of(cs.begin(), cs.end(), [](const Diagnostic& d) { return d.code == "W001"; });
    append(std::move(cs));
    if (!inconsistent) tautologies();
  }

  void tautologies() {
    for (const sql::Select* s : facts_.selects) {
      if (!s->has_where || s->where.kind == sql::Cond::Kind::True) continue;
      auto comp = solver::complement(s->where);
      if (!comp) continue;
      sql::Query q;
      q.kind = sql::Query::Kind::Select;
      sql::SelectItem star;
      star.star = true;
      star.span = s->span;
      q.select.items.push_back(std::move(star));
      q.select.from = s->from;
      q.select.where = std::move(*comp);
      q.select.has_where = true;
      q.select.span = s->span;
      q.span = s->span;
      if (fails(q, catalog_).value_or(false)) tautology(s->where.span);
    }
    if (const auto* d = std::get_if<sql::Delete>(&stmt_)) {
      if (!d->has_where || d->where.kind == sql::Cond::Kind::True) return;
      auto comp = solver::complement(d->where);
      if (comp && fails(select_star_where(d->table, *comp, d->span), catalog_).value_or(false))
        tautology(d->where.span);
    }
  }

  // A tautology subsumes the simplifiable parts of the same condition.
  void tautology(SourceSpan where) {
    auto& ds = out_.diagnostics;
    ds.erase(std::remove_if(ds.begin(), ds.end(),
                            [&](const Diagnostic& d) {
                              return d.code == "W008" && d.message == "simplifiable condition" &&
                                     where.contains(d.span);
                            }),
             ds.end());
    ds.push_back(warning("W008", "implied or tautological condition", where));
  }

  const sql::Statement& stmt_;
  const Catalog& catalog_;
  const AnalyzerOptions& opts_;
  SourceSpan span_;
  StatementFacts facts_;
  Analysis out_;
};

}  // namespace

Analysis analyze_statement(const sql::Statement& stmt, const Catalog& catalog, const AnalyzerOptions& opts) {
  return Analyzer(stmt, catalog, opts).run();
}

}  // namespace sqlclp
