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

#include "generators.hpp"

#include <algorithm>
#include <set>

#include "sqlclp/parser.hpp"

namespace sqlclp::testing {

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& one_of(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(xs.size()) - 1))];
}

bool numeric(DType t) { return t != DType::String; }

std::string literal(Rng& rng, DType t) {
  switch (t) {
    case DType::Integer: return std::to_string(pick(rng, -1, 5));
    case DType::Float: return chance(rng, 0.3) ? one_of(rng, std::vector<std::string>{"0.5", "1.5", "2.5", "3.5"})
                                               : std::to_string(pick(rng, -1, 5));
    case DType::String: return one_of(rng, std::vector<std::string>{"'a'", "'b'", "'a'", "'b'", "'c'"});
  }
  return "0";
}

const char* type_name(DType t) {
  switch (t) {
    case DType::Integer: return "INT";
    case DType::Float: return "FLOAT";
    case DType::String: return "VARCHAR(5)";
  }
  return "INT";
}

std::string cmp_op(Rng& rng) { return one_of(rng, std::vector<std::string>{"=", "<>", "<", "<=", ">", ">="}); }

struct Col {
  std::string ref;  // qualified reference
  DType type;
};

class QueryGen {
 public:
  QueryGen(Rng& rng, const Catalog& catalog) : rng_(rng), catalog_(catalog) {
    for (const auto& [name, t] : catalog.tables()) tables_.push_back(&t);
  }

  std::string query() {
    if (chance(rng_, 0.15)) {
      DType t = random_type();
      std::string op = one_of(rng_, std::vector<std::string>{"UNION", "UNION ALL", "EXCEPT", "INTERSECT"});
      return select(0, {}, t) + " " + op + " " + select(0, {}, t);
    }
    return select(0, {}, std::nullopt);
  }

 private:
  DType random_type() {
    std::vector<DType> ts;
    for (const auto* t : tables_)
      for (const auto& c : t->columns) ts.push_back(c.dtype);
    return one_of(rng_, ts);
  }

  // A FROM entry with the columns it exposes.
  std::pair<std::string, std::vector<Col>> from_item(int depth) {
    std::string alias = "a" + std::to_string(next_alias_++);
    std::vector<Col> cols;
    if (depth < 1 && chance(rng_, 0.08)) {
      std::vector<Col> inner_cols;
      std::string inner = select(depth + 1, {}, std::nullopt, &inner_cols, true);
      for (std::size_t i = 0; i < inner_cols.size(); ++i)
        cols.push_back({alias + ".x" + std::to_string(i), inner_cols[i].type});
      return {"(" + inner + ") " + alias, cols};
    }
    const TableSchema* t = one_of(rng_, tables_);
    for (const auto& c : t->columns) cols.push_back({alias + "." + c.name, c.dtype});
    return {t->name + " " + alias, cols};
  }

  // `item_types` receives the projected types; `named` aliases them x0, x1...
  std::string select(int depth, const std::vector<Col>& outer, std::optional<DType> single,
                     std::vector<Col>* item_types = nullptr, bool named = false) {
    int n_from = chance(rng_, 0.35) ? 2 : 1;
    std::vector<std::string> from;
    std::vector<Col> local;
    for (int i = 0; i < n_from; ++i) {
      auto [text, cols] = from_item(depth);
      from.push_back(text);
      local.insert(local.end(), cols.begin(), cols.end());
    }
    std::string items;
    std::vector<Col> projected;
    if (single) {
      std::vector<Col> fit;
      for (const auto& c : local)
        if (c.type == *single || (numeric(c.type) && numeric(*single))) fit.push_back(c);
      Col c = fit.empty() ? Col{literal(rng_, *single), *single} : one_of(rng_, fit);
      projected.push_back(c);
    } else if (!named && chance(rng_, 0.2)) {
      items = "*";
      projected = local;
    } else {
      int k = pick(rng_, 1, 3);
      for (int i = 0; i < k; ++i) {
        Col c = one_of(rng_, local);
        if (numeric(c.type) && chance(rng_, 0.15))
          c = Col{c.ref + " + " + std::to_string(pick(rng_, 0, 2)), c.type};
        else if (chance(rng_, 0.05))
          c = Col{literal(rng_, c.type), c.type};
        projected.push_back(c);
      }
    }
    if (items.empty()) {
      for (std::size_t i = 0; i < projected.size(); ++i) {
        if (i) items += ", ";
        items += projected[i].ref;
        if (named) items += " AS x" + std::to_string(i);
      }
    }
    if (item_types) *item_types = projected;
    std::string out = "SELECT ";
    if (chance(rng_, 0.2)) out += "DISTINCT ";
    out += items + " FROM ";
    for (std::size_t i = 0; i < from.size(); ++i) out += (i ? ", " : "") + from[i];
    std::vector<Col> scope = local;
    scope.insert(scope.end(), outer.begin(), outer.end());
    if (chance(rng_, 0.85)) out += " WHERE " + cond(depth, scope, local, 0);
    return out;
  }

  std::string atom_cmp(const std::vector<Col>& scope) {
    Col a = one_of(rng_, scope);
    int r = pick(rng_, 0, 9);
    if (r < 5) return a.ref + " " + cmp_op(rng_) + " " + literal(rng_, a.type);
    if (r < 8) {
      std::vector<Col> fit;
      for (const auto& c : scope)
        if (c.ref != a.ref && numeric(c.type) == numeric(a.type)) fit.push_back(c);
      if (fit.empty()) return a.ref + " " + cmp_op(rng_) + " " + literal(rng_, a.type);
      return a.ref + " " + cmp_op(rng_) + " " + one_of(rng_, fit).ref;
    }
    std::vector<Col> nums;
    for (const auto& c : scope)
      if (numeric(c.type)) nums.push_back(c);
    if (nums.empty()) return a.ref + " " + cmp_op(rng_) + " " + literal(rng_, a.type);
    Col x = one_of(rng_, nums);
    Col y = one_of(rng_, nums);
    std::string op = one_of(rng_, std::vector<std::string>{"+", "-", "*"});
    return x.ref + " " + op + " " + y.ref + " " + cmp_op(rng_) + " " + literal(rng_, DType::Integer);
  }

  std::string cond(int depth, const std::vector<Col>& scope, const std::vector<Col>& local, int nesting) {
    int r = pick(rng_, 0, 99);
    bool can_nest = nesting < 2;
    bool can_sub = depth < 2;
    if (can_nest && r < 22) return cond(depth, scope, local, nesting + 1) + " AND " + cond(depth, scope, local, nesting + 1);
    if (can_nest && r < 32) return "(" + cond(depth, scope, local, nesting + 1) + " OR " + cond(depth, scope, local, nesting + 1) + ")";
    if (can_nest && r < 36) return "NOT (" + cond(depth, scope, local, nesting + 1) + ")";
    if (can_sub && r < 44) {
      Col a = one_of(rng_, local);
      std::string neg = chance(rng_, 0.25) ? " NOT" : "";
      return a.ref + neg + " IN (" + select(depth + 1, scope, a.type) + ")";
    }
    if (can_sub && r < 51) {
      std::string neg = chance(rng_, 0.25) ? "NOT " : "";
      return neg + "EXISTS (" + select(depth + 1, scope, std::nullopt) + ")";
    }
    if (can_sub && r < 55) {
      Col a = one_of(rng_, local);
      return a.ref + " " + cmp_op(rng_) + " (" + select(depth + 1, scope, a.type) + ")";
    }
    if (r < 59) {
      Col a = one_of(rng_, scope);
      if (numeric(a.type)) {
        return a.ref + " BETWEEN " + literal(rng_, DType::Integer) + " AND " + literal(rng_, DType::Integer);
      }
    }
    if (r < 63) {
      std::vector<Col> strs;
      for (const auto& c : scope)
        if (c.type == DType::String) strs.push_back(c);
      if (!strs.empty()) {
        std::string pat = one_of(rng_, std::vector<std::string>{"'a'", "'a%'", "'%'", "'_'", "'b'"});
        return one_of(rng_, strs).ref + (chance(rng_, 0.3) ? " NOT LIKE " : " LIKE ") + pat;
      }
    }
    return atom_cmp(scope);
  }

  Rng& rng_;
  const Catalog& catalog_;
  std::vector<const TableSchema*> tables_;
  int next_alias_ = 1;
};

std::string check_for(Rng& rng, const std::string& col, DType t) {
  auto lit = [&] { return literal(rng, t == DType::Float ? DType::Float : DType::Integer); };
  switch (pick(rng, 0, 5)) {
    case 0: return col + " >= " + lit();
    case 1: return col + " <= " + lit();
    case 2: return col + " BETWEEN " + lit() + " AND " + lit();
    case 3: return col + " > " + lit() + " OR " + col + " < " + lit();
    case 4: return col + " <> " + lit();
    default: return col + " < " + lit();
  }
}

}  // namespace

std::vector<Value> domain_of(DType t) {
  std::vector<Value> out;
  switch (t) {
    case DType::Integer:
      for (int i = 0; i <= 4; ++i) out.push_back(Value::integer(i));
      break;
    case DType::Float:
      for (int i = 0; i <= 8; ++i) out.push_back(Value(Rational(i, 2)));
      break;
    case DType::String:
      out.emplace_back(std::string("a"));
      out.emplace_back(std::string("b"));
      break;
  }
  return out;
}

std::string random_schema(Rng& rng) {
  int n = pick(rng, 1, 3);
  std::string out;
  std::optional<DType> key_type;
  for (int i = 0; i < n; ++i) {
    int m = pick(rng, 1, 3);
    std::vector<std::string> cols;
    std::vector<std::pair<std::string, DType>> numeric_cols;
    for (int j = 0; j < m; ++j) {
      int r = pick(rng, 0, 99);
      DType t = r < 60 ? DType::Integer : r < 75 ? DType::Float : DType::String;
      std::string name = "c" + std::to_string(j);
      std::string def = name + " " + type_name(t);
      if (j == 0 && chance(rng, 0.5)) {
        def += " PRIMARY KEY";
        if (i == 0) key_type = t;
      } else if (i > 0 && key_type && t == *key_type && chance(rng, 0.3)) {
        def += " REFERENCES t0";
      }
      if (chance(rng, 0.1)) def += " NOT NULL";
      if (numeric(t) && chance(rng, 0.4)) def += " CHECK (" + check_for(rng, name, t) + ")";
      if (t == DType::String && chance(rng, 0.1)) def += " CHECK (" + name + " <> 'a')";
      if (numeric(t)) numeric_cols.emplace_back(name, t);
      cols.push_back(def);
    }
    if (numeric_cols.size() >= 2 && chance(rng, 0.25)) {
      const auto& a = numeric_cols[0].first;
      const auto& b = numeric_cols[1].first;
      cols.push_back(chance(rng, 0.5) ? "CHECK (" + a + " + " + b + " <= " + std::to_string(pick(rng, 2, 6)) + ")"
                                      : "CHECK (" + a + " < " + b + ")");
    }
    out += "CREATE TABLE t" + std::to_string(i) + "(";
    for (std::size_t j = 0; j < cols.size(); ++j) out += (j ? ", " : "") + cols[j];
    out += ");\n";
  }
  return out;
}

std::string random_query(Rng& rng, const Catalog& catalog) { return QueryGen(rng, catalog).query(); }

Scenario make_scenario(Rng& rng) {
  Scenario s;
  s.ddl = random_schema(rng);
  s.ddl_statements = sql::parse_script(s.ddl);
  for (const auto& st : s.ddl_statements) s.catalog = s.catalog.apply_ddl(st);
  s.query = random_query(rng, s.catalog);
  return s;
}

std::vector<Row> admissible_rows(const TableSchema& t, const SqlOracle& checker, std::optional<std::size_t> skip) {
  std::vector<Row> rows{{}};
  for (const auto& c : t.columns) {
    std::vector<Row> next;
    for (const auto& r : rows)
      for (const auto& v : domain_of(c.dtype)) {
        Row x = r;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    rows = std::move(next);
  }
  std::vector<Row> out;
  for (const auto& r : rows) {
    bool ok = true;
    for (std::size_t i = 0; i < t.checks.size() && ok; ++i) {
      if (skip && *skip == i) continue;
      auto v = checker.eval_row_condition(t.name, r, t.checks[i]);
      ok = !v || *v;
    }
    if (ok) out.push_back(r);
  }
  return out;
}

Instance random_instance(Rng& rng, const Catalog& catalog, const SqlOracle& checker, std::size_t max_rows) {
  Instance inst;
  for (const auto& [name, t] : catalog.tables()) {
    std::vector<Row> pool = admissible_rows(t, checker);
    std::vector<Row>& rows = inst[name];
    std::size_t n = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(max_rows)));
    for (std::size_t attempt = 0; attempt < 10 * n && rows.size() < n && !pool.empty(); ++attempt) {
      Row r = one_of(rng, pool);
      bool ok = true;
      if (!t.primary_key.empty()) {
        for (const auto& other : rows) {
          bool same = std::all_of(t.primary_key.begin(), t.primary_key.end(),
                                  [&](int c) { return other[static_cast<std::size_t>(c)] == r[static_cast<std::size_t>(c)]; });
          if (same) ok = false;
        }
      }
      for (const auto& fk : t.foreign_keys) {
        auto target = inst.find(fk.target);
        if (target == inst.end()) {
          ok = false;
          continue;
        }
        bool found = std::any_of(target->second.begin(), target->second.end(), [&](const Row& tr) {
          for (std::size_t k = 0; k < fk.columns.size(); ++k)
            if (!(tr[static_cast<std::size_t>(fk.target_columns[k])] == r[static_cast<std::size_t>(fk.columns[k])]))
              return false;
          return true;
        });
        if (!found) ok = false;
      }
      if (ok) rows.push_back(std::move(r));
    }
  }
  return inst;
}

}  // namespace sqlclp::testing
