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

#ifndef SQLCLP_PREPROCESS_HPP
#define SQLCLP_PREPROCESS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqlclp/ast.hpp"
#include "sqlclp/catalog.hpp"

namespace sqlclp {

/// Hands out `r1`, `r2`, ... skipping reserved names.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(const Catalog& catalog);

  std::string fresh();
  void reserve(const std::string& name) { used_.insert(name); }
  [[nodiscard]] bool taken(const std::string& name) const { return used_.count(name) != 0; }

 private:
  std::set<std::string> used_;
  int next_ = 1;
};

/// One `name <- query` definition. The query is fully resolved: every column
/// reference is qualified with the FROM relation that provides it and carries
/// its index and type; FROM lists name only base tables, views, or other
/// definitions; `*` is expanded; BETWEEN is gone.
struct RelationDef {
  std::string name;
  sql::Query query;
  std::vector<std::string> columns;
  std::vector<DType> types;
  bool from_view = false;
};

struct Preprocessed {
  std::vector<RelationDef> defs;  // defs[0] is the target
  NameSupply names;

  [[nodiscard]] const RelationDef* find(const std::string& name) const;
};

/// Rewrites a query into basic-form definitions. The target is called
/// `target` unless that collides with the catalog, in which case a fresh
/// name is used. Throws SemanticError on unknown or ambiguous names and on
/// type errors.
Preprocessed preprocess(const sql::Query& query, const Catalog& catalog, const std::string& target = "answer");

/// Definitions for the query part of a statement: the TopLevelQuery itself,
/// the query of INSERT and CREATE VIEW, and `SELECT * FROM t WHERE c` for
/// DELETE. nullopt for CREATE TABLE.
std::optional<Preprocessed> preprocess(const sql::Statement& stmt, const Catalog& catalog);

/// Output columns of a query (used for views).
RelationShape infer_shape(const sql::Query& query, const Catalog& catalog);

/// `SELECT DISTINCT * FROM r` (optionally with TOP), with or without the star
/// expanded: the shape produced by the DISTINCT split.
bool is_trivial_distinct(const sql::Query& q, const Catalog& catalog, const Preprocessed* defs = nullptr);

/// Builds the analysis query used for a CHECK or DELETE condition.
sql::Query select_star_where(const std::string& table, const sql::Cond& cond, SourceSpan span);

}  // namespace sqlclp

#endif  // SQLCLP_PREPROCESS_HPP
