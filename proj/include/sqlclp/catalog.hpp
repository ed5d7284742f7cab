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

#ifndef SQLCLP_CATALOG_HPP
#define SQLCLP_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqlclp/ast.hpp"

namespace sqlclp {

struct ColumnDef {
  std::string name;
  std::string sql_type;
  DType dtype = DType::Integer;
  bool not_null = false;
  bool is_pk = false;
  std::optional<sql::ForeignKeyRef> fk;  // single-column reference, target resolved
};

struct ForeignKey {
  std::vector<int> columns;
  std::string target;
  std::vector<int> target_columns;
};

struct TableSchema {
  std::string name;
  std::vector<ColumnDef> columns;
  // Column- and table-level CHECKs, BETWEEN-expanded, with every column
  // reference qualified by the table name and resolved.
  std::vector<sql::Cond> checks;
  std::vector<int> primary_key;
  std::vector<ForeignKey> foreign_keys;
  SourceSpan span;

  [[nodiscard]] std::optional<int> column_index(const std::string& column) const;
};

struct ViewSchema {
  std::string name;
  sql::Query query;
  std::vector<std::string> column_names;
  std::vector<DType> column_types;
  SourceSpan span;
};

/// Column names and types of a table or a view.
struct RelationShape {
  std::string name;
  std::vector<std::string> columns;
  std::vector<DType> types;
  bool is_view = false;
};

/// Immutable schema snapshot. Updates return new versions.
class Catalog {
 public:
  /// Applies CREATE TABLE / CREATE VIEW; other statements return *this.
  /// Throws SemanticError on duplicate names, dangling or ill-typed foreign
  /// keys, and CHECK conditions that mention foreign columns.
  [[nodiscard]] Catalog apply_ddl(const sql::Statement& stmt) const;

  /// Same catalog with CHECK number `index` of `table` removed.
  [[nodiscard]] Catalog without_check(const std::string& table, std::size_t index) const;

  [[nodiscard]] const TableSchema* table(const std::string& name) const;
  [[nodiscard]] const ViewSchema* view(const std::string& name) const;
  [[nodiscard]] bool has_relation(const std::string& name) const;
  [[nodiscard]] std::optional<RelationShape> shape(const std::string& name) const;

  [[nodiscard]] const std::map<std::string, TableSchema>& tables() const { return tables_; }
  [[nodiscard]] const std::map<std::string, ViewSchema>& views() const { return views_; }

 private:
  Catalog add_table(const sql::CreateTable& ct) const;
  Catalog add_view(const sql::CreateView& cv) const;

  std::map<std::string, TableSchema> tables_;
  std::map<std::string, ViewSchema> views_;
};

/// Type of a resolved expression (column references carry their types).
/// integer op integer is integer, any float operand makes it float.
/// Throws SemanticError on arithmetic over strings. An expression made only
/// of NULL literals is reported as nullopt.
std::optional<DType> infer_type(const sql::Expr& e);
DType type_of(const sql::Expr& e);

/// Checks that both sides of every comparison in `c` have compatible types
/// (integer and float widen). NULL operands are exempt.
void check_types(const sql::Cond& c);

bool compatible(DType a, DType b);

}  // namespace sqlclp

#endif  // SQLCLP_CATALOG_HPP
