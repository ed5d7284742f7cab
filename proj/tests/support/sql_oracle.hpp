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

#ifndef SQLCLP_TESTS_SQL_ORACLE_HPP
#define SQLCLP_TESTS_SQL_ORACLE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqlclp/ast.hpp"
#include "sqlclp/catalog.hpp"

namespace sqlclp::testing {

using Row = std::vector<Value>;

/// Table contents keyed by table name; rows follow the declared column order.
using Instance = std::map<std::string, std::vector<Row>>;

/// Thrown for runtime errors of the evaluated statement (a scalar subquery
/// with several rows, division by zero) and for constructs the reference
/// evaluator does not model.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<DType> types;
  std::vector<Row> rows;
};

/// Direct SQL semantics over the parsed, unresolved tree: bag semantics,
/// three-valued logic for conditions, and the standard set operators.
class SqlOracle {
 public:
  SqlOracle(const Catalog& catalog, Instance instance) : catalog_(catalog), instance_(std::move(instance)) {}

  Table eval(const sql::Query& q) const;

  /// Truth value of a CHECK-style condition over a single row of `table`;
  /// nullopt stands for unknown.
  std::optional<bool> eval_row_condition(const std::string& table, const Row& row, const sql::Cond& c) const;

  /// Truth of `c` for a given assignment to the FROM entries of `s`.
  std::optional<bool> eval_where(const sql::Select& s, const std::vector<Row>& rows) const;

 private:
  struct Binding {
    std::string qualifier;
    std::string relation;
    const std::vector<std::string>* columns;
    const std::vector<DType>* types;
    const Row* row;
  };
  using Frame = std::vector<Binding>;
  using Scope = std::vector<Frame>;

  struct Typed {
    Value v;
    DType t = DType::Integer;
  };

  Table eval(const sql::Query& q, const Scope& scope) const;
  Table eval_select(const sql::Select& s, const Scope& scope) const;
  Table relation(const sql::FromItem& f, const Scope& scope) const;
  Typed expr(const sql::Expr& e, const Scope& scope) const;
  std::optional<bool> cond(const sql::Cond& c, const Scope& scope) const;
  Typed column(const sql::Expr& e, const Scope& scope) const;

  const Catalog& catalog_;
  Instance instance_;
};

/// Rows compared as multisets.
bool same_bag(std::vector<Row> a, std::vector<Row> b);

std::string to_string(const Row& r);

}  // namespace sqlclp::testing

#endif  // SQLCLP_TESTS_SQL_ORACLE_HPP
