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

#ifndef SQLCLP_TESTS_GENERATORS_HPP
#define SQLCLP_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "sql_oracle.hpp"
#include "sqlclp/catalog.hpp"

namespace sqlclp::testing {

using Rng = std::mt19937_64;

/// Values used for instances and exhaustive assignments.
std::vector<Value> domain_of(DType t);

struct Scenario {
  std::string ddl;  // CREATE TABLE statements, one per line
  std::string query;
  std::vector<sql::Statement> ddl_statements;
  Catalog catalog;
};

/// 1 to 3 tables with integer, float and string columns, optional keys,
/// CHECK constraints and a foreign key to the first table.
std::string random_schema(Rng& rng);

/// A SELECT (occasionally a set operation) over the catalog, built from
/// comparisons, arithmetic, AND/OR/NOT, IN, EXISTS, scalar subqueries in
/// conditions, BETWEEN, LIKE, DISTINCT and derived tables.
std::string random_query(Rng& rng, const Catalog& catalog);

/// Parses the schema text and applies it; the query text is left unparsed.
Scenario make_scenario(Rng& rng);

/// Rows respect primary keys, CHECK constraints and the foreign keys.
Instance random_instance(Rng& rng, const Catalog& catalog, const SqlOracle& checker, std::size_t max_rows = 3);

/// Every row over the value domain that satisfies the table's CHECKs
/// (excluding CHECK number `skip` when given).
std::vector<Row> admissible_rows(const TableSchema& t, const SqlOracle& checker, std::optional<std::size_t> skip = {});

}  // namespace sqlclp::testing

#endif  // SQLCLP_TESTS_GENERATORS_HPP
