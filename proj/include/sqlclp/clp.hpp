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

#ifndef SQLCLP_CLP_HPP
#define SQLCLP_CLP_HPP

#include <map>
#include <string>
#include <vector>

#include "sqlclp/catalog.hpp"
#include "sqlclp/datalog.hpp"

namespace sqlclp::clp {

/// ctr(lhs op rhs, type)
struct Ctr {
  sql::CmpOp op = sql::CmpOp::Eq;
  dl::DlExpr lhs, rhs;
  DType type = DType::Integer;
  SourceSpan span;
  bool from_check = false;
};

struct Goal {
  enum class Kind { Ctr, True, Call, Conj, Disj };
  Kind kind = Kind::True;
  Ctr ctr;
  dl::Atom call;
  std::vector<Goal> items;  // Conj: conjuncts; Disj: alternatives (each a Conj)

  static Goal truth() { return Goal{}; }
  static Goal constraint(Ctr c);
  static Goal conj(std::vector<Goal> items);
  static Goal disj(std::vector<Goal> alternatives);
  static Goal call_of(dl::Atom a);
};

struct Rule {
  dl::Atom head;
  Goal body;  // always a Conj
  std::map<int, DType> var_types;
};

struct Program {
  std::map<std::string, std::vector<Rule>> rules;
  std::string target;
  std::vector<DType> target_types;
  std::vector<std::string> order;  // predicates in Datalog rule order
  int next_var = 1;

  [[nodiscard]] const std::vector<Rule>* clauses(const std::string& pred) const;
};

/// Abstracts a Datalog program: base atoms become their table's CHECK
/// constraints, comparisons become typed constraints, negated goals become
/// true, and distinct/top wrappers are dropped. Throws SemanticError on a
/// variable used at clashing types.
Program dl_to_clp(const dl::Program& prog, const Catalog& catalog);

/// Instantiates the CHECK conditions of `table` over the given argument
/// terms, in declaration order.
Goal check_goal(const TableSchema& table, const std::vector<dl::Term>& args);

/// Type annotation of a comparison: string if any operand is a string,
/// float if any is a float, integer otherwise.
DType ctr_type(const dl::DlExpr& lhs, const dl::DlExpr& rhs, const std::map<int, DType>& var_types);

/// Every Ctr in the goal, depth first.
std::vector<const Ctr*> constraints(const Goal& g);

std::string to_string(const Ctr& c);
std::string to_string(const Goal& g);
std::string to_string(const Rule& r);
std::string to_string(const Program& p);

}  // namespace sqlclp::clp

#endif  // SQLCLP_CLP_HPP
