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

#ifndef SQLCLP_TESTS_DL_EVAL_HPP
#define SQLCLP_TESTS_DL_EVAL_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sql_oracle.hpp"
#include "sqlclp/datalog.hpp"

namespace sqlclp::testing {

/// Top-down bag evaluation of a translated program over an instance.
/// Atoms multiply, `distinct` removes duplicates, `not` tests absence and a
/// disjunction keeps a binding when one of its alternatives has a solution.
class DlEvaluator {
 public:
  DlEvaluator(const dl::Program& prog, const Instance& instance);

  std::vector<Row> eval_target() const;
  std::vector<Row> eval(const std::string& pred, const std::vector<std::optional<Value>>& bound) const;

 private:
  using Env = std::map<int, Value>;
  using Sink = std::function<void(const Env&)>;

  void solve(const dl::Rule& rule, std::vector<const dl::Goal*> goals, Env env, const Sink& sink) const;
  bool ground(const dl::DlExpr& e, const Env& env) const;
  Value value(const dl::DlExpr& e, const Env& env, const dl::Rule& rule) const;
  DType type(const dl::DlExpr& e, const dl::Rule& rule) const;
  std::vector<Row> call(const dl::Atom& a, const Env& env) const;
  void bind_atom(const dl::Rule& rule, const dl::Atom& a, const std::vector<Row>& rows,
                 std::vector<const dl::Goal*> rest, const Env& env, const Sink& sink) const;

  const dl::Program& prog_;
  const Instance& instance_;
  std::map<const dl::Goal*, std::set<int>> outer_vars_;
};

}  // namespace sqlclp::testing

#endif  // SQLCLP_TESTS_DL_EVAL_HPP
