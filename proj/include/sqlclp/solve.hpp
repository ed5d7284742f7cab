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

#ifndef SQLCLP_SOLVE_HPP
#define SQLCLP_SOLVE_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sqlclp/clp.hpp"
#include "sqlclp/store.hpp"

namespace sqlclp::solver {

struct SolveResult {
  bool success = false;
  /// Groundings shared by every successful derivation.
  std::map<int, Value> substitution;
  /// Store of the first successful derivation.
  std::optional<Store> store;
  /// Constraint whose posting failed first, in exploration order.
  std::optional<SourceSpan> failing_span;
  /// Program constraints (outside CHECKs) whose every instance is ground in
  /// every successful derivation. Constants substituted by simplification
  /// make some of them ground as written.
  std::set<const clp::Ctr*> grounded;
  /// Exploration stopped at the derivation cap or the work budget; success is
  /// then assumed and no groundings are reported.
  bool incomplete = false;
  std::size_t derivations = 0;
};

/// Meta-interprets `goal` against `prog` starting from `store`. Calls are
/// resolved against clauses renamed apart, conjunctions run left to right,
/// and disjunctions and multi-clause predicates are explored on copies of the
/// store.
SolveResult solve(const clp::Goal& goal, const clp::Program& prog, Store store, const SolverOptions& opts = {});

/// Solves target(V1..Vn) with fresh variables; `args` receives them.
SolveResult solve_target(const clp::Program& prog, const SolverOptions& opts, std::vector<int>* args = nullptr);

}  // namespace sqlclp::solver

#endif  // SQLCLP_SOLVE_HPP
