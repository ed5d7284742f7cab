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

#ifndef SQLCLP_STORE_HPP
#define SQLCLP_STORE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqlclp/clp.hpp"
#include "sqlclp/fd.hpp"
#include "sqlclp/h.hpp"
#include "sqlclp/q.hpp"

namespace sqlclp::solver {

struct SolverOptions {
  int max_fd_props = 10000;
  std::size_t max_fm_ineqs = 50000;
  std::size_t max_derivations = 4096;
  /// FD revisions plus FM inequalities over a whole solve.
  std::size_t max_work = 2000000;
  int max_depth = 512;
};

enum class Domain { Fd, Q };

/// Link between a program variable and its copy inside one solver.
struct Bridge {
  Domain domain = Domain::Fd;
  int hvar = 0;
  int dvar = 0;
};

/// FD, Q and H stores plus the bridges between program variables and their
/// solver-local copies. Integer constraints go to FD and Q, float ones to Q,
/// string ones to H.
class Store {
 public:
  explicit Store(SolverOptions opts = {});

  void declare(int hvar, DType type);
  [[nodiscard]] DType type_of(int hvar) const;

  /// Posts the constraint and runs bridge propagation. False on failure.
  bool post(const clp::Ctr& ctr);

  [[nodiscard]] bool failed() const { return failed_; }
  /// Solver work so far, shared by all copies of this store.
  [[nodiscard]] std::size_t work() const { return fd_.work(); }
  /// Program variables known to hold a single value.
  [[nodiscard]] const std::map<int, Value>& groundings() const { return ground_; }
  [[nodiscard]] std::optional<Value> value(int hvar) const;

  [[nodiscard]] const std::vector<Bridge>& bridges() const { return bridges_; }
  [[nodiscard]] const FdStore& fd() const { return fd_; }
  [[nodiscard]] const QStore& q() const { return q_; }
  [[nodiscard]] const HStore& h() const { return h_; }

  /// Spans of constraints that a solver could not express and dropped.
  [[nodiscard]] const std::vector<SourceSpan>& dropped() const { return dropped_; }

  /// Solver-local copy of `hvar`, creating the bridge on first use.
  int copy_of(int hvar, Domain d);
  /// Propagates groundings across bridges to a fixpoint. False on conflict.
  bool propagate_bridges();

 private:
  bool post_h(const clp::Ctr& ctr);
  bool post_fd(const clp::Ctr& ctr);
  bool post_q(const clp::Ctr& ctr);
  bool ground(int hvar, const Value& v);
  bool fail();

  SolverOptions opts_;
  std::map<int, DType> types_;
  std::map<std::pair<int, Domain>, int> bridge_index_;
  std::vector<Bridge> bridges_;
  std::map<int, Value> ground_;
  std::vector<int> string_vars_;
  FdStore fd_;
  QStore q_;
  HStore h_;
  std::vector<SourceSpan> dropped_;
  bool failed_ = false;
};

/// Complement of a condition in negation normal form, or nullopt when the
/// condition has subqueries, LIKE or IS NULL.
std::optional<sql::Cond> complement(const sql::Cond& c);

}  // namespace sqlclp::solver

#endif  // SQLCLP_STORE_HPP
