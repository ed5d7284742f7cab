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

#ifndef SQLCLP_FD_HPP
#define SQLCLP_FD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sqlclp/ast.hpp"

namespace sqlclp::solver {

inline constexpr std::int64_t kFdMin = -(std::int64_t{1} << 31);
inline constexpr std::int64_t kFdMax = (std::int64_t{1} << 31) - 1;

struct Interval {
  std::int64_t lo = kFdMin;
  std::int64_t hi = kFdMax;

  [[nodiscard]] bool singleton() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct FdExpr {
  enum class Kind { Var, Const, Add, Sub, Mul, Div, Neg };
  Kind kind = Kind::Const;
  int var = 0;
  std::int64_t value = 0;
  std::vector<FdExpr> args;

  static FdExpr variable(int v);
  static FdExpr constant(std::int64_t c);
  static FdExpr binary(Kind k, FdExpr l, FdExpr r);
  static FdExpr negate(FdExpr e);
};

struct FdConstraint {
  sql::CmpOp op = sql::CmpOp::Eq;
  FdExpr lhs, rhs;
};

/// Integer interval store with bounds-consistency propagation. Division
/// truncates toward zero.
class FdStore {
 public:
  int new_var(Interval dom = {});

  /// Adds the constraint and propagates. Returns false when some domain
  /// becomes empty; the store is then failed.
  bool post(FdConstraint c);

  [[nodiscard]] bool failed() const { return failed_; }
  [[nodiscard]] const Interval& domain(int v) const { return dom_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] std::optional<std::int64_t> value(int v) const;
  [[nodiscard]] int num_vars() const { return static_cast<int>(dom_.size()); }
  [[nodiscard]] std::size_t num_constraints() const { return cons_.size(); }

  void set_propagation_cap(int cap) { cap_ = cap; }
  /// True when the last post stopped at the propagation cap.
  [[nodiscard]] bool hit_cap() const { return hit_cap_; }
  /// Constraint revisions so far, counted in `counter`, which copies of this
  /// store keep sharing.
  void share_work(std::shared_ptr<std::size_t> counter) { work_ = std::move(counter); }
  [[nodiscard]] std::size_t work() const { return *work_; }

 private:
  bool propagate(std::vector<std::size_t> queue);
  bool revise(std::size_t c, std::vector<int>& changed);

  std::vector<Interval> dom_;
  std::vector<FdConstraint> cons_;
  std::vector<std::vector<std::size_t>> watch_;
  bool failed_ = false;
  bool hit_cap_ = false;
  int cap_ = 10000;
  std::shared_ptr<std::size_t> work_ = std::make_shared<std::size_t>(0);
};

}  // namespace sqlclp::solver

#endif  // SQLCLP_FD_HPP
