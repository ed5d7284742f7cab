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

#ifndef SQLCLP_Q_HPP
#define SQLCLP_Q_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sqlclp/common.hpp"

namespace sqlclp::solver {

/// sum(coef[v] * v) + constant
struct LinExpr {
  std::map<int, Rational> coef;
  Rational constant;

  static LinExpr var(int v);
  static LinExpr of(Rational c);
  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rational& k);
  [[nodiscard]] bool is_constant() const { return coef.empty(); }
  /// Replaces `v` by `e`.
  void substitute(int v, const LinExpr& e);
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(LinExpr a, const Rational& k);

/// e > 0 (strict) or e >= 0.
struct Inequality {
  LinExpr expr;
  bool strict = false;
};

/// Lower and upper bounds of a variable implied by an inequality system.
struct Bounds {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
};

/// Exact linear arithmetic over the rationals. Equalities are kept in solved
/// form; inequality feasibility is decided by Fourier-Motzkin elimination.
class QStore {
 public:
  int new_var();

  bool post_eq(LinExpr e);                // e = 0
  bool post_ineq(LinExpr e, bool strict); // e > 0 or e >= 0
  bool post_ne(LinExpr e);                // e <> 0

  [[nodiscard]] bool failed() const { return failed_; }
  [[nodiscard]] std::optional<Rational> value(int v) const;
  /// Solved-form right-hand side of `v`, or `v` itself when it is a parameter.
  [[nodiscard]] LinExpr resolve(int v) const;
  [[nodiscard]] const std::map<int, LinExpr>& solved() const { return solved_; }
  [[nodiscard]] const std::vector<Inequality>& inequalities() const { return ineqs_; }
  [[nodiscard]] int num_vars() const { return next_; }

  void set_fm_cap(std::size_t cap) { cap_ = cap; }
  /// True when some elimination was abandoned at the cap.
  [[nodiscard]] bool hit_cap() const { return hit_cap_; }
  /// Inequalities produced by elimination so far, counted in `counter`,
  /// which copies of this store keep sharing.
  void share_work(std::shared_ptr<std::size_t> counter) { work_ = std::move(counter); }
  [[nodiscard]] std::size_t work() const { return *work_; }

 private:
  LinExpr reduce(LinExpr e) const;
  bool absorb_equality(LinExpr e);
  bool settle();

  std::map<int, LinExpr> solved_;
  std::vector<Inequality> ineqs_;
  std::vector<LinExpr> diseqs_;
  int next_ = 0;
  bool failed_ = false;
  bool hit_cap_ = false;
  std::size_t cap_ = 50000;
  std::shared_ptr<std::size_t> work_ = std::make_shared<std::size_t>(0);
};

/// Fourier-Motzkin feasibility of `system`. When `project` is set, all other
/// variables are eliminated and the remaining bounds on it are stored in
/// `bounds`. Returns nullopt when the intermediate system outgrows `cap`.
std::optional<bool> fm_feasible(std::vector<Inequality> system, std::size_t cap, std::optional<int> project = {},
                                Bounds* bounds = nullptr, std::size_t* work = nullptr);

}  // namespace sqlclp::solver

#endif  // SQLCLP_Q_HPP
