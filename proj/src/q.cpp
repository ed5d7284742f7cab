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

#include "sqlclp/q.hpp"

#include <algorithm>
#include <set>

namespace sqlclp::solver {

LinExpr LinExpr::var(int v) {
  LinExpr e;
  e.coef[v] = 1;
  return e;
}

LinExpr LinExpr::of(Rational c) {
  LinExpr e;
  e.constant = std::move(c);
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  for (const auto& [v, k] : o.coef) {
    Rational& slot = coef[v];
    slot += k;
    if (slot == 0) coef.erase(v);
  }
  constant += o.constant;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (const auto& [v, k] : o.coef) {
    Rational& slot = coef[v];
    slot -= k;
    if (slot == 0) coef.erase(v);
  }
  constant -= o.constant;
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& k) {
  if (k == 0) {
    coef.clear();
    constant = 0;
    return *this;
  }
  for (auto& [_, c] : coef) c *= k;
  constant *= k;
  return *this;
}

void LinExpr::substitute(int v, const LinExpr& e) {
  auto it = coef.find(v);
  if (it == coef.end()) return;
  Rational k = it->second;
  coef.erase(it);
  *this += e * k;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(LinExpr a, const Rational& k) { return a *= k; }

namespace {

// Any total order works for keys; numeric comparison of rationals is slow.
struct CoefLess {
  bool operator()(const std::map<int, Rational>& a, const std::map<int, Rational>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      auto xn = numerator(x.second), yn = numerator(y.second);
      if (xn != yn) return xn < yn;
      return denominator(x.second) < denominator(y.second);
    });
  }
};

template <typename T>
using ByDirection = std::map<std::map<int, Rational>, T, CoefLess>;

// Scales so the lowest-numbered variable has coefficient +1 or -1.
Inequality normalized(Inequality in) {
  if (in.expr.coef.empty()) return in;
  Rational lead = abs(in.expr.coef.begin()->second);
  if (lead != 1) in.expr *= Rational(1) / lead;
  return in;
}

bool violated(const Inequality& in) {
  const Rational& c = in.expr.constant;
  return in.strict ? c <= 0 : c < 0;
}

// Keeps the tightest inequality per direction. False on a constant violation.
bool tighten(std::vector<Inequality>& sys) {
  ByDirection<Inequality> best;
  std::vector<std::map<int, Rational>> order;
  for (auto& raw : sys) {
    Inequality in = normalized(std::move(raw));
    if (in.expr.coef.empty()) {
      if (violated(in)) return false;
      continue;
    }
    auto it = best.find(in.expr.coef);
    if (it == best.end()) {
      order.push_back(in.expr.coef);
      best.emplace(in.expr.coef, std::move(in));
      continue;
    }
    Inequality& cur = it->second;
    if (in.expr.constant < cur.expr.constant ||
        (in.expr.constant == cur.expr.constant && in.strict && !cur.strict))
      cur = std::move(in);
  }
  sys.clear();
  for (const auto& key : order) sys.push_back(std::move(best.at(key)));
  return true;
}

}  // namespace

std::optional<bool> fm_feasible(std::vector<Inequality> sys, std::size_t cap, std::optional<int> project,
                                Bounds* bounds, std::size_t* work) {
  while (true) {
    if (work) *work += sys.size();
    if (!tighten(sys)) return false;
    std::map<int, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& in : sys)
      for (const auto& [v, k] : in.expr.coef) {
        if (project && v == *project) continue;
        auto& c = counts[v];
        (k > 0 ? c.first : c.second)++;
      }
    if (counts.empty()) break;
    int pick = counts.begin()->first;
    std::size_t best = SIZE_MAX;
    for (const auto& [v, c] : counts) {
      std::size_t cost = c.first * c.second;
      if (cost < best) {
        best = cost;
        pick = v;
      }
    }
    std::vector<Inequality> pos, neg, next;
    for (auto& in : sys) {
      auto it = in.expr.coef.find(pick);
      if (it == in.expr.coef.end()) next.push_back(std::move(in));
      else if (it->second > 0) pos.push_back(std::move(in));
      else neg.push_back(std::move(in));
    }
    if (next.size() + pos.size() * neg.size() > cap) return std::nullopt;
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Rational a = p.expr.coef.at(pick);
        Rational b = -n.expr.coef.at(pick);
        Inequality c;
        c.expr = p.expr * b + n.expr * a;
        c.expr.coef.erase(pick);
        c.strict = p.strict || n.strict;
        next.push_back(std::move(c));
      }
    sys = std::move(next);
  }
  if (!project) return true;
  Bounds b;
  for (const auto& in : sys) {
    auto it = in.expr.coef.find(*project);
    if (it == in.expr.coef.end()) continue;
    Rational bound = -in.expr.constant / it->second;
    if (it->second > 0) {
      if (!b.lo || bound > *b.lo || (bound == *b.lo && in.strict)) {
        b.lo_strict = in.strict || (b.lo && bound == *b.lo && b.lo_strict);
        b.lo = bound;
      }
    } else {
      if (!b.hi || bound < *b.hi || (bound == *b.hi && in.strict)) {
        b.hi_strict = in.strict || (b.hi && bound == *b.hi && b.hi_strict);
        b.hi = bound;
      }
    }
  }
  if (b.lo && b.hi && (*b.lo > *b.hi || (*b.lo == *b.hi && (b.lo_strict || b.hi_strict)))) return false;
  if (bounds) *bounds = b;
  return true;
}

int QStore::new_var() { return next_++; }

LinExpr QStore::resolve(int v) const {
  auto it = solved_.find(v);
  return it == solved_.end() ? LinExpr::var(v) : it->second;
}

std::optional<Rational> QStore::value(int v) const {
  LinExpr e = resolve(v);
  if (e.is_constant()) return e.constant;
  return std::nullopt;
}

LinExpr QStore::reduce(LinExpr e) const {
  std::vector<int> vs;
  for (const auto& [v, _] : e.coef)
    if (solved_.count(v)) vs.push_back(v);
  for (int v : vs) e.substitute(v, solved_.at(v));
  return e;
}

bool QStore::absorb_equality(LinExpr e) {
  e = reduce(std::move(e));
  if (e.is_constant()) return e.constant == 0;
  auto [v, a] = *e.coef.begin();
  e.coef.erase(v);
  LinExpr rhs = e * (Rational(-1) / a);
  for (auto& [_, other] : solved_) other.substitute(v, rhs);
  for (auto& in : ineqs_) in.expr.substitute(v, rhs);
  for (auto& d : diseqs_) d.substitute(v, rhs);
  solved_[v] = std::move(rhs);
  return true;
}

bool QStore::settle() {
  while (true) {
    if (!tighten(ineqs_)) return false;
    for (auto it = diseqs_.begin(); it != diseqs_.end();) {
      if (it->is_constant()) {
        if (it->constant == 0) return false;
        it = diseqs_.erase(it);
      } else {
        ++it;
      }
    }
    // Opposite non-strict pairs e >= 0, -e >= 0 are equalities.
    std::optional<LinExpr> implied;
    ByDirection<const Inequality*> by_dir;
    for (const auto& in : ineqs_) by_dir[in.expr.coef] = &in;
    for (const auto& in : ineqs_) {
      if (in.strict) continue;
      std::map<int, Rational> flipped;
      for (const auto& [v, k] : in.expr.coef) flipped[v] = -k;
      auto it = by_dir.find(flipped);
      if (it != by_dir.end() && !it->second->strict && it->second->expr.constant == -in.expr.constant) {
        implied = in.expr;
        break;
      }
    }
    if (implied) {
      if (!absorb_equality(*implied)) return false;
      continue;
    }
    auto feasible = fm_feasible(ineqs_, cap_, {}, nullptr, work_.get());
    if (!feasible) {
      hit_cap_ = true;
      return true;
    }
    if (!*feasible) return false;
    // A variable squeezed to a single attained value is ground.
    // Elimination never flips a sign, so a variable needs coefficients of
    // both signs to be bounded on both sides.
    std::map<int, int> signs;
    for (const auto& in : ineqs_)
      for (const auto& [v, k] : in.expr.coef) signs[v] |= k > 0 ? 1 : 2;
    bool grounded = false;
    for (const auto& [v, sign] : signs) {
      if (sign != 3) continue;
      Bounds b;
      auto ok = fm_feasible(ineqs_, cap_, v, &b, work_.get());
      if (!ok) {
        hit_cap_ = true;
        continue;
      }
      if (!*ok) return false;
      if (b.lo && b.hi && *b.lo == *b.hi && !b.lo_strict && !b.hi_strict) {
        if (!absorb_equality(LinExpr::var(v) - LinExpr::of(*b.lo))) return false;
        grounded = true;
        break;
      }
    }
    if (!grounded) return true;
  }
}

bool QStore::post_eq(LinExpr e) {
  if (failed_) return false;
  if (!absorb_equality(std::move(e)) || !settle()) failed_ = true;
  return !failed_;
}

bool QStore::post_ineq(LinExpr e, bool strict) {
  if (failed_) return false;
  ineqs_.push_back({reduce(std::move(e)), strict});
  if (!settle()) failed_ = true;
  return !failed_;
}

bool QStore::post_ne(LinExpr e) {
  if (failed_) return false;
  diseqs_.push_back(reduce(std::move(e)));
  if (!settle()) failed_ = true;
  return !failed_;
}

}  // namespace sqlclp::solver
