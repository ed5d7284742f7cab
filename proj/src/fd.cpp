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

#include "sqlclp/fd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace sqlclp::solver {

FdExpr FdExpr::variable(int v) {
  FdExpr e;
  e.kind = Kind::Var;
  e.var = v;
  return e;
}

FdExpr FdExpr::constant(std::int64_t c) {
  FdExpr e;
  e.value = c;
  return e;
}

FdExpr FdExpr::binary(Kind k, FdExpr l, FdExpr r) {
  FdExpr e;
  e.kind = k;
  e.args.push_back(std::move(l));
  e.args.push_back(std::move(r));
  return e;
}

FdExpr FdExpr::negate(FdExpr inner) {
  FdExpr e;
  e.kind = Kind::Neg;
  e.args.push_back(std::move(inner));
  return e;
}

namespace {

using W = __int128;
constexpr W kInf = W{1} << 100;

W clamp(W x) { return x > kInf ? kInf : x < -kInf ? -kInf : x; }
bool infinite(W x) { return x >= kInf || x <= -kInf; }

W mul(W a, W b) {
  if (a == 0 || b == 0) return 0;
  W aa = a < 0 ? -a : a;
  W bb = b < 0 ? -b : b;
  bool neg = (a < 0) != (b < 0);
  if (aa > kInf / bb) return neg ? -kInf : kInf;
  return clamp(a * b);
}

W floor_div(W a, W b) {
  W q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

W ceil_div(W a, W b) {
  W q = a / b;
  if (a % b != 0 && ((a < 0) == (b < 0))) ++q;
  return q;
}

struct WI {
  W lo, hi;
  [[nodiscard]] bool empty() const { return lo > hi; }
  [[nodiscard]] bool has(W v) const { return lo <= v && v <= hi; }
};

WI meet(WI a, WI b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

WI hull(std::initializer_list<W> xs) {
  return {*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end())};
}

// Truncating quotient hull for a divisor interval not containing zero.
WI trunc_div(WI x, WI y) {
  auto q = [](W a, W b) { return infinite(a) ? ((a < 0) != (b < 0) ? -kInf : kInf) : a / b; };
  return hull({q(x.lo, y.lo), q(x.lo, y.hi), q(x.hi, y.lo), q(x.hi, y.hi)});
}

class Reviser {
 public:
  Reviser(std::vector<Interval>& dom, std::vector<int>& changed) : dom_(dom), changed_(changed) {}

  WI fwd(const FdExpr& e) const {
    switch (e.kind) {
      case FdExpr::Kind::Var: {
        const Interval& d = dom_[static_cast<std::size_t>(e.var)];
        return {d.lo, d.hi};
      }
      case FdExpr::Kind::Const: return {e.value, e.value};
      case FdExpr::Kind::Neg: {
        WI a = fwd(e.args[0]);
        return {-a.hi, -a.lo};
      }
      case FdExpr::Kind::Add: {
        WI a = fwd(e.args[0]), b = fwd(e.args[1]);
        return {clamp(a.lo + b.lo), clamp(a.hi + b.hi)};
      }
      case FdExpr::Kind::Sub: {
        WI a = fwd(e.args[0]), b = fwd(e.args[1]);
        return {clamp(a.lo - b.hi), clamp(a.hi - b.lo)};
      }
      case FdExpr::Kind::Mul: {
        WI a = fwd(e.args[0]), b = fwd(e.args[1]);
        if (is_square(e)) {
          W m = std::max(a.lo < 0 ? -a.lo : a.lo, a.hi < 0 ? -a.hi : a.hi);
          W lo = a.has(0) ? 0 : std::min(mul(a.lo, a.lo), mul(a.hi, a.hi));
          return {lo, mul(m, m)};
        }
        return hull({mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)});
      }
      case FdExpr::Kind::Div: {
        WI a = fwd(e.args[0]), b = fwd(e.args[1]);
        if (!b.has(0)) return trunc_div(a, b);
        if (b.lo == 0 && b.hi == 0) return {-kInf, kInf};
        W m = std::max(a.hi < 0 ? -a.hi : a.hi, a.lo < 0 ? -a.lo : a.lo);
        return {-m, m};
      }
    }
    return {-kInf, kInf};
  }

  // Narrows `e` so that its value lies in `t`. False on an empty domain.
  bool back(const FdExpr& e, WI t) {
    switch (e.kind) {
      case FdExpr::Kind::Var: {
        Interval& d = dom_[static_cast<std::size_t>(e.var)];
        WI n = meet({d.lo, d.hi}, t);
        if (n.empty()) return false;
        if (n.lo != d.lo || n.hi != d.hi) {
          d.lo = static_cast<std::int64_t>(n.lo);
          d.hi = static_cast<std::int64_t>(n.hi);
          changed_.push_back(e.var);
        }
        return true;
      }
      case FdExpr::Kind::Const: return t.has(e.value);
      case FdExpr::Kind::Neg: return back(e.args[0], {-t.hi, -t.lo});
      case FdExpr::Kind::Add: {
        const FdExpr& x = e.args[0];
        const FdExpr& y = e.args[1];
        WI yi = fwd(y);
        if (!back(x, {clamp(t.lo - yi.hi), clamp(t.hi - yi.lo)})) return false;
        WI xi = fwd(x);
        return back(y, {clamp(t.lo - xi.hi), clamp(t.hi - xi.lo)});
      }
      case FdExpr::Kind::Sub: {
        const FdExpr& x = e.args[0];
        const FdExpr& y = e.args[1];
        WI yi = fwd(y);
        if (!back(x, {clamp(t.lo + yi.lo), clamp(t.hi + yi.hi)})) return false;
        WI xi = fwd(x);
        return back(y, {clamp(xi.lo - t.hi), clamp(xi.hi - t.lo)});
      }
      case FdExpr::Kind::Mul: {
        if (infinite(t.lo) || infinite(t.hi)) return fwd_nonempty(e, t);
        const FdExpr& x = e.args[0];
        const FdExpr& y = e.args[1];
        if (is_square(e)) return back_square(x, t);
        if (!back(x, quotient(t, fwd(y), fwd(x)))) return false;
        return back(y, quotient(t, fwd(x), fwd(y)));
      }
      case FdExpr::Kind::Div: return fwd_nonempty(e, t);
    }
    return true;
  }

 private:
  static bool is_square(const FdExpr& e) {
    return e.args[0].kind == FdExpr::Kind::Var && e.args[1].kind == FdExpr::Kind::Var && e.args[0].var == e.args[1].var;
  }

  static W isqrt(W v) {
    if (v <= 0) return 0;
    W r = static_cast<W>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  }

  // x*x in t: |x| lies in [ceil sqrt t.lo, floor sqrt t.hi].
  bool back_square(const FdExpr& x, WI t) {
    if (t.hi < 0) return false;
    W hi = isqrt(t.hi);
    W lo = t.lo <= 0 ? 0 : isqrt(t.lo - 1) + 1;
    if (lo > hi) return false;
    WI d = fwd(x);
    bool neg = d.lo <= -lo;
    bool pos = d.hi >= lo;
    if (!neg && !pos) return false;
    // The hull of the two symmetric bands, cut by the current domain.
    WI band = {neg ? -hi : lo, pos ? hi : -lo};
    if (!back(x, band)) return false;
    d = fwd(x);
    if (lo > 0 && d.lo > -lo && d.lo < lo) return back(x, {lo, kInf});
    if (lo > 0 && d.hi < lo && d.hi > -lo) return back(x, {-kInf, -lo});
    return true;
  }

  bool fwd_nonempty(const FdExpr& e, WI t) const { return !meet(fwd(e), t).empty(); }

  // Values of x with x*y in t for some y in `y`; `current` when no pruning applies.
  static WI quotient(WI t, WI y, WI current) {
    if (y.has(0) || infinite(y.lo) || infinite(y.hi)) return current;
    W lo = std::min({ceil_div(t.lo, y.lo), ceil_div(t.lo, y.hi), ceil_div(t.hi, y.lo), ceil_div(t.hi, y.hi)});
    W hi = std::max({floor_div(t.lo, y.lo), floor_div(t.lo, y.hi), floor_div(t.hi, y.lo), floor_div(t.hi, y.hi)});
    return {lo, hi};
  }

  std::vector<Interval>& dom_;
  std::vector<int>& changed_;
};

void vars_in(const FdExpr& e, std::set<int>& out) {
  if (e.kind == FdExpr::Kind::Var) out.insert(e.var);
  for (const auto& a : e.args) vars_in(a, out);
}

}  // namespace

int FdStore::new_var(Interval dom) {
  dom_.push_back(dom);
  watch_.emplace_back();
  return static_cast<int>(dom_.size()) - 1;
}

std::optional<std::int64_t> FdStore::value(int v) const {
  const Interval& d = domain(v);
  if (d.singleton()) return d.lo;
  return std::nullopt;
}

bool FdStore::post(FdConstraint c) {
  hit_cap_ = false;
  if (failed_) return false;
  std::set<int> vs;
  vars_in(c.lhs, vs);
  vars_in(c.rhs, vs);
  std::size_t idx = cons_.size();
  cons_.push_back(std::move(c));
  for (int v : vs) watch_[static_cast<std::size_t>(v)].push_back(idx);
  return propagate({idx});
}

bool FdStore::revise(std::size_t ci, std::vector<int>& changed) {
  const FdConstraint& c = cons_[ci];
  Reviser rv(dom_, changed);
  WI l = rv.fwd(c.lhs);
  WI r = rv.fwd(c.rhs);
  switch (c.op) {
    case sql::CmpOp::Eq: {
      WI t = meet(l, r);
      if (t.empty()) return false;
      return rv.back(c.lhs, t) && rv.back(c.rhs, t);
    }
    case sql::CmpOp::Ne: {
      if (l.lo == l.hi && r.lo == r.hi) return l.lo != r.lo;
      if (r.lo == r.hi) {
        if (l.lo == r.lo) return rv.back(c.lhs, {l.lo + 1, l.hi});
        if (l.hi == r.lo) return rv.back(c.lhs, {l.lo, l.hi - 1});
      }
      if (l.lo == l.hi) {
        if (r.lo == l.lo) return rv.back(c.rhs, {r.lo + 1, r.hi});
        if (r.hi == l.lo) return rv.back(c.rhs, {r.lo, r.hi - 1});
      }
      return true;
    }
    case sql::CmpOp::Lt:
    case sql::CmpOp::Le:
    case sql::CmpOp::Gt:
    case sql::CmpOp::Ge: {
      // Normalize to small <= big - gap.
      bool less = c.op == sql::CmpOp::Lt || c.op == sql::CmpOp::Le;
      W gap = (c.op == sql::CmpOp::Lt || c.op == sql::CmpOp::Gt) ? 1 : 0;
      const FdExpr& small = less ? c.lhs : c.rhs;
      const FdExpr& big = less ? c.rhs : c.lhs;
      WI bi = rv.fwd(big);
      if (!rv.back(small, {-kInf, clamp(bi.hi - gap)})) return false;
      WI si = rv.fwd(small);
      return rv.back(big, {clamp(si.lo + gap), kInf});
    }
  }
  return true;
}

bool FdStore::propagate(std::vector<std::size_t> initial) {
  std::deque<std::size_t> queue(initial.begin(), initial.end());
  std::vector<bool> queued(cons_.size(), false);
  for (auto i : initial) queued[i] = true;
  int runs = 0;
  while (!queue.empty()) {
    if (runs >= cap_) {
      hit_cap_ = true;
      return true;
    }
    std::size_t ci = queue.front();
    queue.pop_front();
    queued[ci] = false;
    ++runs;
    ++*work_;
    std::vector<int> changed;
    if (!revise(ci, changed)) {
      failed_ = true;
      return false;
    }
    for (int v : changed)
      for (std::size_t other : watch_[static_cast<std::size_t>(v)])
        if (!queued[other]) {
          queued[other] = true;
          queue.push_back(other);
        }
  }
  return true;
}

}  // namespace sqlclp::solver
