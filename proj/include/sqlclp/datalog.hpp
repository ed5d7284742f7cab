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

#ifndef SQLCLP_DATALOG_HPP
#define SQLCLP_DATALOG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sqlclp/ast.hpp"
#include "sqlclp/catalog.hpp"
#include "sqlclp/preprocess.hpp"

namespace sqlclp::dl {

struct Term {
  enum class Kind { Var, Const };
  Kind kind = Kind::Var;
  int var = 0;
  Value value;
  DType dtype = DType::Integer;

  static Term variable(int id) { return Term{Kind::Var, id, {}, DType::Integer}; }
  static Term constant(Value v, DType t) { return Term{Kind::Const, 0, std::move(v), t}; }
  [[nodiscard]] bool is_var() const { return kind == Kind::Var; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    return a.is_var() ? a.var == b.var : a.value == b.value;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);
};

struct DlExpr {
  enum class Kind { Term, Arith, Neg };
  Kind kind = Kind::Term;
  Term term;
  sql::ArithOp op = sql::ArithOp::Add;
  std::vector<DlExpr> args;

  static DlExpr of(Term t) {
    DlExpr e;
    e.term = std::move(t);
    return e;
  }
  static DlExpr arith(sql::ArithOp op, DlExpr l, DlExpr r);
  static DlExpr neg(DlExpr e);
  [[nodiscard]] bool is_term() const { return kind == Kind::Term; }
};

struct Atom {
  std::string pred;
  std::vector<Term> args;
  friend bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }
};

struct Goal {
  enum class Kind { Atom, Not, Distinct, Top, Disj, Cmp, True };
  Kind kind = Kind::True;
  Atom atom;                                   // Atom, Not, Distinct, Top
  std::int64_t top = 0;                        // Top
  std::vector<std::vector<Goal>> alternatives; // Disj
  sql::CmpOp op = sql::CmpOp::Eq;              // Cmp
  DlExpr lhs, rhs;
  SourceSpan span;         // originating SQL condition
  bool from_check = false; // comparison instantiated from a CHECK

  static Goal truth() { return Goal{}; }
  static Goal of(Kind k, Atom a) {
    Goal g;
    g.kind = k;
    g.atom = std::move(a);
    return g;
  }
  static Goal cmp(sql::CmpOp op, DlExpr l, DlExpr r, SourceSpan span = {});
  static Goal disj(std::vector<std::vector<Goal>> alts);
};

struct Rule {
  Atom head;
  std::vector<Goal> body;
  std::map<int, DType> var_types;
};

struct PredInfo {
  bool is_base = false;
  int arity = 0;
  std::vector<DType> types;
  std::vector<std::string> names;
  int num_params = 0;       // leading head positions bound by the caller
  std::string origin;       // "table", "view", "definition", "fresh"
  SourceSpan span;
};

struct Program {
  std::vector<Rule> rules;
  std::map<std::string, PredInfo> preds;
  std::string target;
  int next_var = 1;

  [[nodiscard]] std::vector<const Rule*> rules_for(const std::string& pred) const;
  [[nodiscard]] std::size_t count_rules(const std::string& pred) const;
  [[nodiscard]] bool is_base(const std::string& pred) const;
  int fresh_var() { return next_var++; }
};

// ---- helpers --------------------------------------------------------------

void collect_vars(const DlExpr& e, std::vector<int>& out);
void collect_vars(const Goal& g, std::vector<int>& out);
std::set<int> vars_of(const Rule& r);
bool is_ground(const DlExpr& e);

/// Rule-safety: every head variable outside the parameter prefix occurs in
/// a positive body atom or is linked to one by an equality chain.
bool is_safe(const Rule& r, int num_params);

// ---- translation ------------------------------------------------------------

/// Translates preprocessed definitions into Datalog. Throws UnsupportedError
/// for aggregates and GROUP BY/HAVING.
Program sqls_to_dl(const Preprocessed& defs, const Catalog& catalog);

/// Removes true goals, applies variable bindings, and unfolds calls to
/// single-clause derived predicates. Unreachable derived predicates are
/// dropped.
Program simplify(const Program& prog);

// ---- printing ---------------------------------------------------------------

std::string to_string(const Term& t);
std::string to_string(const DlExpr& e);
std::string to_string(const Atom& a);
std::string to_string(const Goal& g);
std::string to_string(const Rule& r);
/// Rules in program order, one per line, `head :- g1, g2.`
std::string to_string(const Program& p);

/// Rendering invariant under consistent renaming of variables and of
/// non-base predicates: both are numbered by first occurrence, walking rules
/// from the target outwards. Used to compare programs up to renaming.
std::string canonical(const Program& p);

}  // namespace sqlclp::dl

#endif  // SQLCLP_DATALOG_HPP
