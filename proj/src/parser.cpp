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

#include "sqlclp/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace sqlclp::sql {

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifiers lower-cased; symbols verbatim
  SourceSpan span;
};

constexpr std::array kReserved = {
    "select", "from",   "where",   "and",   "or",        "not",    "in",     "exists",
    "between", "like",  "is",      "null",  "true",      "false",  "union",  "except",
    "intersect", "all", "distinct", "top",  "as",        "group",  "by",     "having",
    "create", "table",  "view",    "insert", "into",     "delete", "check",  "primary",
    "key",    "references", "foreign", "values", "on",   "order",
};

bool is_reserved(const std::string& word) {
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.span.start_line = line_;
      t.span.start_col = col_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::End;
        t.span.end_line = line_;
        t.span.end_col = col_;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.kind = Tok::Ident;
        t.text = lower(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ < text_.size() && text_[pos_] == '.') {
          advance();
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
          std::size_t save = pos_;
          int save_col = col_;
          advance();
          if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
          if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
          } else {
            pos_ = save;
            col_ = save_col;
          }
        }
        t.kind = Tok::Number;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '\'') {
        advance();
        std::string value;
        bool closed = false;
        while (pos_ < text_.size()) {
          if (text_[pos_] == '\'') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
              value.push_back('\'');
              advance();
              advance();
              continue;
            }
            advance();
            closed = true;
            break;
          }
          value.push_back(text_[pos_]);
          advance();
        }
        if (!closed) {
          t.span.end_line = line_;
          t.span.end_col = col_;
          throw SyntaxError("unterminated string literal", t.span);
        }
        t.kind = Tok::String;
        t.text = std::move(value);
      } else {
        static const std::array<std::string_view, 4> two = {"<>", ">=", "<=", "!="};
        t.kind = Tok::Symbol;
        std::string_view rest = text_.substr(pos_);
        bool matched = false;
        for (auto op : two) {
          if (rest.substr(0, 2) == op) {
            t.text = op == "!=" ? "<>" : std::string(op);
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view("(),;.*+-/<>=").find(c) == std::string_view::npos) {
            t.span.end_line = line_;
            t.span.end_col = col_;
            throw SyntaxError(std::string("unexpected character '") + c + "'", t.span);
          }
          t.text = std::string(1, c);
          advance();
        }
      }
      t.span.end_line = last_line_;
      t.span.end_col = last_col_;
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    last_line_ = line_;
    last_col_ = col_;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        advance();
        advance();
        while (pos_ < text_.size() && !(text_[pos_] == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/'))
          advance();
        if (pos_ < text_.size()) {
          advance();
          advance();
        }
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int last_line_ = 1;
  int last_col_ = 1;
};

Rational parse_decimal(const std::string& text) {
  std::string mantissa = text;
  long exponent = 0;
  auto epos = mantissa.find_first_of("eE");
  if (epos != std::string::npos) {
    exponent = std::stol(mantissa.substr(epos + 1));
    mantissa = mantissa.substr(0, epos);
  }
  auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa.empty()) mantissa = "0";
  BigInt digits(mantissa);
  BigInt scale = 1;
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
  if (exponent >= 0) return Rational(digits * scale);
  return Rational(digits, scale);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool at_end() const { return peek().kind == Tok::End; }

  Statement statement() {
    Statement s = statement_body();
    if (!accept_symbol(";") && !at_end()) fail({";"});
    return s;
  }

  void recover() {
    while (!at_end()) {
      if (peek().kind == Tok::Symbol && peek().text == ";") {
        ++pos_;
        return;
      }
      ++pos_;
    }
  }

  Query full_query() {
    Query q = query();
    accept_symbol(";");
    if (!at_end()) fail({"end of input"});
    return q;
  }

  Cond full_condition() {
    Cond c = condition();
    if (!at_end()) fail({"end of input"});
    return c;
  }

  Expr full_expression() {
    Expr e = expression();
    if (!at_end()) fail({"end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool is_kw(const char* kw, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == kw;
  }
  bool is_symbol(const char* s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Symbol && t.text == s;
  }
  bool accept_kw(const char* kw) {
    if (!is_kw(kw)) return false;
    ++pos_;
    return true;
  }
  bool accept_symbol(const char* s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect_kw(const char* kw) {
    if (!accept_kw(kw)) {
      std::string up = kw;
      for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      fail({up});
    }
  }
  void expect_symbol(const char* s) {
    if (!accept_symbol(s)) fail({std::string(s)});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input"
                        : t.kind == Tok::String ? "'" + t.text + "'"
                                                : t.text;
    std::string msg = "syntax error at '" + found + "', expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw SyntaxError(msg, t.span, std::move(expected));
  }

  std::string identifier() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_reserved(t.text)) fail({"identifier"});
    return take().text;
  }

  bool at_plain_identifier() const {
    return peek().kind == Tok::Ident && !is_reserved(peek().text);
  }

  // ---- statements -------------------------------------------------------

  Statement statement_body() {
    SourceSpan start = peek().span;
    if (accept_kw("create")) {
      if (accept_kw("table")) return create_table(start);
      if (accept_kw("view")) {
        CreateView v;
        v.name = identifier();
        expect_kw("as");
        v.query = query();
        v.span = merge(start, prev().span);
        return v;
      }
      fail({"TABLE", "VIEW"});
    }
    if (accept_kw("insert")) {
      expect_kw("into");
      Insert ins;
      ins.table = identifier();
      if (!is_kw("select") && !is_symbol("(")) fail({"SELECT", "("});
      ins.query = query();
      ins.span = merge(start, prev().span);
      return ins;
    }
    if (accept_kw("delete")) {
      expect_kw("from");
      Delete del;
      del.table = identifier();
      if (accept_kw("where")) {
        del.where = condition();
        del.has_where = true;
      } else {
        del.where = Cond::truth();
      }
      del.span = merge(start, prev().span);
      return del;
    }
    if (is_kw("select") || is_symbol("(")) {
      QueryStatement qs;
      qs.query = query();
      qs.span = merge(start, prev().span);
      return qs;
    }
    fail({"SELECT", "CREATE", "INSERT", "DELETE"});
  }

  Statement create_table(SourceSpan start) {
    CreateTable t;
    t.name = identifier();
    expect_symbol("(");
    do {
      SourceSpan el_start = peek().span;
      if (accept_kw("check")) {
        t.checks.push_back(condition());
      } else if (accept_kw("primary")) {
        expect_kw("key");
        if (!t.primary_key.empty())
          throw SyntaxError("duplicate PRIMARY KEY clause", merge(el_start, prev().span));
        t.primary_key = column_list();
      } else if (accept_kw("foreign")) {
        expect_kw("key");
        TableForeignKey fk;
        fk.columns = column_list();
        expect_kw("references");
        fk.target.table = identifier();
        if (is_symbol("(")) fk.target_columns = column_list();
        fk.span = merge(el_start, prev().span);
        t.foreign_keys.push_back(std::move(fk));
      } else {
        t.columns.push_back(column_spec());
      }
    } while (accept_symbol(","));
    expect_symbol(")");
    t.span = merge(start, prev().span);
    return t;
  }

  std::vector<std::string> column_list() {
    std::vector<std::string> out;
    expect_symbol("(");
    do {
      out.push_back(identifier());
    } while (accept_symbol(","));
    expect_symbol(")");
    return out;
  }

  ColumnSpec column_spec() {
    ColumnSpec c;
    SourceSpan start = peek().span;
    c.name = identifier();
    const Token& type_tok = peek();
    if (type_tok.kind != Tok::Ident) fail({"type name"});
    std::string type = take().text;
    if (type == "double" && is_kw("precision")) {
      take();
      type = "double precision";
    }
    std::string upper = type;
    for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    auto dtype = dtype_for_type_name(upper);
    if (!dtype) throw SyntaxError("unknown type name '" + upper + "'", type_tok.span, {"type name"});
    c.dtype = *dtype;
    c.type_name = upper;
    if (accept_symbol("(")) {
      c.type_name += "(" + take_number_text();
      if (accept_symbol(",")) c.type_name += "," + take_number_text();
      expect_symbol(")");
      c.type_name += ")";
    }
    while (true) {
      if (accept_kw("primary")) {
        expect_kw("key");
        c.primary_key = true;
      } else if (accept_kw("not")) {
        expect_kw("null");
        c.not_null = true;
      } else if (accept_kw("null")) {
        // explicit nullable
      } else if (accept_kw("references")) {
        ForeignKeyRef fk;
        fk.table = identifier();
        if (accept_symbol("(")) {
          fk.column = identifier();
          expect_symbol(")");
        }
        c.references = fk;
      } else if (accept_kw("check")) {
        if (c.check) c.check = Cond::conj({std::move(*c.check), condition()});
        else c.check = condition();
      } else {
        break;
      }
    }
    c.span = merge(start, prev().span);
    return c;
  }

  std::string take_number_text() {
    if (peek().kind != Tok::Number) fail({"number"});
    return take().text;
  }

  // ---- queries ----------------------------------------------------------

  Query query() {
    Query lhs = intersect_chain();
    while (is_kw("union") || is_kw("except")) {
      SetOpKind op = take().text == "union" ? SetOpKind::Union : SetOpKind::Except;
      lhs = set_op(op, std::move(lhs), &Parser::intersect_chain);
    }
    return lhs;
  }

  Query intersect_chain() {
    Query lhs = query_primary();
    while (is_kw("intersect")) {
      take();
      lhs = set_op(SetOpKind::Intersect, std::move(lhs), &Parser::query_primary);
    }
    return lhs;
  }

  Query set_op(SetOpKind op, Query lhs, Query (Parser::*operand)()) {
    Query q;
    q.kind = Query::Kind::SetOp;
    q.set_op = op;
    q.set_quantifier = Quantifier::Distinct;
    if (accept_kw("all")) q.set_quantifier = Quantifier::All;
    else accept_kw("distinct");
    Query rhs = (this->*operand)();
    q.span = merge(lhs.span, rhs.span);
    q.left = std::move(lhs);
    q.right = std::move(rhs);
    return q;
  }

  Query query_primary() {
    if (is_symbol("(")) {
      SourceSpan start = take().span;
      Query q = query();
      expect_symbol(")");
      q.span = merge(start, prev().span);
      return q;
    }
    if (!is_kw("select")) fail({"SELECT", "("});
    Query q;
    q.kind = Query::Kind::Select;
    q.select = select();
    q.span = q.select.span;
    return q;
  }

  Select select() {
    Select s;
    SourceSpan start = peek().span;
    expect_kw("select");
    if (accept_kw("distinct")) s.quantifier = Quantifier::Distinct;
    else accept_kw("all");
    if (accept_kw("top")) {
      const Token& t = peek();
      if (t.kind != Tok::Number || t.text.find_first_of(".eE") != std::string::npos) fail({"positive integer"});
      long long n = std::stoll(take().text);
      if (n <= 0) throw SyntaxError("TOP requires a positive integer", prev().span, {"positive integer"});
      s.top = n;
    }
    do {
      s.items.push_back(select_item());
    } while (accept_symbol(","));
    expect_kw("from");
    do {
      s.from.push_back(from_item());
    } while (accept_symbol(","));
    if (accept_kw("where")) {
      s.where = condition();
      s.has_where = true;
    } else {
      s.where = Cond::truth();
    }
    if (accept_kw("group")) {
      expect_kw("by");
      do {
        s.group_by.push_back(expression());
      } while (accept_symbol(","));
    }
    if (accept_kw("having")) s.having = condition();
    s.span = merge(start, prev().span);
    return s;
  }

  SelectItem select_item() {
    SelectItem item;
    SourceSpan start = peek().span;
    if (accept_symbol("*")) {
      item.star = true;
      item.span = start;
      return item;
    }
    if (at_plain_identifier() && is_symbol(".", 1) && is_symbol("*", 2)) {
      item.star = true;
      item.star_qualifier = take().text;
      take();
      take();
      item.span = merge(start, prev().span);
      return item;
    }
    item.expr = expression();
    if (accept_kw("as")) item.alias = identifier();
    else if (at_plain_identifier()) item.alias = take().text;
    item.span = merge(start, prev().span);
    return item;
  }

  FromItem from_item() {
    FromItem f;
    SourceSpan start = peek().span;
    if (is_symbol("(")) {
      take();
      f.subquery = query();
      expect_symbol(")");
    } else {
      f.name = identifier();
    }
    if (accept_kw("as")) f.alias = identifier();
    else if (at_plain_identifier()) f.alias = take().text;
    f.span = merge(start, prev().span);
    return f;
  }

  // ---- conditions -------------------------------------------------------

  Cond condition() {
    std::vector<Cond> parts;
    parts.push_back(conjunction());
    while (accept_kw("or")) parts.push_back(conjunction());
    return Cond::disj(std::move(parts));
  }

  Cond conjunction() {
    std::vector<Cond> parts;
    parts.push_back(negation());
    while (accept_kw("and")) parts.push_back(negation());
    return Cond::conj(std::move(parts));
  }

  Cond negation() {
    if (is_kw("not") && !is_kw("exists", 1)) {
      SourceSpan start = take().span;
      Cond inner = negation();
      return Cond::negation(std::move(inner), merge(start, inner.span));
    }
    return predicate();
  }

  bool continues_expression() const {
    const Token& t = peek();
    if (t.kind == Tok::Symbol)
      return t.text == "+" || t.text == "-" || t.text == "*" || t.text == "/" || t.text == "=" ||
             t.text == "<>" || t.text == "<" || t.text == ">" || t.text == "<=" || t.text == ">=";
    return is_kw("between") || is_kw("in") || is_kw("like") || is_kw("is") ||
           (is_kw("not") && (is_kw("between", 1) || is_kw("in", 1) || is_kw("like", 1)));
  }

  Cond predicate() {
    SourceSpan start = peek().span;
    if (accept_kw("true")) return Cond::truth(start);
    if (accept_kw("false")) return Cond::falsity(start);
    if (is_kw("exists") || (is_kw("not") && is_kw("exists", 1))) {
      bool negated = accept_kw("not");
      expect_kw("exists");
      Cond c;
      c.kind = Cond::Kind::Exists;
      c.subquery = subquery_operand();
      c.span = merge(start, prev().span);
      return negated ? Cond::negation(std::move(c), merge(start, prev().span)) : c;
    }
    if (is_symbol("(") && !is_kw("select", 1) && !is_symbol("(", 1)) {
      std::size_t save = pos_;
      try {
        take();
        Cond inner = condition();
        expect_symbol(")");
        if (!continues_expression()) {
          inner.span = merge(start, prev().span);
          return inner;
        }
      } catch (const SyntaxError&) {
      }
      pos_ = save;
    } else if (is_symbol("(") && is_symbol("(", 1)) {
      // Nested parentheses: try a condition first, then fall back.
      std::size_t save = pos_;
      try {
        take();
        Cond inner = condition();
        expect_symbol(")");
        if (!continues_expression()) {
          inner.span = merge(start, prev().span);
          return inner;
        }
      } catch (const SyntaxError&) {
      }
      pos_ = save;
    }
    Expr lhs = expression();
    return predicate_tail(std::move(lhs), start);
  }

  Query subquery_operand() {
    if (is_symbol("(")) {
      SourceSpan s = take().span;
      Query q = query();
      expect_symbol(")");
      q.span = merge(s, prev().span);
      return q;
    }
    if (is_kw("select")) return query_primary();
    fail({"("});
  }

  std::optional<CmpOp> comparison_operator() {
    const Token& t = peek();
    if (t.kind != Tok::Symbol) return std::nullopt;
    std::optional<CmpOp> op;
    if (t.text == "=") op = CmpOp::Eq;
    else if (t.text == "<>") op = CmpOp::Ne;
    else if (t.text == "<") op = CmpOp::Lt;
    else if (t.text == ">") op = CmpOp::Gt;
    else if (t.text == "<=") op = CmpOp::Le;
    else if (t.text == ">=") op = CmpOp::Ge;
    if (op) take();
    return op;
  }

  Cond predicate_tail(Expr lhs, SourceSpan start) {
    if (auto op = comparison_operator()) {
      Expr rhs = expression();
      return Cond::cmp(*op, std::move(lhs), std::move(rhs), merge(start, prev().span));
    }
    bool negated = false;
    if (is_kw("not") && (is_kw("between", 1) || is_kw("in", 1) || is_kw("like", 1))) {
      take();
      negated = true;
    }
    Cond c;
    if (accept_kw("between")) {
      c.kind = Cond::Kind::Between;
      c.exprs.push_back(std::move(lhs));
      c.exprs.push_back(expression());
      expect_kw("and");
      c.exprs.push_back(expression());
    } else if (accept_kw("in")) {
      c.kind = Cond::Kind::In;
      c.exprs.push_back(std::move(lhs));
      c.subquery = subquery_operand();
    } else if (accept_kw("like")) {
      c.kind = Cond::Kind::Like;
      c.exprs.push_back(std::move(lhs));
      if (peek().kind != Tok::String) fail({"string literal"});
      c.pattern = take().text;
      c.negated = negated;
      negated = false;
    } else if (accept_kw("is")) {
      c.kind = Cond::Kind::IsNull;
      c.negated = accept_kw("not");
      expect_kw("null");
      c.exprs.push_back(std::move(lhs));
    } else {
      fail({"comparison operator", "BETWEEN", "IN", "LIKE", "IS"});
    }
    c.span = merge(start, prev().span);
    if (negated) return Cond::negation(std::move(c), c.span);
    return c;
  }

  // ---- expressions ------------------------------------------------------

  Expr expression() {
    Expr lhs = term();
    while (is_symbol("+") || is_symbol("-")) {
      ArithOp op = take().text == "+" ? ArithOp::Add : ArithOp::Sub;
      Expr rhs = term();
      lhs = Expr::arith(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_symbol("*") || is_symbol("/")) {
      ArithOp op = take().text == "*" ? ArithOp::Mul : ArithOp::Div;
      Expr rhs = unary();
      lhs = Expr::arith(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr unary() {
    if (is_symbol("-")) {
      SourceSpan start = take().span;
      if (peek().kind == Tok::Number) {
        Expr e = number_literal();
        e.value = Value(-e.value.number());
        e.span = merge(start, e.span);
        return e;
      }
      Expr inner = unary();
      return Expr::neg(std::move(inner), merge(start, inner.span));
    }
    return primary();
  }

  Expr number_literal() {
    Token t = take();
    bool is_float = t.text.find_first_of(".eE") != std::string::npos;
    return Expr::constant(Value(parse_decimal(t.text)), is_float ? DType::Float : DType::Integer, t.span);
  }

  Expr primary() {
    const Token& t = peek();
    SourceSpan start = t.span;
    if (t.kind == Tok::Number) return number_literal();
    if (t.kind == Tok::String) {
      Token s = take();
      return Expr::constant(Value(s.text), DType::String, s.span);
    }
    if (accept_kw("null")) return Expr::null(start);
    if (is_symbol("(")) {
      take();
      if (is_kw("select") || is_symbol("(")) {
        // `((SELECT ...))` or `(SELECT ...)`; a parenthesised arithmetic
        // expression starting with `(` is handled by backtracking.
        std::size_t save = pos_;
        if (is_kw("select")) {
          Query q = query();
          expect_symbol(")");
          return Expr::scalar(std::move(q), merge(start, prev().span));
        }
        try {
          Query q = query();
          expect_symbol(")");
          return Expr::scalar(std::move(q), merge(start, prev().span));
        } catch (const SyntaxError&) {
          pos_ = save;
        }
      }
      Expr e = expression();
      expect_symbol(")");
      e.span = merge(start, prev().span);
      return e;
    }
    if (t.kind == Tok::Ident && is_symbol("(", 1)) {
      static const std::array<std::pair<const char*, AggFn>, 5> fns = {{
          {"count", AggFn::Count}, {"sum", AggFn::Sum}, {"avg", AggFn::Avg},
          {"min", AggFn::Min}, {"max", AggFn::Max}}};
      for (const auto& [name, fn] : fns) {
        if (t.text != name) continue;
        take();
        take();
        Expr e;
        e.kind = Expr::Kind::Aggregate;
        e.agg_fn = fn;
        if (accept_kw("distinct")) e.agg_quantifier = Quantifier::Distinct;
        else accept_kw("all");
        if (fn == AggFn::Count && e.agg_quantifier == Quantifier::All && accept_symbol("*")) {
          e.agg_star = true;
        } else {
          e.args.push_back(expression());
        }
        expect_symbol(")");
        e.span = merge(start, prev().span);
        return e;
      }
      throw SyntaxError("unknown function '" + t.text + "'", t.span, {"expression"});
    }
    if (t.kind == Tok::Ident && !is_reserved(t.text)) {
      std::string first = take().text;
      if (accept_symbol(".")) {
        std::string col = identifier();
        return Expr::column_ref(first, col, merge(start, prev().span));
      }
      return Expr::column_ref("", first, start);
    }
    fail({"expression"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::vector<Token> lex(std::string_view text) { return Lexer(text).run(); }

}  // namespace

std::optional<DType> dtype_for_type_name(std::string_view n) {
  static const std::array<std::string_view, 6> ints = {"INT", "INTEGER", "SMALLINT", "BIGINT", "NUMERIC", "DECIMAL"};
  static const std::array<std::string_view, 4> floats = {"FLOAT", "REAL", "DOUBLE PRECISION", "DOUBLE"};
  static const std::array<std::string_view, 8> strings = {"CHAR", "VARCHAR", "CHARACTER", "TEXT",
                                                          "STRING", "DATE", "TIME", "TIMESTAMP"};
  if (std::find(ints.begin(), ints.end(), n) != ints.end()) return DType::Integer;
  if (std::find(floats.begin(), floats.end(), n) != floats.end()) return DType::Float;
  if (std::find(strings.begin(), strings.end(), n) != strings.end()) return DType::String;
  return std::nullopt;
}

std::vector<Statement> parse_script(std::string_view text) {
  Parser p(lex(text));
  std::vector<Statement> out;
  while (!p.at_end()) out.push_back(p.statement());
  return out;
}

ParseOutcome parse_script_recovering(std::string_view text) {
  ParseOutcome out;
  std::vector<Token> tokens;
  try {
    tokens = lex(text);
  } catch (const SyntaxError& e) {
    out.errors.push_back(e);
    return out;
  }
  Parser p(std::move(tokens));
  while (!p.at_end()) {
    try {
      out.statements.push_back(p.statement());
    } catch (const SyntaxError& e) {
      out.errors.push_back(e);
      p.recover();
    }
  }
  return out;
}

Query parse_query(std::string_view text) { return Parser(lex(text)).full_query(); }
Cond parse_condition(std::string_view text) { return Parser(lex(text)).full_condition(); }
Expr parse_expression(std::string_view text) { return Parser(lex(text)).full_expression(); }

}  // namespace sqlclp::sql
