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

#include "sqlclp/common.hpp"

#include <algorithm>
#include <tuple>

namespace sqlclp {

bool SourceSpan::contains(const SourceSpan& other) const {
  if (!valid() || !other.valid()) return true;
  auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
  return before(start_line, start_col, other.start_line, other.start_col) &&
         before(other.end_line, other.end_col, end_line, end_col);
}

SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
  if (!a.valid()) return b;
  if (!b.valid()) return a;
  SourceSpan out = a;
  if (std::tie(b.start_line, b.start_col) < std::tie(a.start_line, a.start_col)) {
    out.start_line = b.start_line;
    out.start_col = b.start_col;
  }
  if (std::tie(b.end_line, b.end_col) > std::tie(a.end_line, a.end_col)) {
    out.end_line = b.end_line;
    out.end_col = b.end_col;
  }
  return out;
}

bool span_less(const SourceSpan& a, const SourceSpan& b) {
  return std::tie(a.start_line, a.start_col, a.end_line, a.end_col) <
         std::tie(b.start_line, b.start_col, b.end_line, b.end_col);
}

const char* dtype_name(DType t) {
  switch (t) {
    case DType::Integer: return "integer";
    case DType::Float: return "float";
    case DType::String: return "string";
  }
  return "?";
}

bool Value::is_integral() const {
  return is_number() && boost::multiprecision::denominator(number()) == 1;
}

std::string rational_to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  // Finite decimal iff the denominator has no prime factors besides 2 and 5.
  BigInt d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return num.str() + "/" + den.str();
  int digits = std::max(twos, fives);
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = num * (scale / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

std::string Value::to_string() const {
  if (is_null()) return "NULL";
  if (is_number()) return rational_to_string(number());
  return string();
}

}  // namespace sqlclp
