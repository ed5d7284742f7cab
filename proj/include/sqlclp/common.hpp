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

#ifndef SQLCLP_COMMON_HPP
#define SQLCLP_COMMON_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sqlclp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Region of the source text, 1-based and inclusive of the start column.
struct SourceSpan {
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  [[nodiscard]] bool valid() const { return start_line > 0; }
  [[nodiscard]] bool contains(const SourceSpan& other) const;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Smallest span covering both arguments. Invalid spans are ignored.
SourceSpan merge(const SourceSpan& a, const SourceSpan& b);

bool span_less(const SourceSpan& a, const SourceSpan& b);

enum class DType { Integer, Float, String };

const char* dtype_name(DType t);

/// A SQL constant: NULL, an exact number, or a string.
class Value {
 public:
  Value() = default;
  explicit Value(Rational r) : data_(std::move(r)) {}
  explicit Value(std::string s) : data_(std::move(s)) {}
  static Value integer(long long v) { return Value(Rational(v)); }

  [[nodiscard]] bool is_null() const { return std::holds_alternative<std::monostate>(data_); }
  [[nodiscard]] bool is_number() const { return std::holds_alternative<Rational>(data_); }
  [[nodiscard]] bool is_string() const { return std::holds_alternative<std::string>(data_); }
  [[nodiscard]] const Rational& number() const { return std::get<Rational>(data_); }
  [[nodiscard]] const std::string& string() const { return std::get<std::string>(data_); }
  [[nodiscard]] bool is_integral() const;

  /// Renders numbers as integers, finite decimals, or n/d; strings unquoted.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }
  friend bool operator<(const Value& a, const Value& b) { return a.data_ < b.data_; }

 private:
  std::variant<std::monostate, Rational, std::string> data_;
};

std::string rational_to_string(const Rational& r);

/// Copyable owning pointer with value semantics, used for recursive AST nodes.
template <typename T>
class Box {
 public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  [[nodiscard]] bool has_value() const { return ptr_ != nullptr; }
  explicit operator bool() const { return has_value(); }
  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

/// Base error carrying a source location.
class Error : public std::runtime_error {
 public:
  Error(const std::string& message, SourceSpan span)
      : std::runtime_error(message), span_(span) {}
  [[nodiscard]] const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span, std::vector<std::string> expected = {})
      : Error(message, span), expected_(std::move(expected)) {}
  [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

/// Name resolution, typing, and catalog errors.
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// Constructs that parse but have no Datalog counterpart (aggregates, GROUP BY).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace sqlclp

#endif  // SQLCLP_COMMON_HPP
