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

#ifndef SQLCLP_H_HPP
#define SQLCLP_H_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sqlclp::solver {

/// A string variable or constant.
using HTerm = std::variant<int, std::string>;

/// Symbolic equality and disequality over strings, by union-find.
class HStore {
 public:
  bool post_eq(const HTerm& a, const HTerm& b);
  bool post_ne(const HTerm& a, const HTerm& b);

  [[nodiscard]] bool failed() const { return failed_; }
  [[nodiscard]] std::optional<std::string> value(int var) const;
  [[nodiscard]] bool same_class(const HTerm& a, const HTerm& b) const;

 private:
  int node(const HTerm& t);
  int find(int n) const;
  [[nodiscard]] std::optional<int> lookup(const HTerm& t) const;
  bool consistent() const;

  mutable std::map<int, int> parent_;
  std::map<int, std::string> constant_;  // root -> constant held by the class
  std::map<int, int> var_node_;
  std::map<std::string, int> const_node_;
  std::vector<std::pair<int, int>> diseq_;
  int next_ = 0;
  bool failed_ = false;
};

}  // namespace sqlclp::solver

#endif  // SQLCLP_H_HPP
