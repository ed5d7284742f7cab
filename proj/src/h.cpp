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

#include "sqlclp/h.hpp"

namespace sqlclp::solver {

int HStore::node(const HTerm& t) {
  if (auto v = std::get_if<int>(&t)) {
    auto [it, inserted] = var_node_.emplace(*v, next_);
    if (inserted) parent_[next_++] = it->second;
    return it->second;
  }
  const auto& s = std::get<std::string>(t);
  auto [it, inserted] = const_node_.emplace(s, next_);
  if (inserted) {
    parent_[next_] = next_;
    constant_[next_] = s;
    ++next_;
  }
  return it->second;
}

std::optional<int> HStore::lookup(const HTerm& t) const {
  if (auto v = std::get_if<int>(&t)) {
    auto it = var_node_.find(*v);
    if (it == var_node_.end()) return std::nullopt;
    return it->second;
  }
  auto it = const_node_.find(std::get<std::string>(t));
  if (it == const_node_.end()) return std::nullopt;
  return it->second;
}

int HStore::find(int n) const {
  int root = n;
  while (parent_.at(root) != root) root = parent_.at(root);
  while (parent_.at(n) != root) {
    int up = parent_.at(n);
    parent_[n] = root;
    n = up;
  }
  return root;
}

bool HStore::consistent() const {
  for (const auto& [a, b] : diseq_)
    if (find(a) == find(b)) return false;
  return true;
}

bool HStore::post_eq(const HTerm& a, const HTerm& b) {
  if (failed_) return false;
  int ra = find(node(a));
  int rb = find(node(b));
  if (ra == rb) return true;
  auto ca = constant_.find(ra);
  auto cb = constant_.find(rb);
  if (ca != constant_.end() && cb != constant_.end() && ca->second != cb->second) {
    failed_ = true;
    return false;
  }
  if (ca == constant_.end() && cb != constant_.end()) std::swap(ra, rb);
  // ra keeps the constant, if any.
  parent_[rb] = ra;
  constant_.erase(rb);
  if (!consistent()) failed_ = true;
  return !failed_;
}

bool HStore::post_ne(const HTerm& a, const HTerm& b) {
  if (failed_) return false;
  int na = node(a);
  int nb = node(b);
  diseq_.emplace_back(na, nb);
  if (find(na) == find(nb)) failed_ = true;
  return !failed_;
}

std::optional<std::string> HStore::value(int var) const {
  auto n = lookup(HTerm(var));
  if (!n) return std::nullopt;
  auto it = constant_.find(find(*n));
  if (it == constant_.end()) return std::nullopt;
  return it->second;
}

bool HStore::same_class(const HTerm& a, const HTerm& b) const {
  auto na = lookup(a);
  auto nb = lookup(b);
  if (!na || !nb) return false;
  return find(*na) == find(*nb);
}

}  // namespace sqlclp::solver
