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

#ifndef SQLCLP_TESTS_DL_TEXT_HPP
#define SQLCLP_TESTS_DL_TEXT_HPP

#include <string>
#include <string_view>

#include "sqlclp/catalog.hpp"
#include "sqlclp/datalog.hpp"

namespace sqlclp::testing {

/// Reads rules written as `head :- g1, ..., gn.`; goals are atoms,
/// `distinct(atom)`, `not(atom)`, `true` and comparisons. Capitalised names
/// are variables. Relations of `catalog` are marked as base predicates.
dl::Program parse_datalog(std::string_view text, const Catalog& catalog, const std::string& target = "answer");

}  // namespace sqlclp::testing

#endif  // SQLCLP_TESTS_DL_TEXT_HPP
