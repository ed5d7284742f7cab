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

#ifndef SQLCLP_REPORT_HPP
#define SQLCLP_REPORT_HPP

#include <string>
#include <vector>

#include "sqlclp/bench.hpp"
#include "sqlclp/diagnostic.hpp"

namespace sqlclp {

/// One line per diagnostic.
std::string render_text(const std::vector<Diagnostic>& diags, const std::string& file);
/// Array of {code, message, file, line, col}, one object per diagnostic.
std::string render_json(const std::vector<Diagnostic>& diags, const std::string& file);

std::string render_bench_text(const BenchReport& r);
std::string render_bench_json(const BenchReport& r);

}  // namespace sqlclp

#endif  // SQLCLP_REPORT_HPP
