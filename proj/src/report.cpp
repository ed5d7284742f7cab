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

#include "sqlclp/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace sqlclp {

using Json = nlohmann::ordered_json;

std::string render_text(const std::vector<Diagnostic>& diags, const std::string& file) {
  std::string out;
  for (const auto& d : diags) out += format_text(d, file) + "\n";
  return out;
}

std::string render_json(const std::vector<Diagnostic>& diags, const std::string& file) {
  Json arr = Json::array();
  for (const auto& d : diags) {
    arr.push_back(Json{{"code", d.code},
                       {"message", d.message},
                       {"file", file},
                       {"line", d.span.start_line},
                       {"col", d.span.start_col}});
  }
  return arr.dump(2) + "\n";
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_bench_text(const BenchReport& r) {
  std::string out = "n=" + std::to_string(r.n) + " result=" + (r.success ? "success" : "failure") + "\n";
  out += "parse_ms=" + fixed(r.parse_ms) + "\n";
  out += "sql_to_dl_ms=" + fixed(r.sql_to_dl_ms) + "\n";
  out += "dl_to_clp_ms=" + fixed(r.dl_to_clp_ms) + "\n";
  out += "solve_ms=" + fixed(r.solve_ms) + "\n";
  out += "analyze_ms=" + fixed(r.checks_ms) + "\n";
  out += "total_ms=" + fixed(r.total_ms) + "\n";
  out += "warnings=" + std::to_string(r.diagnostics.size()) + "\n";
  return out;
}

std::string render_bench_json(const BenchReport& r) {
  Json j{{"n", r.n},
         {"success", r.success},
         {"parse_ms", r.parse_ms},
         {"sql_to_dl_ms", r.sql_to_dl_ms},
         {"dl_to_clp_ms", r.dl_to_clp_ms},
         {"solve_ms", r.solve_ms},
         {"analyze_ms", r.checks_ms},
         {"total_ms", r.total_ms},
         {"warnings", r.diagnostics.size()}};
  return j.dump(2) + "\n";
}

}  // namespace sqlclp
