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

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqlclp/bench.hpp"
#include "sqlclp/report.hpp"
#include "sqlclp/session.hpp"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return !std::cin.bad();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return !in.bad();
}

std::string position(const sqlclp::SourceSpan& s) {
  return std::to_string(s.start_line) + ":" + std::to_string(s.start_col);
}

void emit(const sqlclp::ScriptResult& result, const std::vector<std::string>& stages, std::ostream& os) {
  bool want_dl = std::find(stages.begin(), stages.end(), "datalog") != stages.end();
  bool want_clp = std::find(stages.begin(), stages.end(), "clp") != stages.end();
  for (const auto& st : result.statements) {
    const auto& a = st.analysis;
    for (std::size_t i = 0; i < a.clp.size(); ++i) {
      os << "% statement at " << position(st.span) << "\n";
      if (want_dl) {
        os << "% datalog\n" << sqlclp::dl::to_string(a.datalog[i]);
        os << "% simplified\n" << sqlclp::dl::to_string(a.simplified[i]);
      }
      if (want_clp) os << "% clp\n" << sqlclp::clp::to_string(a.clp[i]);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic analyzer for SQL statements"};
  app.require_subcommand(1);

  std::string input;
  std::string format = "text";
  std::vector<std::string> stages;
  sqlclp::AnalyzerOptions opts;
  auto* analyze = app.add_subcommand("analyze", "Analyze a SQL script");
  analyze->add_option("input", input, "SQL file, or - for standard input")->required();
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--emit", stages, "Print intermediate programs")->check(CLI::IsMember({"datalog", "clp"}));
  analyze->add_option("--max-fd-props", opts.solver.max_fd_props, "FD propagation steps per post")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--max-fm-ineqs", opts.solver.max_fm_ineqs, "Inequalities allowed during elimination")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--max-work", opts.solver.max_work, "Solver work allowed per query before giving up")
      ->check(CLI::PositiveNumber);

  int nest = 10;
  std::string bench_format = "text";
  auto* bench = app.add_subcommand("bench", "Time the nested-subquery benchmark");
  bench->add_option("--nest", nest, "Nesting depth")->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (bench->parsed()) {
    try {
      auto r = sqlclp::run_bench(nest);
      std::cout << (bench_format == "json" ? sqlclp::render_bench_json(r) : sqlclp::render_bench_text(r));
    } catch (const std::exception& e) {
      std::cerr << "sqlclp: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "sqlclp: cannot read " << input << "\n";
    return 2;
  }
  std::string file = input == "-" ? "<stdin>" : input;
  opts.keep_programs = !stages.empty();
  sqlclp::ScriptResult result = sqlclp::analyze_script(text, opts);
  if (!stages.empty()) emit(result, stages, format == "json" ? std::cerr : std::cout);
  if (format == "json") std::cout << sqlclp::render_json(result.diagnostics, file);
  else std::cout << sqlclp::render_text(result.diagnostics, file);
  return result.exit_code();
}
