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

#include "criteria.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "dl_text.hpp"
#include "properties.hpp"
#include "sqlclp/bench.hpp"
#include "sqlclp/clp.hpp"
#include "sqlclp/parser.hpp"
#include "sqlclp/preprocess.hpp"
#include "sqlclp/session.hpp"
#include "sqlclp/store.hpp"

namespace sqlclp::testing {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void finish(CriterionResult& r, Clock::time_point t0, std::vector<std::string> failures,
            std::vector<std::string> notes) {
  r.seconds = since(t0);
  r.pass = failures.empty();
  r.details = std::move(failures);
  r.details.insert(r.details.end(), notes.begin(), notes.end());
}

// ---- corpus -----------------------------------------------------------------

struct Expected {
  std::string code;
  std::string needle;  // substring of the message
};

struct CorpusCase {
  std::string file;
  std::vector<Expected> warnings;
};

const std::vector<CorpusCase>& corpus_cases() {
  static const std::vector<CorpusCase> cases = {
      {"it_hr.sql", {{"W001", "inconsistent"}}},
      {"check_between.sql", {{"W001", "inconsistent"}}},
      {"check_or.sql", {{"W008", "tautological"}}},
      {"gas_inconsistent.sql", {{"W001", "inconsistent"}}},
      {"gas_constants.sql", {{"W003", "butane = 45"}, {"W003", "propane = 35"}}},
      {"scalar_subquery.sql",
       {{"W001", "inconsistent"}, {"W027", "missing join condition for [departments,employees]"}}},
      {"nested_salary.sql", {{"W001", "inconsistent"}}},
  };
  return cases;
}

std::string describe(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "; ") + d.code + " " + d.message;
  return out.empty() ? "(none)" : out;
}

// ---- goldens ------------------------------------------------------------------

const char* kExampleSchema =
    "CREATE TABLE dept(id CHAR(10) PRIMARY KEY, name CHAR(20), location CHAR(20));\n"
    "CREATE TABLE emp(name CHAR(20) PRIMARY KEY, dept CHAR(10) REFERENCES dept(id), salary INT);\n";

const char* kGasSchema =
    "CREATE TABLE gas_products(name VARCHAR(20) PRIMARY KEY,"
    " butane FLOAT CHECK butane BETWEEN 0 AND 100, propane FLOAT CHECK propane BETWEEN 0 AND 100,"
    " olefins FLOAT CHECK olefins BETWEEN 0 AND 100, diolefins FLOAT CHECK diolefins BETWEEN 0 AND 100,"
    " CHECK butane+propane+olefins+diolefins = 100);\n";

Catalog catalog_of(const std::string& ddl) {
  Catalog c;
  for (const auto& s : sql::parse_script(ddl)) c = c.apply_ddl(s);
  return c;
}

Preprocessed defs_of(const std::string& query, const Catalog& catalog) {
  auto stmts = sql::parse_script(query);
  auto defs = preprocess(stmts.at(0), catalog);
  if (!defs) throw std::runtime_error("statement has no query part");
  return *defs;
}

void golden(const std::string& label, const dl::Program& got, const std::string& expected_text, const Catalog& cat,
            std::vector<std::string>& failures, std::vector<std::string>& notes) {
  std::string want = dl::canonical(parse_datalog(expected_text, cat));
  std::string have = dl::canonical(got);
  if (want == have) {
    notes.push_back(label + ": matches up to renaming");
  } else {
    failures.push_back(label + ": expected\n" + want + "got\n" + have);
  }
}

// ---- solver units -------------------------------------------------------------

using dl::DlExpr;
using dl::Term;

DlExpr v(int id) { return DlExpr::of(Term::variable(id)); }
DlExpr k(long long n) { return DlExpr::of(Term::constant(Value::integer(n), DType::Integer)); }
DlExpr kq(long long num, long long den) {
  return DlExpr::of(Term::constant(Value(Rational(num, den)), DType::Float));
}
DlExpr s(const std::string& text) { return DlExpr::of(Term::constant(Value(text), DType::String)); }
DlExpr add(DlExpr a, DlExpr b) { return DlExpr::arith(sql::ArithOp::Add, std::move(a), std::move(b)); }
DlExpr sub(DlExpr a, DlExpr b) { return DlExpr::arith(sql::ArithOp::Sub, std::move(a), std::move(b)); }
DlExpr mul(DlExpr a, DlExpr b) { return DlExpr::arith(sql::ArithOp::Mul, std::move(a), std::move(b)); }

clp::Ctr ctr(DlExpr l, sql::CmpOp op, DlExpr r, DType t) {
  clp::Ctr c;
  c.lhs = std::move(l);
  c.op = op;
  c.rhs = std::move(r);
  c.type = t;
  return c;
}

bool post_all(solver::Store& st, const std::vector<clp::Ctr>& cs) {
  for (const auto& c : cs)
    if (!st.post(c)) return false;
  return true;
}

bool holds(const solver::Store& st, int var, const Value& want) {
  auto got = st.value(var);
  return got && *got == want;
}

struct SolverCase {
  std::string name;
  std::function<bool()> run;
};

std::vector<SolverCase> solver_cases() {
  using sql::CmpOp;
  using solver::Domain;
  using solver::Store;
  std::vector<SolverCase> cases;

  cases.push_back({"X+Y=2, X-Y=0 grounds X=Y=1", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     st.declare(2, DType::Integer);
                     bool ok = post_all(st, {ctr(add(v(1), v(2)), CmpOp::Eq, k(2), DType::Integer),
                                             ctr(sub(v(1), v(2)), CmpOp::Eq, k(0), DType::Integer)});
                     return ok && holds(st, 1, Value::integer(1)) && holds(st, 2, Value::integer(1));
                   }});
  cases.push_back({"B-P=10, B+P=80 grounds B=45, P=35", [] {
                     Store st;
                     st.declare(1, DType::Float);
                     st.declare(2, DType::Float);
                     bool ok = post_all(st, {ctr(sub(v(1), v(2)), CmpOp::Eq, k(10), DType::Float),
                                             ctr(add(v(1), v(2)), CmpOp::Eq, k(80), DType::Float)});
                     return ok && holds(st, 1, Value::integer(45)) && holds(st, 2, Value::integer(35));
                   }});
  cases.push_back({"X>Y, Y>X fails in Q, not in FD", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     st.declare(2, DType::Integer);
                     bool first = st.post(ctr(v(1), CmpOp::Gt, v(2), DType::Integer));
                     bool second = st.post(ctr(v(2), CmpOp::Gt, v(1), DType::Integer));
                     return first && !second && st.q().failed() && !st.fd().failed();
                   }});
  cases.push_back({"X*X=4, X>0, X<4 grounds X=2 in FD", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     bool ok = post_all(st, {ctr(mul(v(1), v(1)), CmpOp::Eq, k(4), DType::Integer),
                                             ctr(v(1), CmpOp::Gt, k(0), DType::Integer),
                                             ctr(v(1), CmpOp::Lt, k(4), DType::Integer)});
                     int fd = st.copy_of(1, Domain::Fd);
                     return ok && holds(st, 1, Value::integer(2)) && st.fd().value(fd) == 2 && !st.dropped().empty();
                   }});
  cases.push_back({"D='IT', D='HR' fails in H", [] {
                     Store st;
                     st.declare(1, DType::String);
                     bool first = st.post(ctr(v(1), CmpOp::Eq, s("IT"), DType::String));
                     bool second = st.post(ctr(v(1), CmpOp::Eq, s("HR"), DType::String));
                     return first && !second && st.h().failed();
                   }});
  cases.push_back({"Q grounding reaches the FD copy", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     st.declare(2, DType::Integer);
                     bool ok = post_all(st, {ctr(add(v(1), v(2)), CmpOp::Eq, k(2), DType::Integer),
                                             ctr(sub(v(1), v(2)), CmpOp::Eq, k(0), DType::Integer)});
                     int fx = st.copy_of(1, Domain::Fd);
                     int fy = st.copy_of(2, Domain::Fd);
                     return ok && st.fd().value(fx) == 1 && st.fd().value(fy) == 1;
                   }});
  cases.push_back({"FD grounding reaches the Q copy", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     st.declare(2, DType::Float);
                     bool ok = post_all(st, {ctr(mul(v(1), v(1)), CmpOp::Eq, k(9), DType::Integer),
                                             ctr(v(1), CmpOp::Gt, k(0), DType::Integer),
                                             ctr(v(2), CmpOp::Eq, add(v(1), kq(1, 2)), DType::Float)});
                     int qx = st.copy_of(1, Domain::Q);
                     return ok && st.q().value(qx) == Rational(3) && holds(st, 2, Value(Rational(7, 2)));
                   }});
  cases.push_back({"non-integral Q value of an integer variable fails", [] {
                     Store st;
                     st.declare(1, DType::Integer);
                     st.declare(2, DType::Float);
                     bool first = st.post(ctr(v(2), CmpOp::Eq, kq(3, 2), DType::Float));
                     bool second = st.post(ctr(v(1), CmpOp::Eq, v(2), DType::Float));
                     return first && !second && st.failed();
                   }});
  return cases;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_command(const std::string& cmd, int* status) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int rc = ::pclose(pipe);
  if (status) *status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]);
    double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CriterionResult corpus_criterion(const std::string& corpus_dir) {
  CriterionResult r{1, "corpus diagnostics", false, {}, 0};
  std::vector<std::string> failures, notes;
  std::vector<std::pair<std::string, std::string>> inputs;
  for (const auto& c : corpus_cases()) {
    try {
      inputs.emplace_back(c.file, read_file(corpus_dir + "/" + c.file));
    } catch (const std::exception& e) {
      failures.push_back(e.what());
    }
  }
  auto t0 = Clock::now();
  std::vector<std::vector<Diagnostic>> results;
  for (const auto& [file, text] : inputs) results.push_back(analyze_script(text).diagnostics);
  double analysis_seconds = since(t0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& expected = corpus_cases()[i].warnings;
    const auto& got = results[i];
    std::vector<bool> used(got.size(), false);
    bool ok = got.size() == expected.size();
    for (const auto& e : expected) {
      bool found = false;
      for (std::size_t j = 0; j < got.size() && !found; ++j) {
        if (used[j] || got[j].code != e.code || got[j].message.find(e.needle) == std::string::npos) continue;
        used[j] = found = true;
      }
      ok = ok && found;
    }
    (ok ? notes : failures).push_back(inputs[i].first + ": " + describe(got));
  }
  if (analysis_seconds >= kCorpusSeconds)
    failures.push_back("corpus took " + std::to_string(analysis_seconds) + " s");
  notes.push_back("analysis time " + std::to_string(analysis_seconds) + " s (limit 1 s)");
  finish(r, t0, std::move(failures), std::move(notes));
  r.seconds = analysis_seconds;
  return r;
}

CriterionResult golden_criterion() {
  CriterionResult r{2, "translation goldens", false, {}, 0};
  std::vector<std::string> failures, notes;
  auto t0 = Clock::now();
  try {
    Catalog cat = catalog_of(kExampleSchema);
    auto p1 = dl::sqls_to_dl(defs_of("SELECT emp.name, dept.name FROM emp, dept WHERE emp.dept=dept.id;", cat), cat);
    golden("example 1", p1,
           "answer(X1,X5) :- r1(X1,X2,X3,X4,X5,X6), true, true, X2=X4.\n"
           "r1(X1,X2,X3,X4,X5,X6) :- emp(X1,X2,X3), dept(X4,X5,X6).\n",
           cat, failures, notes);
    golden("example 1 simplified", dl::simplify(p1), "answer(X1,X5) :- emp(X1,X2,X3), dept(X2,X5,X6).\n", cat,
           failures, notes);
    auto p2 = dl::sqls_to_dl(defs_of("SELECT dept.name FROM dept WHERE dept.id IN "
                                     "(SELECT DISTINCT dept.name FROM emp, dept WHERE emp.dept=dept.id);",
                                     cat),
                             cat);
    golden("example 2", p2,
           "answer(X2) :- dept(X1,X2,X3), true, X4=X1, r1(X4).\n"
           "r1(X4) :- distinct(r2(X4)).\n"
           "r2(X9) :- r3(X5,X6,X7,X8,X9,X10), true, true, X6=X8.\n"
           "r3(X5,X6,X7,X8,X9,X10) :- emp(X5,X6,X7), dept(X8,X9,X10).\n",
           cat, failures, notes);

    Catalog gas = catalog_of(kGasSchema);
    auto simplified = dl::simplify(
        dl::sqls_to_dl(defs_of("SELECT name FROM gas_products WHERE butane>60 AND propane>50;", gas), gas));
    golden("gas simplified", simplified, "answer(N) :- gas_products(N,B,P,O,D), B>60, P>50.\n", gas, failures,
           notes);
    auto prog = clp::dl_to_clp(simplified, gas);
    const auto* rules = prog.clauses(prog.target);
    if (!rules || rules->size() != 1) {
      failures.push_back("gas CLP: expected one target clause");
    } else {
      const clp::Rule& rule = rules->front();
      // Paper names N,B,P,O,D are the head and gas_products arguments in order.
      std::map<std::string, std::string> names;
      names[dl::to_string(rule.head.args.at(0))] = "N";
      auto cs = clp::constraints(rule.body);
      std::vector<std::string> got;
      for (const auto* c : cs) got.push_back(clp::to_string(*c));
      // Variables of the sum constraint in order are B,P,O,D.
      std::vector<std::string> want = {"ctr(B>=0,float)", "ctr(B=<100,float)", "ctr(P>=0,float)",
                                       "ctr(P=<100,float)", "ctr(O>=0,float)", "ctr(O=<100,float)",
                                       "ctr(D>=0,float)", "ctr(D=<100,float)", "ctr(B+P+O+D=100,float)",
                                       "ctr(B>60,float)", "ctr(P>50,float)"};
      std::vector<std::string> renamed;
      if (cs.size() == 11) {
        std::vector<int> sum_vars;
        dl::collect_vars(cs[8]->lhs, sum_vars);
        const char* letters[] = {"B", "P", "O", "D"};
        for (std::size_t i = 0; i < sum_vars.size() && i < 4; ++i)
          names[dl::to_string(Term::variable(sum_vars[i]))] = letters[i];
        for (auto text : got) {
          // Reverse order so X1 does not clobber X10.
          for (auto it = names.rbegin(); it != names.rend(); ++it) {
            for (std::size_t pos; (pos = text.find(it->first)) != std::string::npos;)
              text.replace(pos, it->first.size(), it->second);
          }
          renamed.push_back(text);
        }
      }
      bool typed = std::all_of(cs.begin(), cs.end(), [](const clp::Ctr* c) { return c->type == DType::Float; });
      if (cs.size() != 11 || !typed || renamed != want) {
        std::string text;
        for (const auto& g : got) text += " " + g;
        failures.push_back("gas CLP: " + std::to_string(cs.size()) + " constraints:" + text);
      } else {
        notes.push_back("gas CLP: 11 float constraints in the expected order");
      }
    }
  } catch (const std::exception& e) {
    failures.push_back(std::string("exception: ") + e.what());
  }
  finish(r, t0, std::move(failures), std::move(notes));
  return r;
}

CriterionResult solver_criterion() {
  CriterionResult r{3, "solver units", false, {}, 0};
  std::vector<std::string> failures, notes;
  auto t0 = Clock::now();
  for (const auto& c : solver_cases()) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      failures.push_back(c.name + ": exception " + e.what());
      continue;
    }
    (ok ? notes : failures).push_back(c.name + (ok ? ": ok" : ": wrong result"));
  }
  finish(r, t0, std::move(failures), std::move(notes));
  return r;
}

CriterionResult property_criterion(std::uint64_t seed, int scenarios) {
  CriterionResult r{4, "soundness properties", false, {}, 0};
  std::vector<std::string> failures, notes;
  auto t0 = Clock::now();
  PropertyStats st = run_properties(seed, scenarios, kPropertyInstances);
  double secs = since(t0);
  if (st.scenarios < kPropertyScenarios)
    failures.push_back("only " + std::to_string(st.scenarios) + " scenarios");
  if (st.violations() != 0) {
    failures.push_back(std::to_string(st.violations()) + " violations");
    for (std::size_t i = 0; i < st.counterexamples.size() && i < 3; ++i) failures.push_back(st.counterexamples[i]);
  }
  if (secs >= kPropertySeconds) failures.push_back("took " + std::to_string(secs) + " s");
  notes.push_back("seed " + std::to_string(seed) + ": " + summary(st));
  finish(r, t0, std::move(failures), std::move(notes));
  return r;
}

CriterionResult bench_criterion() {
  CriterionResult r{5, "nested-query scaling", false, {}, 0};
  std::vector<std::string> failures, notes;
  auto t0 = Clock::now();
  std::vector<double> ns, times;
  for (int n = 10; n <= 100; n += 10) {
    double best = 0;
    for (int rep = 0; rep < kBenchRepeats; ++rep) {
      BenchReport b = run_bench(n);
      if (rep == 0 || b.total_ms < best) best = b.total_ms;
      if (rep == 0 && n == 100) {
        if (!b.success) failures.push_back("n=100: solve failed");
        for (const auto& d : b.diagnostics)
          if (d.code == "W001") failures.push_back("n=100: unexpected W001");
      }
    }
    ns.push_back(n);
    times.push_back(best);
    char line[64];
    std::snprintf(line, sizeof line, "n=%d total_ms=%.3f", n, best);
    notes.emplace_back(line);
  }
  if (times.back() >= kBenchMaxSeconds * 1000) failures.push_back("n=100 exceeds 10 s");
  double slope = loglog_slope(ns, times);
  char fit[64];
  std::snprintf(fit, sizeof fit, "fit exponent %.3f (limit %.1f)", slope, kBenchMaxExponent);
  (slope < kBenchMaxExponent ? notes : failures).emplace_back(fit);
  finish(r, t0, std::move(failures), std::move(notes));
  return r;
}

CriterionResult determinism_criterion(const std::string& cli, const std::string& corpus_dir) {
  CriterionResult r{6, "deterministic output", false, {}, 0};
  std::vector<std::string> failures, notes;
  auto t0 = Clock::now();
  std::vector<std::string> files;
  for (const auto& c : corpus_cases()) files.push_back(corpus_dir + "/" + c.file);
  std::string all;
  for (const auto& f : files) all += " '" + f + "'";
  std::vector<std::string> commands;
  for (const auto& f : files) {
    commands.push_back("'" + cli + "' analyze '" + f + "'");
    commands.push_back("'" + cli + "' analyze --format json '" + f + "'");
  }
  commands.push_back("cat" + all + " | '" + cli + "' analyze -");
  commands.push_back("cat" + all + " | '" + cli + "' analyze --format json -");
  for (const auto& cmd : commands) {
    int s1 = 0, s2 = 0;
    std::string a = run_command(cmd + " 2>/dev/null", &s1);
    std::string b = run_command(cmd + " 2>/dev/null", &s2);
    if (a != b || s1 != s2 || a.empty()) failures.push_back("differs or empty: " + cmd);
  }
  notes.push_back(std::to_string(commands.size()) + " commands run twice");
  finish(r, t0, std::move(failures), std::move(notes));
  return r;
}

}  // namespace sqlclp::testing
