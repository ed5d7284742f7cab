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

#ifndef SQLCLP_TESTS_PROPERTIES_HPP
#define SQLCLP_TESTS_PROPERTIES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sqlclp::testing {

struct PropertyStats {
  int scenarios = 0;
  int analyzed = 0;        // made it through the whole pipeline
  int skipped = 0;         // rejected by the frontend or outside the fragment
  int failing = 0;         // solve reported failure
  int answering = 0;       // some instance gives a non-empty answer
  long instances = 0;
  int tautologies = 0;     // W008 conditions checked by enumeration
  int check_warnings = 0;  // W001/W008 on CHECK constraints checked by enumeration
  int distinct_warnings = 0;

  int inconsistency_violations = 0;  // failure while some instance answers
  int tautology_violations = 0;      // W008 on a condition some assignment falsifies
  int simplify_violations = 0;       // simplified program answers differently
  int translation_violations = 0;    // Datalog answers differ from SQL answers
  int check_violations = 0;
  int distinct_violations = 0;       // W002 while duplicates occur

  std::vector<std::string> counterexamples;

  [[nodiscard]] int violations() const {
    return inconsistency_violations + tautology_violations + simplify_violations + translation_violations +
           check_violations + distinct_violations;
  }
};

/// Generates `scenarios` random schemas and queries from `seed` and checks
/// them against the reference evaluators on `instances` random instances.
PropertyStats run_properties(std::uint64_t seed, int scenarios, int instances);

std::string summary(const PropertyStats& s);

}  // namespace sqlclp::testing

#endif  // SQLCLP_TESTS_PROPERTIES_HPP
