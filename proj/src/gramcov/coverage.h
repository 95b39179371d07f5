// Copyright 2026 The Gramcov Authors
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

#ifndef GRAMCOV_COVERAGE_H_
#define GRAMCOV_COVERAGE_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gramcov/grammar.h"
#include "gramcov/parser.h"

namespace gramcov {

struct UsageRow {
  std::string id;
  std::string text;
  bool grammatical = true;
  ParseStatus status = ParseStatus::kNoParse;
  // Sum of the per-solution multisets.
  MarkMultiset total;
  std::vector<MarkMultiset> solutions;
  // Constraint serials exercised by any solution.
  std::set<int> constraints;
  double elapsed = 0.0;

  bool parseable() const { return status == ParseStatus::kParsed; }
  std::set<int> exercised() const;
};

struct UsageMatrix {
  int table_size = 0;
  std::vector<UsageRow> rows;

  const UsageRow* find(const std::string& id) const;
};

// Throws InputError for marks outside the table.
UsageMatrix accumulate_usage(const std::vector<ParseRecord>& records, const DisjunctTable& table);

// Exact ratio; display() truncates to two decimals ("0.28" for 1081/3730).
struct Ratio {
  long long numerator = 0;
  long long denominator = 0;

  bool defined() const { return denominator > 0; }
  double value() const;
  std::string display() const;
};

std::string truncate_two_decimals(long long numerator, long long denominator);
// Integer percentage rounded toward zero, e.g. 783/1093 -> "71%".
std::string percent_truncated(long long numerator, long long denominator);

struct CoverageOptions {
  // Parseable ungrammatical items count toward the numerators.
  bool include_ungrammatical = true;
};

struct InteractionOptions {
  int recursion_bound = 1;
  // Bounds the combinations held by any intermediate set and the set merges
  // spent on any one product.
  long long cap = 1000;
  // Hitting the cap raises InputError instead of flagging the estimate.
  bool strict_cap = false;
};

struct InteractionCoverage {
  Ratio ratio;
  bool exact = true;
  int recursion_bound = 1;
  long long cap = 0;
};

struct CoverageReport {
  Ratio t_con;
  Ratio t_dis;
  std::optional<InteractionCoverage> t_int;
  std::set<int> exercised;
  std::set<int> unexercised;
  int items = 0;
  int parseable = 0;
  int parseable_ungrammatical = 0;
  bool includes_ungrammatical = true;
};

// `grammar` is the instrumented grammar the matrix was built against.
CoverageReport coverage_report(const UsageMatrix& matrix, const Grammar& grammar,
                               const CoverageOptions& options = {});

// Distinct disjunct-id sets over all derivations of the grammar in which no
// category occurs more than 1 + bound times on a root-to-leaf path and each
// iteration repeats at most max(1, bound) times. Sets are sorted id lists.
std::set<std::vector<int>> enumerate_combinations(const Grammar& grammar,
                                                  const InteractionOptions& options,
                                                  bool* exact);

InteractionCoverage interaction_coverage(const Grammar& grammar, const UsageMatrix& matrix,
                                         const InteractionOptions& options,
                                         const CoverageOptions& coverage = {});

}  // namespace gramcov

#endif  // GRAMCOV_COVERAGE_H_
