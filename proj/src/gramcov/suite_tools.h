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

#ifndef GRAMCOV_SUITE_TOOLS_H_
#define GRAMCOV_SUITE_TOOLS_H_

#include <set>
#include <string>
#include <vector>

#include "gramcov/coverage.h"
#include "gramcov/grammar.h"

namespace gramcov {

struct Gap {
  enum class Candidate { kUntested = 1, kInappropriate = 2 };

  int id = 0;
  Candidate candidate = Candidate::kUntested;
  // Diagnostic behind an (ii) classification, empty otherwise.
  std::string reason;
};

struct CompletenessReport {
  std::vector<Gap> gaps;
  int table_size = 0;
  // Grammatical items without a parse; they do not contribute to coverage.
  std::vector<std::string> unparsed_grammatical;

  bool complete() const { return gaps.empty(); }
};

// Unexercised disjuncts. A gap is candidate (ii) when its rule or one of the
// categories it selects is flagged by validate_grammar; otherwise (i).
CompletenessReport completeness_report(const UsageMatrix& matrix, const Grammar& grammar,
                                       const std::set<std::string>* lexical = nullptr,
                                       const CoverageOptions& options = {});

enum class EquivalenceMode { kEquivalence, kStrict };

const char* equivalence_mode_name(EquivalenceMode mode);

struct EquivalenceClass {
  std::string representative;  // lowest id
  std::vector<std::string> members;  // sorted
};

struct EquivalenceReport {
  EquivalenceMode mode = EquivalenceMode::kEquivalence;
  // Classes of parseable items, ordered by representative.
  std::vector<EquivalenceClass> classes;
};

EquivalenceReport equivalence_classes(const UsageMatrix& matrix, EquivalenceMode mode);

// True if every class of `fine` lies inside one class of `coarse`.
bool refines(const EquivalenceReport& fine, const EquivalenceReport& coarse);

struct ReductionReport {
  std::string mode;
  int original_count = 0;
  int reduced_count = 0;
  double original_runtime_s = 0.0;
  double reduced_runtime_s = 0.0;
  // Kept ids in original order.
  std::vector<std::string> kept;

  std::string relative_size() const;
  std::string relative_runtime() const;
};

// Greedy pass over parseable items by descending number of exercised
// disjuncts (then ascending id), keeping an item iff it adds a disjunct.
ReductionReport similarity_reduce(const UsageMatrix& matrix);

// One representative per equivalence class.
ReductionReport equivalence_reduce(const UsageMatrix& matrix);

// Rows of `matrix` whose id is in `ids`, in matrix order.
UsageMatrix restrict_rows(const UsageMatrix& matrix, const std::vector<std::string>& ids);

}  // namespace gramcov

#endif  // GRAMCOV_SUITE_TOOLS_H_
