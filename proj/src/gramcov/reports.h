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

// JSON and plain-text renderings of the analyses. Every JSON report carries
// the provenance of its input; wall-clock figures live in a top-level
// "timing" member so that the rest is reproducible byte for byte.

#ifndef GRAMCOV_REPORTS_H_
#define GRAMCOV_REPORTS_H_

#include <optional>
#include <string>
#include <vector>

#include "gramcov/coverage.h"
#include "gramcov/grammar_stats.h"
#include "gramcov/overgen.h"
#include "gramcov/records.h"
#include "gramcov/specializer.h"
#include "gramcov/suite_tools.h"
#include "gramcov/validate.h"

namespace gramcov {

Json ratio_json(const Ratio& ratio);
// "%.1f"
std::string format_seconds(double seconds);
// "factor 3.7"
std::string format_factor(double factor);

Json coverage_json(const CoverageReport& report, const DisjunctTable& table,
                   const Provenance& provenance);
std::string coverage_text(const CoverageReport& report, const DisjunctTable& table);

Json completeness_json(const CompletenessReport& report, const DisjunctTable& table,
                       const Provenance& provenance);
// Lists each gap with its rule, source position, alternative and comment.
std::string completeness_text(const CompletenessReport& report, const DisjunctTable& table);

Json equivalence_json(const EquivalenceReport& equivalence, const EquivalenceReport& strict,
                      const Provenance& provenance);

Json reduction_json(const ReductionReport& report, const Provenance& provenance);

struct ReductionTableRow {
  std::string label;
  int count = 0;
  std::string relative_size;
  std::optional<double> runtime_s;
  std::string relative_runtime;
};

std::vector<ReductionTableRow> reduction_rows(const ReductionReport& report,
                                              const std::string& original_label,
                                              const std::string& reduced_label);
// Columns: test cases, relative size, runtime, relative runtime.
std::string reduction_table(const std::vector<ReductionTableRow>& rows);

Json suspects_json(const SuspectReport& report, const UsageMatrix& matrix,
                   const DisjunctTable& table, const Provenance& provenance);
// Each suspect followed by the sentences relying on it.
std::string suspects_text(const SuspectReport& report, const UsageMatrix& matrix,
                          const DisjunctTable& table);

struct SizeRow {
  std::string label;
  std::optional<GrammarStats> stats;
};

// Columns: grammar, rules, arcs, disjuncts; an empty cell when no stats.
std::string size_table(const std::vector<SizeRow>& rows);

Json comparison_json(const RunComparison& comparison, const GrammarStats& base_stats,
                     const GrammarStats& reduced_stats, int kept, const Provenance& provenance);
// Columns: grammar, coverage, mismatches, additions, total/avg/max time,
// solutions per sentence, followed by the speedup factor.
std::string comparison_text(const RunComparison& comparison, const GrammarStats& base_stats,
                            const GrammarStats& reduced_stats);

Json staged_json(const StagedGrammar& staged, const std::vector<StagedRecord>& records,
                 const std::vector<ParseRecord>& base, const Provenance& provenance);

}  // namespace gramcov

#endif  // GRAMCOV_REPORTS_H_
