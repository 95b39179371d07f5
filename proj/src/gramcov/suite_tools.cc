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

#include "gramcov/suite_tools.h"

#include <algorithm>
#include <map>

#include "gramcov/validate.h"

namespace gramcov {

CompletenessReport completeness_report(const UsageMatrix& matrix, const Grammar& grammar,
                                       const std::set<std::string>* lexical,
                                       const CoverageOptions& options) {
  CompletenessReport report;
  report.table_size = matrix.table_size;
  std::map<std::string, std::string> flagged;
  for (const Diagnostic& d : validate_grammar(grammar, lexical)) {
    flagged.emplace(d.category, std::string(diagnostic_kind_name(d.kind)) + ": " + d.message);
  }
  CoverageReport coverage = coverage_report(matrix, grammar, options);
  for (int id : coverage.unexercised) {
    Gap gap;
    gap.id = id;
    if (grammar.table != nullptr && grammar.table->contains(id)) {
      const DisjunctEntry& entry = grammar.table->at(id);
      std::vector<std::string> suspects = entry.categories;
      suspects.insert(suspects.begin(), entry.rule);
      for (const std::string& category : suspects) {
        auto it = flagged.find(category);
        if (it == flagged.end()) continue;
        gap.candidate = Gap::Candidate::kInappropriate;
        gap.reason = it->second;
        break;
      }
    }
    report.gaps.push_back(gap);
  }
  for (const UsageRow& row : matrix.rows) {
    if (row.grammatical && !row.parseable()) report.unparsed_grammatical.push_back(row.id);
  }
  return report;
}

const char* equivalence_mode_name(EquivalenceMode mode) {
  return mode == EquivalenceMode::kStrict ? "strict" : "equivalence";
}

namespace {

using Signature = std::vector<std::vector<std::pair<int, int>>>;

// Equivalence: the set of per-solution id sets (counts forced to 1).
// Strict: the multiset of per-solution multisets.
Signature signature(const UsageRow& row, EquivalenceMode mode) {
  Signature sig;
  for (const MarkMultiset& solution : row.solutions) {
    std::vector<std::pair<int, int>> entry;
    for (const auto& [id, count] : solution) {
      entry.emplace_back(id, mode == EquivalenceMode::kStrict ? count : 1);
    }
    sig.push_back(std::move(entry));
  }
  std::sort(sig.begin(), sig.end());
  if (mode == EquivalenceMode::kEquivalence) sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

double total_elapsed(const UsageMatrix& matrix, const std::set<std::string>& ids) {
  double total = 0.0;
  for (const UsageRow& row : matrix.rows) {
    if (ids.count(row.id)) total += row.elapsed;
  }
  return total;
}

ReductionReport make_report(const UsageMatrix& matrix, const std::string& mode,
                            const std::set<std::string>& kept) {
  ReductionReport report;
  report.mode = mode;
  std::set<std::string> original;
  for (const UsageRow& row : matrix.rows) {
    if (!row.parseable()) continue;
    original.insert(row.id);
    if (kept.count(row.id)) report.kept.push_back(row.id);
  }
  report.original_count = static_cast<int>(original.size());
  report.reduced_count = static_cast<int>(report.kept.size());
  report.original_runtime_s = total_elapsed(matrix, original);
  report.reduced_runtime_s = total_elapsed(matrix, kept);
  return report;
}

}  // namespace

EquivalenceReport equivalence_classes(const UsageMatrix& matrix, EquivalenceMode mode) {
  EquivalenceReport report;
  report.mode = mode;
  std::map<Signature, std::vector<std::string>> groups;
  for (const UsageRow& row : matrix.rows) {
    if (row.parseable()) groups[signature(row, mode)].push_back(row.id);
  }
  for (auto& [sig, members] : groups) {
    std::sort(members.begin(), members.end());
    report.classes.push_back({members.front(), members});
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const EquivalenceClass& a, const EquivalenceClass& b) {
              return a.representative < b.representative;
            });
  return report;
}

bool refines(const EquivalenceReport& fine, const EquivalenceReport& coarse) {
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < coarse.classes.size(); ++i) {
    for (const std::string& id : coarse.classes[i].members) owner[id] = i;
  }
  for (const EquivalenceClass& cls : fine.classes) {
    auto first = owner.find(cls.members.front());
    if (first == owner.end()) return false;
    for (const std::string& id : cls.members) {
      auto it = owner.find(id);
      if (it == owner.end() || it->second != first->second) return false;
    }
  }
  return true;
}

std::string ReductionReport::relative_size() const {
  return percent_truncated(reduced_count, original_count);
}

std::string ReductionReport::relative_runtime() const {
  if (original_runtime_s <= 0.0) return "n/a";
  // Millisecond resolution, as recorded.
  long long reduced = static_cast<long long>(reduced_runtime_s * 1000.0 + 0.5);
  long long original = static_cast<long long>(original_runtime_s * 1000.0 + 0.5);
  return percent_truncated(reduced, original);
}

ReductionReport similarity_reduce(const UsageMatrix& matrix) {
  std::vector<const UsageRow*> order;
  for (const UsageRow& row : matrix.rows) {
    if (row.parseable()) order.push_back(&row);
  }
  std::stable_sort(order.begin(), order.end(), [](const UsageRow* a, const UsageRow* b) {
    if (a->total.size() != b->total.size()) return a->total.size() > b->total.size();
    return a->id < b->id;
  });
  std::set<int> covered;
  std::set<std::string> kept;
  for (const UsageRow* row : order) {
    bool adds = false;
    for (const auto& [id, count] : row->total) {
      if (covered.insert(id).second) adds = true;
    }
    if (adds) kept.insert(row->id);
  }
  return make_report(matrix, "similarity", kept);
}

ReductionReport equivalence_reduce(const UsageMatrix& matrix) {
  std::set<std::string> kept;
  for (const EquivalenceClass& cls :
       equivalence_classes(matrix, EquivalenceMode::kEquivalence).classes) {
    kept.insert(cls.representative);
  }
  return make_report(matrix, "equivalence", kept);
}

UsageMatrix restrict_rows(const UsageMatrix& matrix, const std::vector<std::string>& ids) {
  std::set<std::string> wanted(ids.begin(), ids.end());
  UsageMatrix out;
  out.table_size = matrix.table_size;
  for (const UsageRow& row : matrix.rows) {
    if (wanted.count(row.id)) out.rows.push_back(row);
  }
  return out;
}

}  // namespace gramcov
