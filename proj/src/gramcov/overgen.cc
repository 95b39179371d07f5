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

#include "gramcov/overgen.h"

#include <algorithm>
#include <map>

namespace gramcov {
namespace {

bool greater_ratio(const Ratio& a, const Ratio& b) {
  return a.numerator * b.denominator > b.numerator * a.denominator;
}

bool equal_ratio(const Ratio& a, const Ratio& b) {
  return a.numerator * b.denominator == b.numerator * a.denominator;
}

}  // namespace

SuspectReport suspect_disjuncts(const UsageMatrix& matrix, int top_k) {
  SuspectReport report;
  std::map<int, Suspect> by_id;
  for (const UsageRow& row : matrix.rows) {
    if (!row.parseable()) continue;
    if (row.grammatical) {
      ++report.parseable_grammatical;
    } else {
      ++report.parseable_ungrammatical;
    }
    for (const auto& [id, count] : row.total) {
      Suspect& s = by_id[id];
      s.id = id;
      if (row.grammatical) {
        ++s.g;
      } else {
        ++s.u;
        s.sentences.push_back(row.id);
      }
    }
  }
  if (report.parseable_ungrammatical == 0) {
    report.note = "no parseable ungrammatical items";
    return report;
  }
  for (auto& [id, s] : by_id) {
    if (s.u == 0) continue;
    s.p_u = {s.u, report.parseable_ungrammatical};
    s.p_g = {s.g, report.parseable_grammatical};
    s.score = {s.u + 1, s.u + s.g + 2};
    bool above_half = 2 * s.score.numerator > s.score.denominator;
    bool more_frequent = !s.p_g.defined() || greater_ratio(s.p_u, s.p_g);
    s.flagged = above_half && more_frequent;
    report.suspects.push_back(s);
  }
  std::sort(report.suspects.begin(), report.suspects.end(),
            [](const Suspect& a, const Suspect& b) {
              if (!equal_ratio(a.score, b.score)) return greater_ratio(a.score, b.score);
              if (a.u != b.u) return a.u > b.u;
              return a.id < b.id;
            });
  if (top_k > 0 && static_cast<int>(report.suspects.size()) > top_k) {
    report.suspects.resize(top_k);
  }
  return report;
}

}  // namespace gramcov
