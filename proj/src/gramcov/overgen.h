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

#ifndef GRAMCOV_OVERGEN_H_
#define GRAMCOV_OVERGEN_H_

#include <string>
#include <vector>

#include "gramcov/coverage.h"

namespace gramcov {

// A disjunct ranked by its association with parseable ungrammatical items.
// u and g count items (presence, not frequency).
struct Suspect {
  int id = 0;
  int u = 0;
  int g = 0;
  Ratio p_u;
  Ratio p_g;
  // score = (u + 1) / (u + g + 2)
  Ratio score;
  // score > 1/2 and p_u > p_g.
  bool flagged = false;
  // Parseable ungrammatical items using the disjunct, in matrix order.
  std::vector<std::string> sentences;
};

struct SuspectReport {
  int parseable_ungrammatical = 0;
  int parseable_grammatical = 0;
  // Ranked by score, then u, descending; ties by id. Only disjuncts with
  // u >= 1 are listed.
  std::vector<Suspect> suspects;
  std::string note;
};

// `top_k` = 0 lists every candidate.
SuspectReport suspect_disjuncts(const UsageMatrix& matrix, int top_k);

}  // namespace gramcov

#endif  // GRAMCOV_OVERGEN_H_
