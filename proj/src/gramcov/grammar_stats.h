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

#ifndef GRAMCOV_GRAMMAR_STATS_H_
#define GRAMCOV_GRAMMAR_STATS_H_

#include <string>

#include "gramcov/grammar.h"

namespace gramcov {

// Size metrics of a grammar, computed on its normalized form.
//
//   n_arcs        labelled transitions of the Thompson automata of all
//                 right-hand sides: one per symbol occurrence and one per
//                 empty alternative; annotation disjunctions unexpanded.
//   n_disjuncts   the same arcs with annotation disjunctions multiplied out
//                 into arcs with a unique (disjunction-free) annotation.
//   n_constraints symbol occurrences plus atomic annotation constraints;
//                 mark insertions and lexicon entries do not count.
//   n_disjunctions right-hand-side alternations plus annotation disjunctions.
struct GrammarStats {
  int n_rules = 0;
  int n_arcs = 0;
  int n_disjuncts = 0;
  int n_constraints = 0;
  int n_disjunctions = 0;

  bool operator==(const GrammarStats&) const = default;
};

GrammarStats grammar_stats(const Grammar& grammar);

// Number of disjunction-free alternatives of an annotation.
long long annotation_alternatives(const Annotation& annotation);

std::string stats_to_json(const GrammarStats& stats);

}  // namespace gramcov

#endif  // GRAMCOV_GRAMMAR_STATS_H_
