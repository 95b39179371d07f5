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

// Reference implementations used to check the library. They share only the
// grammar object model and the feature graph with the code under test.

#ifndef GRAMCOV_TESTS_ORACLES_H_
#define GRAMCOV_TESTS_ORACLES_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gramcov/coverage.h"
#include "gramcov/feature_graph.h"
#include "gramcov/grammar.h"
#include "gramcov/grammar_stats.h"
#include "gramcov/lexicon.h"
#include "gramcov/parser.h"

namespace oracle {

using gramcov::MarkMultiset;

// One complete derivation found by exhaustive top-down search.
struct Derivation {
  std::string fs;
  // Marks collected from the mark insertions on the derivation.
  MarkMultiset marks;
  // Marks looked up from the alternatives the derivation took.
  MarkMultiset choice_marks;
};

// Enumerates every derivation of a token string over an instrumented (or
// plain) normalized grammar, by recursive descent over the right-hand side
// expressions with memoized constituents. Meant for short inputs only.
class DerivationOracle {
 public:
  DerivationOracle(const gramcov::Grammar& grammar, const gramcov::Lexicon& lexicon);
  ~DerivationOracle();

  std::vector<Derivation> derive(const std::vector<std::string>& tokens);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<std::string> split_tokens(const std::string& text);

// Grammar size figures by direct recursion over the unnormalized grammar.
gramcov::GrammarStats brute_stats(const gramcov::Grammar& grammar);

// Number of marks instrumentation has to place.
int expected_table_size(const gramcov::Grammar& grammar);

// Rule categories not reachable from the start category, by breadth-first
// search over the category reference graph.
std::set<std::string> unreachable_categories(const gramcov::Grammar& grammar);

// Rule categories that derive no terminal string, by least fixpoint.
std::set<std::string> nonterminating_categories(const gramcov::Grammar& grammar);

// Items of a pair are equivalent if their sets of per-solution id sets are
// equal, strictly equivalent if their solution multisets are equal.
bool rows_equivalent(const gramcov::UsageRow& a, const gramcov::UsageRow& b, bool strict);

// Random usage matrix with up to `max_items` rows over up to `max_disjuncts`
// disjuncts; about a tenth of the rows do not parse.
gramcov::UsageMatrix random_matrix(std::mt19937_64& rng, int max_items, int max_disjuncts);

// Random grammar source over categories C0..C5 (rules) and W0..W2 (lexical),
// with alternations, ?, *, + and annotation disjunctions.
std::string random_grammar(std::mt19937_64& rng);

// The sample VP rule with its optional object and iterated PP carrying an
// OBL/ADJUNCT annotation disjunction, and a matching lexicon.
extern const char kSampleRule[];
extern const char kSampleLexicon[];

// Legal disjunct sets of the sample rule when at most `bound` PPs attach.
std::set<std::vector<int>> sample_rule_combinations(int bound);

}  // namespace oracle

#endif  // GRAMCOV_TESTS_ORACLES_H_
