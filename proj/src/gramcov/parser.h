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

// Agenda-driven chart parser over the context-free backbone. Every rule's
// normalized right-hand side is compiled into a Thompson automaton whose
// arcs carry the disjunctive normal form of their annotation, so each
// annotation alternative is tried as a separate edge. Edges own private
// feature graphs; marks are collected in a log beside the graph and never
// take part in unification.

#ifndef GRAMCOV_PARSER_H_
#define GRAMCOV_PARSER_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gramcov/feature_graph.h"
#include "gramcov/grammar.h"
#include "gramcov/lexicon.h"
#include "gramcov/suite.h"

namespace gramcov {

// Disjunct serial -> occurrence count.
using MarkMultiset = std::map<int, int>;

struct ResourceLimits {
  double max_seconds = 10.0;
  long long max_edges = 200000;
};

struct ParseOptions {
  bool fold_case = false;
  // Unknown tokens throw InputError instead of yielding NoParse.
  bool unknown_token_error = false;
  ResourceLimits limits;
};

struct Token {
  std::string surface;
  int position = 0;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::vector<std::string> unknown;
};

TokenizeResult tokenize(std::string_view text, const Lexicon& lexicon, bool fold_case);

struct Solution {
  std::string fs;  // canonical feature structure
  MarkMultiset marks;
  // Disjuncts recomputed from the alternatives taken by the derivation,
  // independently of the mark annotations.
  MarkMultiset trace_marks;
  // Exercised constraint serials (see GrammarStats::n_constraints).
  std::vector<int> constraints;
  // Alternatives taken, as (disjunction, branch), in derivation order.
  std::vector<std::pair<int, int>> choices;
};

enum class ParseStatus { kParsed, kNoParse, kResourceExceeded };

const char* status_name(ParseStatus status);
ParseStatus parse_status(std::string_view name);

struct ParseRecord {
  std::string id;
  std::string text;
  bool grammatical = true;
  ParseStatus status = ParseStatus::kNoParse;
  std::vector<Solution> solutions;
  double elapsed = 0.0;  // wall-clock seconds
  long long edges = 0;
  std::string note;

  bool parseable() const { return status == ParseStatus::kParsed; }
};

Solution strip_marks(Solution solution);

class CompiledGrammar;

// Compiles `grammar` (instrumented or not) with `lexicon` for parsing. The
// result is immutable and may be shared between threads.
std::shared_ptr<const CompiledGrammar> compile(const Grammar& grammar, const Lexicon& lexicon);

const Grammar& compiled_source(const CompiledGrammar& compiled);

ParseRecord parse_item(const CompiledGrammar& compiled, const TestItem& item,
                       const ParseOptions& options);

// Parses all items, on `jobs` threads; results are in item order.
std::vector<ParseRecord> parse_items(const CompiledGrammar& compiled,
                                     const std::vector<TestItem>& items,
                                     const ParseOptions& options, int jobs = 1);

}  // namespace gramcov

#endif  // GRAMCOV_PARSER_H_
