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

// Genre specialization: grammars pruned to the disjuncts a training corpus
// exercises, run comparisons, fragment-grammar sweeps and staged parsing.

#ifndef GRAMCOV_SPECIALIZER_H_
#define GRAMCOV_SPECIALIZER_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "gramcov/grammar.h"
#include "gramcov/grammar_stats.h"
#include "gramcov/lexicon.h"
#include "gramcov/parser.h"

namespace gramcov {

// Decides whether solution `index` of `record` counts as evidence. The
// default accepts every solution of a parsed item.
using SolutionFilter = std::function<bool(const ParseRecord& record, std::size_t index)>;

std::set<int> exercised_disjuncts(const std::vector<ParseRecord>& records,
                                  const SolutionFilter& filter = {});

// Prunes every disjunct of the instrumented `base` that is not in `kept`.
// A disjunction left with one alternative becomes obligatory; one left with
// none kills the enclosing constituent, and through it possibly the rule.
// Rules that become unproductive or unreachable are dropped, and references
// to them pruned, until nothing changes. The result keeps the base
// numbering but is marked pruned.
Grammar derive_grammar(const Grammar& base, const std::set<int>& kept);

// The marks-free source form of a derived grammar, loadable as a new base.
// Empty elements left behind by pruning are dropped from sequences.
Grammar plain_grammar(const Grammar& derived);

struct ReducedGrammar {
  std::set<int> kept;
  Grammar grammar;
  std::vector<std::string> training_ids;
  GrammarStats stats;
};

// Throws InputError when no training item parsed.
ReducedGrammar reduce_grammar(const Grammar& base, const std::vector<ParseRecord>& training,
                              const SolutionFilter& filter = {});

struct RunTiming {
  double total_s = 0.0;
  double max_s = 0.0;
  double avg_s = 0.0;
  // Average solution count over parsed items.
  double avg_solutions = 0.0;
  int parsed = 0;
};

RunTiming run_timing(const std::vector<ParseRecord>& records);

struct RunComparison {
  int items = 0;
  // Parsed by both, with different solution sets.
  std::vector<std::string> mismatches;
  // Resource limits hit under the base grammar only.
  std::vector<std::string> additions;
  // Parsed by the base grammar only.
  std::vector<std::string> lost;
  RunTiming base;
  RunTiming reduced;

  double speedup() const;
};

// Throws InputError unless both runs cover the same ids in the same order.
RunComparison compare_runs(const std::vector<ParseRecord>& base,
                           const std::vector<ParseRecord>& reduced);

struct PairedRuns {
  std::vector<ParseRecord> base;
  std::vector<ParseRecord> reduced;
};

// Parses `items` with both grammars in `repeat` alternating rounds. Records
// come from the first round; each record's elapsed time is its fastest.
PairedRuns paired_runs(const CompiledGrammar& base, const CompiledGrammar& reduced,
                       const std::vector<TestItem>& items, const ParseOptions& options,
                       int jobs, int repeat);

// Deterministic sample order for one sweep trial; portable across standard
// libraries.
std::vector<std::size_t> trial_permutation(std::size_t n, std::uint64_t seed, int trial);

struct SweepRow {
  std::size_t size = 0;
  std::string trial;  // trial number, or "train"/"test" for the anchors
  long long parsed = 0;
  long long total = 0;
  double runtime_s = 0.0;
  std::set<int> kept;

  std::string coverage_pct() const;
};

struct SweepOptions {
  std::vector<std::size_t> sizes;
  int trials = 3;
  std::uint64_t seed = 1;
  ParseOptions parse;
  int jobs = 1;
};

// `pool` holds the base grammar's records for the training pool. Each trial
// draws one permutation of the pool; the sample of size s is its first s
// items, so samples are nested within a trial. Anchor rows report the
// full-pool reduced grammar on the pool ("train") and on the test set
// ("test").
std::vector<SweepRow> fragment_sweep(const Grammar& base, const Lexicon& lexicon,
                                     const std::vector<ParseRecord>& pool,
                                     const std::vector<TestItem>& test,
                                     const SweepOptions& options);

// size,trial,coverage_pct,runtime_s
std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool include_runtime = true);

// Number of training items using each exercised disjunct.
std::map<int, int> item_frequencies(const std::vector<ParseRecord>& records,
                                    const SolutionFilter& filter = {});

// Nearest-rank percentile of the nonzero frequencies; 1 when there are none.
int percentile_threshold(const std::map<int, int>& frequencies, double percentile);

struct Stage {
  std::set<int> kept;
  Grammar grammar;
  // Stage 1 with an empty disjunct set, or one whose grammar derives no
  // sentence, is skipped at parse time.
  bool skipped = false;
};

struct StagedGrammar {
  int threshold = 1;
  // Frequent disjuncts, all exercised disjuncts, the base grammar.
  std::array<Stage, 3> stages;
  std::vector<std::string> warnings;
};

// Throws InputError for a threshold below 1.
StagedGrammar build_staged(const Grammar& base, const std::vector<ParseRecord>& training,
                           int threshold, const SolutionFilter& filter = {});

struct StagedRecord {
  ParseRecord record;
  int stage = 3;  // 1-based stage that produced the result
};

class StagedParser {
 public:
  StagedParser(const StagedGrammar& staged, const Lexicon& lexicon);

  // Tries the stages in order until one parses. Resource limits in stages 1
  // and 2 fall through to the next stage; elapsed time and edges add up.
  StagedRecord parse(const TestItem& item, const ParseOptions& options) const;
  std::vector<StagedRecord> parse_all(const std::vector<TestItem>& items,
                                      const ParseOptions& options, int jobs = 1) const;

 private:
  std::array<std::shared_ptr<const CompiledGrammar>, 3> compiled_;
};

}  // namespace gramcov

#endif  // GRAMCOV_SPECIALIZER_H_
