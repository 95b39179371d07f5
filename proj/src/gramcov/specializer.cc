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

#include "gramcov/specializer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "gramcov/coverage.h"
#include "gramcov/errors.h"
#include "gramcov/instrument.h"
#include "gramcov/parallel.h"
#include "gramcov/validate.h"

namespace gramcov {

std::set<int> exercised_disjuncts(const std::vector<ParseRecord>& records,
                                  const SolutionFilter& filter) {
  std::set<int> ids;
  for (const ParseRecord& record : records) {
    if (!record.parseable()) continue;
    for (std::size_t i = 0; i < record.solutions.size(); ++i) {
      if (filter && !filter(record, i)) continue;
      for (const auto& [id, count] : record.solutions[i].marks) ids.insert(id);
    }
  }
  return ids;
}

namespace {

using Kind = RhsExpr::Kind;

class Pruner {
 public:
  Pruner(const std::set<int>& kept, const std::set<std::string>& removed)
      : kept_(kept), removed_(removed) {}

  bool keeps(int disjunct) const { return disjunct == 0 || kept_.count(disjunct) > 0; }

  // Returns false when no alternative of some disjunction survives.
  bool annotation(Annotation& conjunction) {
    std::vector<Annotation> out;
    for (Annotation& child : conjunction.children) {
      if (child.kind != Annotation::Kind::kDisjunction) {
        out.push_back(std::move(child));
        continue;
      }
      std::vector<Annotation> survivors;
      for (Annotation& branch : child.children) {
        if (keeps(branch.disjunct) && annotation(branch)) survivors.push_back(std::move(branch));
      }
      if (survivors.empty()) return false;
      if (survivors.size() == 1) {
        for (Annotation& inner : survivors.front().children) out.push_back(std::move(inner));
      } else {
        child.children = std::move(survivors);
        out.push_back(std::move(child));
      }
    }
    conjunction.children = std::move(out);
    return true;
  }

  bool expr(RhsExpr& e) {
    switch (e.kind) {
      case Kind::kSymbol:
        if (removed_.count(e.category)) return false;
        return annotation(e.annotation);
      case Kind::kEmpty:
        return annotation(e.annotation);
      case Kind::kPlus:
        return expr(e.children.front());
      case Kind::kSequence: {
        std::vector<RhsExpr> flat;
        for (RhsExpr& child : e.children) {
          if (!expr(child)) return false;
          if (child.kind == Kind::kSequence) {
            for (RhsExpr& inner : child.children) flat.push_back(std::move(inner));
          } else {
            flat.push_back(std::move(child));
          }
        }
        e.children = std::move(flat);
        return true;
      }
      case Kind::kAlternation: {
        std::vector<RhsExpr> survivors;
        for (RhsExpr& branch : e.children) {
          if (keeps(branch.disjunct) && expr(branch)) survivors.push_back(std::move(branch));
        }
        if (survivors.empty()) return false;
        if (survivors.size() == 1) {
          RhsExpr only = std::move(survivors.front());
          e = std::move(only);
        } else {
          e.children = std::move(survivors);
        }
        return true;
      }
      case Kind::kOptional:
      case Kind::kStar:
        break;
    }
    throw InternalError("derive_grammar needs a normalized grammar");
  }

 private:
  const std::set<int>& kept_;
  const std::set<std::string>& removed_;
};

RhsExpr plain_expr(const RhsExpr& expr) {
  RhsExpr result = expr;
  result.children.clear();
  for (const RhsExpr& child : expr.children) {
    RhsExpr plain = plain_expr(child);
    bool bare_empty = plain.kind == RhsExpr::Kind::kEmpty && plain.annotation.children.empty();
    if (expr.kind == RhsExpr::Kind::kSequence && bare_empty) continue;
    result.children.push_back(std::move(plain));
  }
  if (expr.kind == RhsExpr::Kind::kSequence && result.children.empty()) {
    RhsExpr empty;
    empty.kind = RhsExpr::Kind::kEmpty;
    result.children.push_back(std::move(empty));
  }
  return result;
}

}  // namespace

Grammar plain_grammar(const Grammar& derived) {
  Grammar result = derived;
  for (Rule& rule : result.rules) rule.rhs = plain_expr(strip_mark_insertions(rule.rhs));
  result.instrumented = false;
  result.pruned = false;
  return result;
}

Grammar derive_grammar(const Grammar& base, const std::set<int>& kept) {
  if (!base.instrumented) throw InputError("derive_grammar needs an instrumented grammar");
  std::set<std::string> removed;
  while (true) {
    Grammar derived = base;
    derived.rules.clear();
    derived.pruned = true;
    Pruner pruner(kept, removed);
    std::set<std::string> newly_removed;
    for (const Rule& rule : base.rules) {
      if (removed.count(rule.lhs)) continue;
      Rule copy = rule;
      if (pruner.expr(copy.rhs)) {
        derived.rules.push_back(std::move(copy));
      } else {
        newly_removed.insert(rule.lhs);
      }
    }
    if (newly_removed.empty()) {
      for (const Diagnostic& d : validate_grammar(derived)) {
        if (derived.find_rule(d.category) != nullptr) newly_removed.insert(d.category);
      }
    }
    if (newly_removed.empty()) return derived;
    removed.insert(newly_removed.begin(), newly_removed.end());
  }
}

ReducedGrammar reduce_grammar(const Grammar& base, const std::vector<ParseRecord>& training,
                              const SolutionFilter& filter) {
  bool any = std::any_of(training.begin(), training.end(),
                         [](const ParseRecord& r) { return r.parseable(); });
  if (!any) throw InputError("no training item parsed; refusing to build an empty grammar");
  ReducedGrammar reduced;
  reduced.kept = exercised_disjuncts(training, filter);
  reduced.grammar = derive_grammar(base, reduced.kept);
  for (const ParseRecord& record : training) reduced.training_ids.push_back(record.id);
  reduced.stats = grammar_stats(reduced.grammar);
  return reduced;
}

RunTiming run_timing(const std::vector<ParseRecord>& records) {
  RunTiming timing;
  long long solutions = 0;
  for (const ParseRecord& record : records) {
    timing.total_s += record.elapsed;
    timing.max_s = std::max(timing.max_s, record.elapsed);
    if (record.parseable()) {
      ++timing.parsed;
      solutions += static_cast<long long>(record.solutions.size());
    }
  }
  if (!records.empty()) timing.avg_s = timing.total_s / static_cast<double>(records.size());
  if (timing.parsed > 0) timing.avg_solutions = static_cast<double>(solutions) / timing.parsed;
  return timing;
}

double RunComparison::speedup() const {
  return reduced.total_s > 0.0 ? base.total_s / reduced.total_s : 0.0;
}

namespace {

std::set<std::string> solution_set(const ParseRecord& record) {
  std::set<std::string> out;
  for (const Solution& solution : record.solutions) out.insert(solution.fs);
  return out;
}

}  // namespace

PairedRuns paired_runs(const CompiledGrammar& base, const CompiledGrammar& reduced,
                       const std::vector<TestItem>& items, const ParseOptions& options,
                       int jobs, int repeat) {
  if (repeat < 1) throw InputError("repeat must be at least 1");
  PairedRuns runs;
  auto keep_fastest = [](std::vector<ParseRecord>& kept, const std::vector<ParseRecord>& round) {
    for (std::size_t i = 0; i < kept.size(); ++i) {
      kept[i].elapsed = std::min(kept[i].elapsed, round[i].elapsed);
    }
  };
  for (int round = 0; round < repeat; ++round) {
    // Alternate which grammar goes first so warm-up effects even out.
    bool base_first = round % 2 == 0;
    for (int pass = 0; pass < 2; ++pass) {
      bool is_base = (pass == 0) == base_first;
      std::vector<ParseRecord> records =
          parse_items(is_base ? base : reduced, items, options, jobs);
      std::vector<ParseRecord>& kept = is_base ? runs.base : runs.reduced;
      if (round == 0) {
        kept = std::move(records);
      } else {
        keep_fastest(kept, records);
      }
    }
  }
  return runs;
}

RunComparison compare_runs(const std::vector<ParseRecord>& base,
                           const std::vector<ParseRecord>& reduced) {
  if (base.size() != reduced.size()) {
    throw InputError("runs cover different items (" + std::to_string(base.size()) + " vs " +
                     std::to_string(reduced.size()) + ")");
  }
  RunComparison comparison;
  comparison.items = static_cast<int>(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const ParseRecord& b = base[i];
    const ParseRecord& r = reduced[i];
    if (b.id != r.id) {
      throw InputError("runs cover different items ('" + b.id + "' vs '" + r.id + "')");
    }
    if (b.parseable() && r.parseable()) {
      if (solution_set(b) != solution_set(r)) comparison.mismatches.push_back(b.id);
    } else if (b.status == ParseStatus::kResourceExceeded && r.parseable()) {
      comparison.additions.push_back(b.id);
    } else if (b.parseable()) {
      comparison.lost.push_back(b.id);
    }
  }
  comparison.base = run_timing(base);
  comparison.reduced = run_timing(reduced);
  return comparison;
}

namespace {

// Uniform draw in [0, range) by rejection; std::uniform_int_distribution is
// not specified bit-exactly across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t max = std::mt19937_64::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % range;
}

}  // namespace

std::vector<std::size_t> trial_permutation(std::size_t n, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::string SweepRow::coverage_pct() const {
  return total > 0 ? truncate_two_decimals(100 * parsed, total) : "0.00";
}

namespace {

SweepRow measure(const Grammar& grammar, const Lexicon& lexicon,
                 const std::vector<TestItem>& items, const SweepOptions& options) {
  SweepRow row;
  row.total = static_cast<long long>(items.size());
  if (grammar.rules.empty()) return row;
  auto compiled = compile(grammar, lexicon);
  for (const ParseRecord& record : parse_items(*compiled, items, options.parse, options.jobs)) {
    row.runtime_s += record.elapsed;
    if (record.parseable()) ++row.parsed;
  }
  return row;
}

// A sample with no parsed item yields the empty grammar.
Grammar fragment_grammar(const Grammar& base, const std::vector<ParseRecord>& sample,
                         const std::set<int>& kept) {
  bool any = std::any_of(sample.begin(), sample.end(),
                         [](const ParseRecord& r) { return r.parseable(); });
  if (any) return derive_grammar(base, kept);
  Grammar empty = base;
  empty.rules.clear();
  empty.pruned = true;
  return empty;
}

}  // namespace

std::vector<SweepRow> fragment_sweep(const Grammar& base, const Lexicon& lexicon,
                                     const std::vector<ParseRecord>& pool,
                                     const std::vector<TestItem>& test,
                                     const SweepOptions& options) {
  for (std::size_t size : options.sizes) {
    if (size > pool.size()) {
      throw InputError("sample size " + std::to_string(size) + " exceeds the pool of " +
                       std::to_string(pool.size()) + " items");
    }
  }
  if (options.trials < 1) throw InputError("at least one trial is required");
  std::vector<SweepRow> rows;
  for (int trial = 1; trial <= options.trials; ++trial) {
    std::vector<std::size_t> order = trial_permutation(pool.size(), options.seed, trial);
    for (std::size_t size : options.sizes) {
      std::vector<ParseRecord> sample;
      for (std::size_t i = 0; i < size; ++i) sample.push_back(pool[order[i]]);
      std::set<int> kept = exercised_disjuncts(sample);
      SweepRow row = measure(fragment_grammar(base, sample, kept), lexicon, test, options);
      row.size = size;
      row.trial = std::to_string(trial);
      row.kept = std::move(kept);
      rows.push_back(std::move(row));
    }
  }
  std::set<int> kept = exercised_disjuncts(pool);
  Grammar full = fragment_grammar(base, pool, kept);
  std::vector<TestItem> pool_items;
  for (const ParseRecord& record : pool) {
    pool_items.push_back({record.id, record.text, record.grammatical});
  }
  for (const char* anchor : {"train", "test"}) {
    SweepRow row = measure(full, lexicon, anchor[1] == 'r' ? pool_items : test, options);
    row.size = pool.size();
    row.trial = anchor;
    row.kept = kept;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool include_runtime) {
  std::string out = include_runtime ? "size,trial,coverage_pct,runtime_s\n"
                                    : "size,trial,coverage_pct\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.size) + "," + row.trial + "," + row.coverage_pct();
    if (include_runtime) {
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), ",%.3f", row.runtime_s);
      out += buffer;
    }
    out += "\n";
  }
  return out;
}

std::map<int, int> item_frequencies(const std::vector<ParseRecord>& records,
                                    const SolutionFilter& filter) {
  std::map<int, int> frequencies;
  for (const ParseRecord& record : records) {
    std::vector<ParseRecord> single = {record};
    for (int id : exercised_disjuncts(single, filter)) ++frequencies[id];
  }
  return frequencies;
}

int percentile_threshold(const std::map<int, int>& frequencies, double percentile) {
  std::vector<int> values;
  for (const auto& [id, count] : frequencies) {
    if (count > 0) values.push_back(count);
  }
  if (values.empty()) return 1;
  std::sort(values.begin(), values.end());
  double rank = std::ceil(percentile / 100.0 * static_cast<double>(values.size()));
  std::size_t index = static_cast<std::size_t>(std::clamp(rank, 1.0, double(values.size())));
  return std::max(1, values[index - 1]);
}

StagedGrammar build_staged(const Grammar& base, const std::vector<ParseRecord>& training,
                           int threshold, const SolutionFilter& filter) {
  if (threshold < 1) throw InputError("stage threshold must be at least 1");
  if (!base.instrumented) throw InputError("staged grammars need an instrumented grammar");
  StagedGrammar staged;
  staged.threshold = threshold;
  std::map<int, int> frequencies = item_frequencies(training, filter);
  for (const auto& [id, count] : frequencies) {
    if (count >= threshold) staged.stages[0].kept.insert(id);
    staged.stages[1].kept.insert(id);
  }
  for (int id = 1; id <= static_cast<int>(base.table->size()); ++id) {
    staged.stages[2].kept.insert(id);
  }
  for (int s = 0; s < 2; ++s) {
    Stage& stage = staged.stages[s];
    if (stage.kept.empty()) {
      stage.skipped = true;
      staged.warnings.push_back("stage " + std::to_string(s + 1) +
                                " has no disjuncts and is skipped");
      stage.grammar = base;
      stage.grammar.rules.clear();
      stage.grammar.pruned = true;
    } else {
      stage.grammar = derive_grammar(base, stage.kept);
      if (stage.grammar.rules.empty()) {
        stage.skipped = true;
        staged.warnings.push_back("stage " + std::to_string(s + 1) +
                                  " derives no sentence and is skipped");
      }
    }
  }
  staged.stages[2].grammar = base;
  return staged;
}

StagedParser::StagedParser(const StagedGrammar& staged, const Lexicon& lexicon) {
  for (int s = 0; s < 3; ++s) {
    if (!staged.stages[s].skipped) compiled_[s] = compile(staged.stages[s].grammar, lexicon);
  }
}

StagedRecord StagedParser::parse(const TestItem& item, const ParseOptions& options) const {
  StagedRecord result;
  double elapsed = 0.0;
  long long edges = 0;
  for (int s = 0; s < 3; ++s) {
    if (compiled_[s] == nullptr) continue;
    ParseRecord record = parse_item(*compiled_[s], item, options);
    elapsed += record.elapsed;
    edges += record.edges;
    if (record.parseable() || s == 2) {
      record.elapsed = elapsed;
      record.edges = edges;
      result.record = std::move(record);
      result.stage = s + 1;
      return result;
    }
  }
  throw InternalError("staged grammar without a final stage");
}

std::vector<StagedRecord> StagedParser::parse_all(const std::vector<TestItem>& items,
                                                  const ParseOptions& options, int jobs) const {
  std::vector<StagedRecord> records(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t i) { records[i] = parse(items[i], options); });
  return records;
}

}  // namespace gramcov
