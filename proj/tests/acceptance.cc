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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.
//
//   acceptance [--data DIR] [--cli PATH] [--only N]

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gramcov/coverage.h"
#include "gramcov/errors.h"
#include "gramcov/grammar.h"
#include "gramcov/instrument.h"
#include "gramcov/lexicon.h"
#include "gramcov/overgen.h"
#include "gramcov/parser.h"
#include "gramcov/records.h"
#include "gramcov/reports.h"
#include "gramcov/specializer.h"
#include "gramcov/suite.h"
#include "gramcov/suite_tools.h"
#include "oracles.h"

namespace {

using namespace gramcov;  // NOLINT
namespace fs = std::filesystem;

std::string g_data = GRAMCOV_DATA_DIR;
std::string g_cli = GRAMCOV_CLI;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome verdict(bool pass, std::string detail) { return {pass, std::move(detail)}; }

std::string data(const std::string& relative) { return g_data + "/" + relative; }

// Shared inputs, loaded on first use.
struct Fixtures {
  Grammar plain;
  Grammar instrumented;
  Lexicon lexicon;
  std::vector<TestItem> toy_suite;
  std::shared_ptr<const CompiledGrammar> compiled;
  std::vector<ParseRecord> toy_records;

  static Fixtures& get() {
    static Fixtures f;
    return f;
  }

  const std::vector<TestItem>& corpus(const std::string& name) {
    auto it = corpora_.find(name);
    if (it == corpora_.end()) {
      it = corpora_.emplace(name, parse_corpus(read_file(data("genre/" + name + ".txt")), name))
               .first;
    }
    return it->second;
  }

  const std::vector<ParseRecord>& corpus_records(const std::string& name) {
    auto it = records_.find(name);
    if (it == records_.end()) it = records_.emplace(name, parse_items(*compiled, corpus(name), {})).first;
    return it->second;
  }

 private:
  Fixtures() {
    plain = parse_grammar(read_file(data("toy/toy.gram")));
    instrumented = instrument(plain);
    lexicon = Lexicon::parse(read_file(data("toy/toy.lex")));
    toy_suite = parse_suite_jsonl(read_file(data("toy/toy_suite.jsonl")));
    compiled = compile(instrumented, lexicon);
    toy_records = parse_items(*compiled, toy_suite, {});
  }

  std::map<std::string, std::vector<TestItem>> corpora_;
  std::map<std::string, std::vector<ParseRecord>> records_;
};

std::vector<std::string> sorted_fs(const std::vector<Solution>& solutions) {
  std::vector<std::string> out;
  for (const Solution& s : solutions) out.push_back(s.fs);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> parseable_ids(const std::vector<ParseRecord>& records) {
  std::set<std::string> out;
  for (const ParseRecord& r : records) {
    if (r.parseable()) out.insert(r.id);
  }
  return out;
}

std::set<int> exercised(const UsageMatrix& m, const std::vector<std::string>* only = nullptr) {
  std::set<int> out;
  for (const UsageRow& row : m.rows) {
    if (!row.parseable()) continue;
    if (only && std::find(only->begin(), only->end(), row.id) == only->end()) continue;
    for (const auto& [id, count] : row.total) out.insert(id);
  }
  return out;
}

Outcome mark_placement() {
  Grammar g = instrument(parse_grammar(oracle::kSampleRule));
  const std::string expected =
      "VP --> V: !=^;\n"
      "       { e: DISJUNCT-001 $ o*; | NP: !=^OBJ; DISJUNCT-002 $ o*; }\n"
      "       { e: DISJUNCT-003 $ o*; | PP+: { !=^OBL; DISJUNCT-004 $ o*; | ! $ "
      "^ADJUNCT; DISJUNCT-005 $ o*; } }.\n";
  std::string printed = print_grammar(g);
  return verdict(g.table->size() == 5 && printed == expected,
                 std::to_string(g.table->size()) + " marks");
}

Outcome semantics_preserved() {
  Fixtures& f = Fixtures::get();
  auto plain = compile(f.plain, f.lexicon);
  std::vector<ParseRecord> base = parse_items(*plain, f.toy_suite, {});
  int discrepancies = 0;
  std::size_t solutions = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<Solution> stripped;
    for (const Solution& s : f.toy_records[i].solutions) stripped.push_back(strip_marks(s));
    if (base[i].status != f.toy_records[i].status ||
        sorted_fs(base[i].solutions) != sorted_fs(stripped)) {
      ++discrepancies;
    }
    solutions += stripped.size();
  }
  return verdict(discrepancies == 0, std::to_string(base.size()) + " items, " +
                                         std::to_string(solutions) + " solutions, " +
                                         std::to_string(discrepancies) + " discrepancies");
}

Outcome marks_match_oracle() {
  Fixtures& f = Fixtures::get();
  oracle::DerivationOracle o(f.instrumented, f.lexicon);
  int discrepancies = 0;
  std::size_t solutions = 0;
  for (const ParseRecord& r : f.toy_records) {
    std::vector<std::pair<std::string, MarkMultiset>> parsed;
    for (const Solution& s : r.solutions) {
      if (s.marks != s.trace_marks) ++discrepancies;
      parsed.emplace_back(s.fs, s.marks);
    }
    std::vector<std::pair<std::string, MarkMultiset>> derived;
    for (const oracle::Derivation& d : o.derive(oracle::split_tokens(r.text))) {
      if (d.marks != d.choice_marks) ++discrepancies;
      derived.emplace_back(d.fs, d.marks);
    }
    std::sort(parsed.begin(), parsed.end());
    std::sort(derived.begin(), derived.end());
    if (parsed != derived) ++discrepancies;
    solutions += parsed.size();
  }
  return verdict(discrepancies == 0,
                 std::to_string(solutions) + " solutions, " + std::to_string(discrepancies) +
                     " discrepancies");
}

Outcome disjunct_coverage_display() {
  std::string a = Ratio{1456, 3730}.display();
  std::string b = Ratio{1081, 3730}.display();
  return verdict(a == "0.39" && b == "0.28", a + " " + b);
}

Outcome relative_size_display() {
  std::vector<std::pair<std::pair<int, int>, std::string>> cases = {
      {{783, 1093}, "71%"}, {{214, 1093}, "19%"}, {{1600, 1787}, "89%"}, {{331, 1787}, "18%"}};
  bool pass = true;
  std::string detail;
  for (const auto& [ratio, expected] : cases) {
    ReductionReport r;
    r.original_count = ratio.second;
    r.reduced_count = ratio.first;
    std::string shown = r.relative_size();
    pass = pass && shown == expected;
    detail += shown + " ";
  }
  return verdict(pass, detail);
}

Outcome similarity_properties() {
  std::mt19937_64 rng(6);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    UsageMatrix m = oracle::random_matrix(rng, 40, 60);
    ReductionReport r = similarity_reduce(m);
    if (exercised(m) != exercised(m, &r.kept)) ++violations;
    if (r.reduced_count > r.original_count || r.reduced_count != static_cast<int>(r.kept.size())) {
      ++violations;
    }
    if (similarity_reduce(restrict_rows(m, r.kept)).kept != r.kept) ++violations;
  }
  return verdict(violations == 0, "200 matrices, " + std::to_string(violations) + " violations");
}

Outcome equivalence_refinement() {
  Fixtures& f = Fixtures::get();
  std::vector<UsageMatrix> fixtures = {accumulate_usage(f.toy_records, *f.instrumented.table)};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) fixtures.push_back(oracle::random_matrix(rng, 40, 60));
  int violations = 0;
  Grammar empty;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const UsageMatrix& m = fixtures[i];
    const Grammar& g = i == 0 ? f.instrumented : empty;
    if (!refines(equivalence_classes(m, EquivalenceMode::kStrict),
                 equivalence_classes(m, EquivalenceMode::kEquivalence))) {
      ++violations;
    }
    Ratio before = coverage_report(m, g).t_dis;
    Ratio after = coverage_report(restrict_rows(m, equivalence_reduce(m).kept), g).t_dis;
    if (before.numerator != after.numerator || before.denominator != after.denominator) {
      ++violations;
    }
  }
  return verdict(violations == 0, std::to_string(fixtures.size()) + " fixtures, " +
                                      std::to_string(violations) + " violations");
}

Outcome interaction_oracle() {
  Grammar g = instrument(parse_grammar(oracle::kSampleRule));
  Lexicon lexicon = Lexicon::parse(oracle::kSampleLexicon);
  auto compiled = compile(g, lexicon);
  std::set<std::vector<int>> legal = oracle::sample_rule_combinations(1);
  bool exact = false;
  bool pass = enumerate_combinations(g, {}, &exact) == legal && exact && legal.size() == 6;
  std::mt19937_64 rng(8);
  const char* verbs[] = {"sees", "sleeps"};
  const char* objects[] = {"mary", "john"};
  const char* pps[] = {"home", "there"};
  int mismatches = 0;
  for (int suite = 0; suite < 20; ++suite) {
    std::vector<TestItem> items;
    int n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < n; ++i) {
      std::string text = verbs[rng() % 2];
      if (rng() % 2) text += std::string(" ") + objects[rng() % 2];
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) text += std::string(" ") + pps[rng() % 2];
      items.push_back({"i" + std::to_string(i), text, true});
    }
    UsageMatrix m = accumulate_usage(parse_items(*compiled, items, {}), *g.table);
    std::set<std::vector<int>> witnessed;
    for (const UsageRow& row : m.rows) {
      for (const MarkMultiset& s : row.solutions) {
        std::vector<int> ids;
        for (const auto& [id, count] : s) ids.push_back(id);
        if (legal.count(ids)) witnessed.insert(ids);
      }
    }
    InteractionCoverage c = interaction_coverage(g, m, {});
    if (c.ratio.denominator != 6 ||
        c.ratio.numerator != static_cast<long long>(witnessed.size())) {
      ++mismatches;
    }
  }
  return verdict(pass && mismatches == 0,
                 "denominator " + std::to_string(legal.size()) + ", 20 suites, " +
                     std::to_string(mismatches) + " mismatches");
}

Outcome overgeneration_ranked_first() {
  Fixtures& f = Fixtures::get();
  Grammar g = instrument(parse_grammar(read_file(data("toy/toy_overgen.gram"))));
  int injected = 0;
  for (const DisjunctEntry& e : g.table->entries()) {
    if (e.comment.find("no agreement check") != std::string::npos) injected = e.id;
  }
  if (injected == 0) return verdict(false, "injected disjunct not found");
  std::vector<ParseRecord> records = parse_items(*compile(g, f.lexicon), f.toy_suite, {});
  int only_through = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].grammatical || !records[i].parseable() || f.toy_records[i].parseable()) continue;
    bool all_use = std::all_of(records[i].solutions.begin(), records[i].solutions.end(),
                               [&](const Solution& s) { return s.marks.count(injected) > 0; });
    if (all_use) ++only_through;
  }
  SuspectReport r = suspect_disjuncts(accumulate_usage(records, *g.table), 0);
  bool first = !r.suspects.empty() && r.suspects[0].id == injected;
  return verdict(first && only_through >= 10,
                 disjunct_name(injected) + " ranked " + (first ? "first" : "lower") + ", " +
                     std::to_string(only_through) + " items parse only through it");
}

Outcome specialization_fidelity() {
  Fixtures& f = Fixtures::get();
  const std::vector<ParseRecord>& train = f.corpus_records("news_train");
  ReducedGrammar reduced = reduce_grammar(f.instrumented, train);
  std::vector<ParseRecord> again =
      parse_items(*compile(reduced.grammar, f.lexicon), f.corpus("news_train"), {});
  RunComparison c = compare_runs(train, again);
  int limits = 0;
  for (const std::vector<ParseRecord>* records : {&train, static_cast<const std::vector<ParseRecord>*>(&again)}) {
    for (const ParseRecord& r : *records) limits += r.status == ParseStatus::kResourceExceeded;
  }
  bool pass = c.mismatches.empty() && c.lost.empty() && c.additions.empty() && limits == 0 &&
              parseable_ids(train) == parseable_ids(again);
  return verdict(pass, std::to_string(c.items) + " items, " +
                           std::to_string(parseable_ids(train).size()) + " parsed, " +
                           std::to_string(c.mismatches.size()) + " mismatches, " +
                           std::to_string(limits) + " resource limits");
}

Outcome specialization_speedup() {
  Fixtures& f = Fixtures::get();
  ReducedGrammar reduced = reduce_grammar(f.instrumented, f.corpus_records("news_train"));
  auto reduced_compiled = compile(reduced.grammar, f.lexicon);
  PairedRuns runs = paired_runs(*f.compiled, *reduced_compiled, f.corpus("news_test"), {}, 1, 5);
  RunComparison c = compare_runs(runs.base, runs.reduced);
  bool pass = c.reduced.total_s <= 0.7 * c.base.total_s;
  std::ostringstream detail;
  detail << std::fixed << std::setprecision(3) << c.items << " items, base " << c.base.total_s
         << " s, reduced " << c.reduced.total_s << " s, factor " << std::setprecision(2)
         << c.speedup();
  return verdict(pass, detail.str());
}

Outcome staged_equality() {
  Fixtures& f = Fixtures::get();
  const std::vector<ParseRecord>& train = f.corpus_records("news_train");
  bool pass = true;
  std::string detail;
  for (int threshold : {1, percentile_threshold(item_frequencies(train), 50.0)}) {
    StagedGrammar staged = build_staged(f.instrumented, train, threshold);
    StagedParser parser(staged, f.lexicon);
    for (const std::string& split : {std::string("toy"), std::string("news_test")}) {
      const std::vector<TestItem>& items = split == "toy" ? f.toy_suite : f.corpus(split);
      const std::vector<ParseRecord>& base =
          split == "toy" ? f.toy_records : f.corpus_records(split);
      std::vector<ParseRecord> staged_records;
      for (StagedRecord& r : parser.parse_all(items, {})) staged_records.push_back(std::move(r.record));
      bool equal = parseable_ids(staged_records) == parseable_ids(base);
      pass = pass && equal;
      detail += split + "@" + std::to_string(threshold) + " " +
                std::to_string(parseable_ids(base).size()) + (equal ? " equal; " : " differ; ");
    }
  }
  return verdict(pass, detail);
}

Outcome sweep_monotone() {
  Fixtures& f = Fixtures::get();
  SweepOptions options;
  options.sizes = {25, 50, 100, 200, 400};
  options.trials = 3;
  options.seed = 13;
  std::vector<SweepRow> rows = fragment_sweep(f.instrumented, f.lexicon,
                                              f.corpus_records("news_train"), f.corpus("news_test"),
                                              options);
  std::map<std::string, std::vector<const SweepRow*>> by_trial;
  for (const SweepRow& row : rows) {
    if (row.trial != "train" && row.trial != "test") by_trial[row.trial].push_back(&row);
  }
  int violations = 0;
  for (auto& [trial, series] : by_trial) {
    std::sort(series.begin(), series.end(),
              [](const SweepRow* a, const SweepRow* b) { return a->size < b->size; });
    if (series.size() != options.sizes.size()) ++violations;
    for (std::size_t i = 1; i < series.size(); ++i) {
      const SweepRow& small = *series[i - 1];
      const SweepRow& large = *series[i];
      if (!std::includes(large.kept.begin(), large.kept.end(), small.kept.begin(), small.kept.end())) {
        ++violations;
      }
      if (small.parsed > large.parsed) ++violations;
    }
  }
  std::string detail = std::to_string(by_trial.size()) + " trials x " +
                       std::to_string(options.sizes.size()) + " sizes, " +
                       std::to_string(violations) + " violations";
  return verdict(violations == 0 && by_trial.size() == 3, detail);
}

int run_cli(const std::string& args) {
  std::string command = g_cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs the CLI pipeline into `dir`; returns the failing step or "".
std::string cli_pipeline(const fs::path& dir) {
  fs::create_directories(dir);
  std::string g = "-g " + data("toy/toy.gram") + " -l " + data("toy/toy.lex");
  std::string records = (dir / "toy.records.jsonl").string();
  std::string train = (dir / "news.records.jsonl").string();
  std::string out = dir.string() + "/";
  std::vector<std::pair<std::string, std::string>> steps = {
      {"run", "run " + g + " -i " + data("toy/toy_suite.jsonl") + " -o " + records + " --seed 5"},
      {"run-news", "run " + g + " -i " + data("genre/news_train.txt") + " -o " + train + " --seed 5"},
      {"coverage", "coverage " + g + " -r " + records + " --interaction -o " + out + "coverage"},
      {"complete", "complete " + g + " -r " + records + " -o " + out + "complete"},
      {"reduce-suite", "reduce-suite " + g + " -r " + records + " --mode similarity -o " + out +
                           "reduce --kept " + out + "kept.txt"},
      {"suspects", "suspects " + g + " -r " + records + " -o " + out + "suspects"},
      {"fragments", "fragments " + g + " --train " + train + " --test " +
                        data("genre/news_test.txt") + " --sizes 50,100,200 --trials 2 --seed 5" +
                        " --csv " + out + "sweep.csv -o " + out + "fragments"},
      {"stage", "stage " + g + " --train " + train + " -i " + data("toy/toy_suite.jsonl") +
                    " --percentile 50 -o " + out + "stage"},
      {"specialize", "specialize " + g + " --train " + train + " --test " +
                         data("toy/toy_suite.jsonl") + " -o " + out + "specialize"},
  };
  for (const auto& [name, args] : steps) {
    if (run_cli(args) != 0) return name;
  }
  return "";
}

// File content with timing removed: JSON values lose their "timing" members,
// record streams lose them line by line, CSV tables lose the runtime_s
// column, other files compare as is.
std::string comparable(const fs::path& path) {
  std::string text = read_file(path.string());
  if (path.extension() == ".json") return strip_timing(Json::parse(text)).dump();
  if (path.extension() == ".jsonl") {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
      if (!line.empty()) out += strip_timing(Json::parse(line)).dump() + "\n";
    }
    return out;
  }
  if (path.extension() == ".csv") {
    std::istringstream in(text);
    std::string line, out;
    int drop = -1;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream row(line);
      for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
      if (drop < 0) {
        drop = static_cast<int>(std::find(cells.begin(), cells.end(), "runtime_s") - cells.begin());
      }
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        if (i != drop) out += cells[i] + ",";
      }
      out += "\n";
    }
    return out;
  }
  return text;
}

Outcome deterministic_reports() {
  // Both runs use the same paths, so the configs recorded in the reports
  // are identical; outputs are moved aside after each run.
  fs::path root = fs::temp_directory_path() / ("gramcov_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  for (const char* run : {"a", "b"}) {
    std::string failed = cli_pipeline(root / "work");
    if (!failed.empty()) {
      fs::remove_all(root);
      return verdict(false, std::string("step '") + failed + "' failed in run " + run);
    }
    fs::rename(root / "work", root / run);
  }
  int files = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    std::string name = entry.path().filename().string();
    // Text renderings of these reports print runtimes.
    if (name == "reduce.txt" || name == "specialize.txt" || name == "stage.txt") {
      continue;
    }
    ++files;
    fs::path other = root / "b" / name;
    if (!fs::exists(other) || comparable(entry.path()) != comparable(other)) differing.push_back(name);
  }
  fs::remove_all(root);
  std::string detail = std::to_string(files) + " files compared";
  for (const std::string& name : differing) detail += ", " + name + " differs";
  return verdict(differing.empty() && files > 0, detail);
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--data") {
      g_data = argv[i + 1];
    } else if (flag == "--cli") {
      g_cli = argv[i + 1];
    } else if (flag == "--only") {
      only = std::atoi(argv[i + 1]);
    } else {
      std::cerr << "usage: acceptance [--data DIR] [--cli PATH] [--only N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {"mark placement on the sample rule", mark_placement},
      {"semantics preservation", semantics_preserved},
      {"marks match derivation oracle", marks_match_oracle},
      {"disjunct coverage display", disjunct_coverage_display},
      {"relative size display", relative_size_display},
      {"similarity reduction properties", similarity_properties},
      {"equivalence refinement", equivalence_refinement},
      {"interaction coverage oracle", interaction_oracle},
      {"overgeneration detection", overgeneration_ranked_first},
      {"specialization fidelity", specialization_fidelity},
      {"specialization speedup", specialization_speedup},
      {"staged coverage equality", staged_equality},
      {"fragment sweep monotonicity", sweep_monotone},
      {"deterministic reports", deterministic_reports},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, outcome.pass ? "PASS" : "FAIL",
                criteria[i].name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
