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

// gramcov command-line front end. All work goes through the C API.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gramcov/gramcov.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kInputError = 1;
constexpr int kInternalError = 2;

const char* const kFormats = R"(File formats

Grammar (.gram): one rule per statement, terminated by '.'; the first rule's
left-hand side is the start category.

  VP --> V: !=^;
         NP?: !=^OBJ;
         PP*: { !=^OBL; | ! $ ^ADJUNCT; }.

  right-hand side   sequence of symbols; X? optional, X* zero or more,
                    X+ one or more, ( ... ) grouping, { A | B } alternatives,
                    e the empty string
  annotation        'SYMBOL: constraint; constraint; ...' after a symbol or e
  constraints       path=path  path=atom  path $ path (set membership)
                    ~path (nonexistence)  { c; | c; } (disjunction)
  paths             ^ (mother) or ! (daughter) followed by attribute names
                    separated by spaces, e.g. ^SUBJ NUM
  comments          "double-quoted text", anywhere between tokens
  DISJUNCT-nnn symbols are reserved for instrumentation marks (o*).

Lexicon: one entry per line, 'token CATEGORY constraint; ...', using ^ only.
A token listed on several lines is ambiguous.

Test suite (.jsonl): one object per line,
  {"id": "t1", "text": "the dog sleeps .", "grammatical": true}
Any other extension is a corpus: one sentence per line, ids <stem>-0001, ...

Record stream (.jsonl): a header line with grammar_hash, table_hash and config,
then one parse record per item. Analyses refuse streams whose hashes do not
match the grammar given on the command line.

Reports are written as <out>.json and <out>.txt; wall-clock figures live in
the "timing" member of the JSON report. Exit status: 0 success, 1 input
error, 2 internal error.)";

struct Failure {
  int code;
  std::string message;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw Failure{kInputError, "cannot write '" + path + "'"};
}

void check(gramcov_status status) {
  if (status != GRAMCOV_OK) {
    throw Failure{status == GRAMCOV_INPUT_ERROR ? kInputError : kInternalError,
                  gramcov_last_error()};
  }
}

std::string take(char* text) {
  std::string out(text);
  gramcov_string_free(text);
  return out;
}

class Grammar {
 public:
  Grammar(const std::string& grammar_path, const std::string& lexicon_path) {
    std::string grammar = read_text(grammar_path);
    std::string lexicon = lexicon_path.empty() ? "" : read_text(lexicon_path);
    gramcov_status status = gramcov_grammar_load(
        grammar.c_str(), lexicon_path.empty() ? nullptr : lexicon.c_str(), &handle_);
    if (status != GRAMCOV_OK) {
      // Name the offending file instead of the input role.
      std::string message = gramcov_last_error();
      for (const auto& [role, path] : {std::pair<std::string, std::string>{"grammar: ", grammar_path},
                                       {"lexicon: ", lexicon_path}}) {
        if (message.rfind(role, 0) == 0) message = path + ":" + message.substr(role.size());
      }
      throw Failure{status == GRAMCOV_INPUT_ERROR ? kInputError : kInternalError, message};
    }
  }
  ~Grammar() { gramcov_grammar_free(handle_); }
  Grammar(const Grammar&) = delete;
  Grammar& operator=(const Grammar&) = delete;

  const gramcov_grammar* get() const { return handle_; }

 private:
  gramcov_grammar* handle_ = nullptr;
};

// Options shared by every subcommand that parses.
struct ParseFlags {
  double max_seconds = 10.0;
  long long max_edges = 200000;
  bool fold_case = false;
  bool unknown_error = false;
  int jobs = 1;

  void add(CLI::App* app) {
    app->add_option("--max-seconds", max_seconds, "Per-item time limit")->capture_default_str();
    app->add_option("--max-edges", max_edges, "Per-item chart edge limit")->capture_default_str();
    app->add_flag("--fold-case", fold_case, "Case-insensitive lexicon lookup");
    app->add_flag("--unknown-error", unknown_error,
                  "Fail on unknown tokens instead of recording no_parse");
    app->add_option("--jobs", jobs, "Parallel parse workers")->capture_default_str();
  }

  void apply(Json& options, Json& config) const {
    options["max_seconds"] = max_seconds;
    options["max_edges"] = max_edges;
    options["fold_case"] = fold_case;
    options["unknown_token_error"] = unknown_error;
    options["jobs"] = jobs;
    config["limits"] = {{"max_seconds", max_seconds}, {"max_edges", max_edges}};
    config["fold_case"] = fold_case;
    config["unknown_token_error"] = unknown_error;
  }
};

// Corpus files are plain text; .jsonl files are test suites.
void describe_items(const std::string& path, Json& options) {
  std::filesystem::path p(path);
  if (p.extension() != ".jsonl") {
    options["items_format"] = "corpus";
    options["prefix"] = p.stem().string();
  }
}

void write_report(const Json& out, const std::string& prefix) {
  if (prefix.empty()) {
    std::cout << out.value("text", out["report"].dump(2) + "\n");
    return;
  }
  write_text(prefix + ".json", out["report"].dump(2) + "\n");
  if (out.contains("text")) write_text(prefix + ".txt", out["text"].get<std::string>());
}

struct Args {
  std::string grammar;
  std::string lexicon;
  std::string items;
  std::string records;
  std::string train;
  std::string test;
  std::string out;
  std::string out_dir = ".";
  std::string mode = "equivalence";
  std::string kept;
  std::string csv;
  std::vector<std::size_t> sizes;
  int trials = 3;
  std::uint64_t seed = 1;
  bool interaction = false;
  int bound = 1;
  long long cap = 1000;
  bool strict_cap = false;
  bool exclude_ungrammatical = false;
  int top = 10;
  int repeat = 1;
  int threshold = 0;
  double percentile = 0.0;
  ParseFlags parse;
};

Json base_config(const std::string& command, const Args& a) {
  Json config = {{"command", command}, {"grammar", a.grammar}};
  if (!a.lexicon.empty()) config["lexicon"] = a.lexicon;
  return config;
}

int run_instrument(const Args& a) {
  Grammar g(a.grammar, a.lexicon);
  Json info = Json::parse(take([&] {
    char* out = nullptr;
    check(gramcov_grammar_info(g.get(), &out));
    return out;
  }()));
  std::string stem = std::filesystem::path(a.grammar).stem().string();
  std::filesystem::path dir(a.out_dir);
  write_text((dir / (stem + ".instrumented.gram")).string(), info["instrumented"].get<std::string>());
  write_text((dir / (stem + ".table.json")).string(), info["table"].dump(2) + "\n");
  write_text((dir / (stem + ".stats.json")).string(), info["stats"].dump() + "\n");
  std::cout << info["table"].size() << " disjuncts; stats " << info["stats"].dump() << "\n";
  for (const auto& w : info["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  return 0;
}

int run_validate(const Args& a) {
  Grammar g(a.grammar, a.lexicon);
  char* out = nullptr;
  check(gramcov_validate(g.get(), &out));
  Json result = Json::parse(take(out));
  if (!a.out.empty()) write_text(a.out + ".json", result.dump(2) + "\n");
  for (const auto& w : result["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  if (result["diagnostics"].empty()) std::cout << "no diagnostics\n";
  for (const auto& d : result["diagnostics"]) {
    std::cout << d["kind"].get<std::string>() << "  " << d["category"].get<std::string>() << "  "
              << d["message"].get<std::string>() << "\n";
  }
  return 0;
}

int run_parse(const Args& a) {
  Grammar g(a.grammar, a.lexicon);
  Json options = Json::object();
  Json config = base_config("run", a);
  config["items"] = a.items;
  config["seed"] = a.seed;
  a.parse.apply(options, config);
  describe_items(a.items, options);
  options["config"] = config;
  std::string items = read_text(a.items);
  char* out = nullptr;
  check(gramcov_run(g.get(), items.c_str(), options.dump().c_str(), &out));
  std::string records = take(out);
  write_text(a.out, records);
  return 0;
}

using Analysis = gramcov_status (*)(const gramcov_grammar*, const char*, const char*, char**);

Json analyse(const Args& a, const std::string& command, Analysis fn, Json options) {
  Grammar g(a.grammar, a.lexicon);
  Json config = base_config(command, a);
  config["records"] = a.records;
  for (auto& [key, value] : options.items()) config[key] = value;
  options["config"] = config;
  std::string records = read_text(a.records);
  char* out = nullptr;
  check(fn(g.get(), records.c_str(), options.dump().c_str(), &out));
  return Json::parse(take(out));
}

int run_coverage(const Args& a) {
  Json options = {{"include_ungrammatical", !a.exclude_ungrammatical}};
  if (a.interaction) {
    options["interaction"] = true;
    options["bound"] = a.bound;
    options["cap"] = a.cap;
    options["strict_cap"] = a.strict_cap;
  }
  write_report(analyse(a, "coverage", gramcov_coverage, options), a.out);
  return 0;
}

int run_complete(const Args& a) {
  Json options = {{"include_ungrammatical", !a.exclude_ungrammatical}};
  write_report(analyse(a, "complete", gramcov_complete, options), a.out);
  return 0;
}

int run_reduce_suite(const Args& a) {
  Json out = analyse(a, "reduce-suite", gramcov_reduce_suite, {{"mode", a.mode}});
  write_report(out, a.out);
  if (!a.out.empty()) write_text(a.out + ".classes.json", out["classes"].dump(2) + "\n");
  if (!a.kept.empty()) {
    std::string kept;
    for (const auto& id : out["kept"]) kept += id.get<std::string>() + "\n";
    write_text(a.kept, kept);
  }
  return 0;
}

int run_suspects(const Args& a) {
  write_report(analyse(a, "suspects", gramcov_suspects, {{"top", a.top}}), a.out);
  return 0;
}

// Subcommands reading training records plus an item file.
Json train_and_items(const Args& a, const std::string& command, const std::string& items_path,
                     Json options,
                     gramcov_status (*fn)(const gramcov_grammar*, const char*, const char*,
                                          const char*, char**)) {
  Grammar g(a.grammar, a.lexicon);
  Json config = base_config(command, a);
  config["train"] = a.train;
  config["items"] = items_path;
  config["seed"] = a.seed;
  for (auto& [key, value] : options.items()) config[key] = value;
  a.parse.apply(options, config);
  describe_items(items_path, options);
  options["config"] = config;
  std::string train = read_text(a.train);
  std::string items = read_text(items_path);
  char* out = nullptr;
  check(fn(g.get(), train.c_str(), items.c_str(), options.dump().c_str(), &out));
  return Json::parse(take(out));
}

int run_specialize(const Args& a) {
  Json out = train_and_items(a, "specialize", a.test, Json{{"repeat", a.repeat}},
                             gramcov_specialize);
  write_report(out, a.out);
  if (!a.out.empty()) {
    write_text(a.out + ".gram", out["reduced_grammar"].get<std::string>());
    write_text(a.out + ".base.records.jsonl", out["base_records"].get<std::string>());
    write_text(a.out + ".reduced.records.jsonl", out["reduced_records"].get<std::string>());
  }
  return 0;
}

int run_fragments(const Args& a) {
  Json options = {{"sizes", a.sizes}, {"trials", a.trials}, {"seed", a.seed}};
  Json out = train_and_items(a, "fragments", a.test, options, gramcov_fragments);
  write_text(a.csv, out["csv"].get<std::string>());
  if (!a.out.empty()) write_text(a.out + ".json", out["report"].dump(2) + "\n");
  return 0;
}

int run_stage(const Args& a) {
  Json options = Json::object();
  if (a.threshold > 0) {
    options["threshold"] = a.threshold;
  } else if (a.percentile > 0.0) {
    options["percentile"] = a.percentile;
  }
  Json out = train_and_items(a, "stage", a.items, options, gramcov_stage);
  if (a.out.empty()) {
    std::cout << out["report"].dump(2) << "\n";
  } else {
    write_text(a.out + ".json", out["report"].dump(2) + "\n");
    write_text(a.out + ".records.jsonl", out["records"].get<std::string>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gramcov: disjunct-level coverage instrumentation for unification grammars"};
  app.footer(kFormats);
  app.require_subcommand(1);
  Args a;

  auto grammar_opts = [&](CLI::App* sub, bool lexicon_required) {
    sub->add_option("-g,--grammar", a.grammar, "Grammar file")->required()->check(CLI::ExistingFile);
    auto* lex = sub->add_option("-l,--lexicon", a.lexicon, "Lexicon file")->check(CLI::ExistingFile);
    if (lexicon_required) lex->required();
  };
  auto report_opt = [&](CLI::App* sub) {
    sub->add_option("-o,--out", a.out, "Report prefix (<out>.json, <out>.txt); stdout if unset");
  };
  auto records_opt = [&](CLI::App* sub) {
    sub->add_option("-r,--records", a.records, "Record stream from 'run'")
        ->required()
        ->check(CLI::ExistingFile);
  };

  CLI::App* instrument = app.add_subcommand("instrument", "Number disjuncts and write the instrumented grammar and table");
  grammar_opts(instrument, false);
  instrument->add_option("--out-dir", a.out_dir, "Output directory")->capture_default_str();

  CLI::App* validate = app.add_subcommand("validate", "Report unreachable, unexpandable and nonterminating categories");
  grammar_opts(validate, false);
  report_opt(validate);

  CLI::App* run = app.add_subcommand("run", "Parse a suite or corpus into a record stream");
  grammar_opts(run, true);
  run->add_option("-i,--items", a.items, "Test suite (.jsonl) or corpus")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", a.out, "Record stream to write")->required();
  run->add_option("--seed", a.seed, "Recorded in the provenance")->capture_default_str();
  a.parse.add(run);

  CLI::App* coverage = app.add_subcommand("coverage", "Constraint, disjunction and interaction coverage");
  grammar_opts(coverage, true);
  records_opt(coverage);
  report_opt(coverage);
  coverage->add_flag("--interaction", a.interaction, "Also compute interaction coverage");
  coverage->add_option("--bound", a.bound, "Recursion bound for interaction coverage")
      ->check(CLI::Range(0, 1))->capture_default_str();
  coverage->add_option("--cap", a.cap, "Combination cap for interaction coverage")->capture_default_str();
  coverage->add_flag("--strict-cap", a.strict_cap, "Fail instead of estimating when the cap is hit");
  coverage->add_flag("--exclude-ungrammatical", a.exclude_ungrammatical,
                     "Do not count parseable ungrammatical items");

  CLI::App* complete = app.add_subcommand("complete", "List unexercised disjuncts");
  grammar_opts(complete, true);
  records_opt(complete);
  report_opt(complete);
  complete->add_flag("--exclude-ungrammatical", a.exclude_ungrammatical,
                     "Do not count parseable ungrammatical items");

  CLI::App* reduce = app.add_subcommand("reduce-suite", "Find redundant test items");
  grammar_opts(reduce, true);
  records_opt(reduce);
  report_opt(reduce);
  reduce->add_option("--mode", a.mode, "equivalence or similarity")
      ->check(CLI::IsMember({"equivalence", "similarity"}))->capture_default_str();
  reduce->add_option("--kept", a.kept, "File receiving the kept item ids");

  CLI::App* suspects = app.add_subcommand("suspects", "Rank disjuncts used by parseable ungrammatical items");
  grammar_opts(suspects, true);
  records_opt(suspects);
  report_opt(suspects);
  suspects->add_option("--top", a.top, "Number of suspects to list (0 = all)")->capture_default_str();

  CLI::App* specialize = app.add_subcommand("specialize", "Build a reduced grammar and compare it with the base grammar");
  grammar_opts(specialize, true);
  specialize->add_option("--train", a.train, "Training record stream")->required()->check(CLI::ExistingFile);
  specialize->add_option("--test", a.test, "Test items")->required()->check(CLI::ExistingFile);
  specialize->add_option("--repeat", a.repeat,
                         "Timing rounds per grammar; each item keeps its fastest time")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  report_opt(specialize);
  a.parse.add(specialize);

  CLI::App* fragments = app.add_subcommand("fragments", "Coverage of fragment grammars over sample sizes");
  grammar_opts(fragments, true);
  fragments->add_option("--train", a.train, "Record stream of the training pool")->required()->check(CLI::ExistingFile);
  fragments->add_option("--test", a.test, "Held-out test items")->required()->check(CLI::ExistingFile);
  fragments->add_option("--sizes", a.sizes, "Sample sizes")->required()->delimiter(',');
  fragments->add_option("--trials", a.trials, "Trials per size")->capture_default_str();
  fragments->add_option("--seed", a.seed, "Sampling seed")->capture_default_str();
  fragments->add_option("--csv", a.csv, "Curve table to write")->required();
  fragments->add_option("-o,--out", a.out, "JSON report prefix");
  a.parse.add(fragments);

  CLI::App* stage = app.add_subcommand("stage", "Staged parsing with frequent, used and all disjuncts");
  grammar_opts(stage, true);
  stage->add_option("--train", a.train, "Training record stream")->required()->check(CLI::ExistingFile);
  stage->add_option("-i,--items", a.items, "Items to parse")->required()->check(CLI::ExistingFile);
  auto* threshold = stage->add_option("--threshold", a.threshold, "Stage-1 item frequency threshold");
  stage->add_option("--percentile", a.percentile, "Threshold at this frequency percentile")
      ->excludes(threshold);
  stage->add_option("-o,--out", a.out, "Report prefix");
  a.parse.add(stage);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (instrument->parsed()) return run_instrument(a);
    if (validate->parsed()) return run_validate(a);
    if (run->parsed()) return run_parse(a);
    if (coverage->parsed()) return run_coverage(a);
    if (complete->parsed()) return run_complete(a);
    if (reduce->parsed()) return run_reduce_suite(a);
    if (suspects->parsed()) return run_suspects(a);
    if (specialize->parsed()) return run_specialize(a);
    if (fragments->parsed()) return run_fragments(a);
    if (stage->parsed()) return run_stage(a);
  } catch (const Failure& f) {
    std::cerr << "gramcov: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "gramcov: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
