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

#include "gramcov/gramcov.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "gramcov/coverage.h"
#include "gramcov/errors.h"
#include "gramcov/grammar.h"
#include "gramcov/grammar_stats.h"
#include "gramcov/instrument.h"
#include "gramcov/lexicon.h"
#include "gramcov/overgen.h"
#include "gramcov/parser.h"
#include "gramcov/records.h"
#include "gramcov/reports.h"
#include "gramcov/specializer.h"
#include "gramcov/suite.h"
#include "gramcov/suite_tools.h"
#include "gramcov/validate.h"

using gramcov::Json;

struct gramcov_grammar {
  gramcov::Grammar base;
  gramcov::Grammar instrumented;
  gramcov::Lexicon lexicon;
  bool has_lexicon = false;
  std::shared_ptr<const gramcov::CompiledGrammar> compiled;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename Fn>
gramcov_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return GRAMCOV_OK;
  } catch (const gramcov::InputError& e) {
    last_error = e.what();
    return GRAMCOV_INPUT_ERROR;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("bad JSON input: ") + e.what();
    return GRAMCOV_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GRAMCOV_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return GRAMCOV_INTERNAL_ERROR;
  }
}

void require(const void* pointer, const char* what) {
  if (pointer == nullptr) throw gramcov::InputError(std::string(what) + " is NULL");
}

nlohmann::json parse_options(const char* options_json) {
  if (options_json == nullptr || *options_json == '\0') return nlohmann::json::object();
  nlohmann::json options = nlohmann::json::parse(options_json);
  if (!options.is_object()) throw gramcov::InputError("options must be a JSON object");
  return options;
}

gramcov::ParseOptions parse_options_of(const nlohmann::json& options) {
  gramcov::ParseOptions parse;
  parse.fold_case = options.value("fold_case", false);
  parse.unknown_token_error = options.value("unknown_token_error", false);
  parse.limits.max_seconds = options.value("max_seconds", parse.limits.max_seconds);
  parse.limits.max_edges = options.value("max_edges", parse.limits.max_edges);
  if (parse.limits.max_seconds <= 0 || parse.limits.max_edges <= 0) {
    throw gramcov::InputError("resource limits must be positive");
  }
  return parse;
}

int jobs_of(const nlohmann::json& options) {
  int jobs = options.value("jobs", 1);
  if (jobs < 1) throw gramcov::InputError("jobs must be at least 1");
  return jobs;
}

std::vector<gramcov::TestItem> items_of(const char* text, const nlohmann::json& options) {
  require(text, "items");
  if (options.value("items_format", "jsonl") == "corpus") {
    return gramcov::parse_corpus(text, options.value("prefix", "item"));
  }
  return gramcov::parse_suite_jsonl(text);
}

Json config_of(const nlohmann::json& options, const Json& fallback = Json::object()) {
  if (options.contains("config")) return Json::parse(options["config"].dump());
  return fallback;
}

// Reads a record stream and checks that it was produced by `grammar`.
gramcov::RecordFile load_records(const gramcov_grammar* grammar, const char* text) {
  require(text, "records");
  gramcov::RecordFile file = gramcov::parse_records_jsonl(text);
  gramcov::check_provenance(file.provenance, gramcov::provenance_of(grammar->instrumented),
                            "record stream");
  return file;
}

gramcov::Provenance report_provenance(const gramcov_grammar* grammar,
                                      const nlohmann::json& options,
                                      const gramcov::RecordFile& file) {
  return gramcov::provenance_of(grammar->instrumented, config_of(options, file.provenance.config));
}

gramcov::UsageMatrix matrix_of(const gramcov_grammar* grammar,
                               const gramcov::RecordFile& file) {
  return gramcov::accumulate_usage(file.records, *grammar->instrumented.table);
}

}  // namespace

extern "C" {

const char* gramcov_version(void) { return "0.1.0"; }

const char* gramcov_last_error(void) { return last_error.c_str(); }

void gramcov_string_free(char* str) { std::free(str); }

gramcov_status gramcov_grammar_load(const char* grammar_text, const char* lexicon_text,
                                    gramcov_grammar** out) {
  return guarded([&] {
    require(grammar_text, "grammar text");
    require(out, "output handle");
    auto handle = std::make_unique<gramcov_grammar>();
    try {
      handle->base = gramcov::parse_grammar(grammar_text);
    } catch (const gramcov::InputError& e) {
      throw gramcov::InputError(std::string("grammar: ") + e.what());
    }
    handle->instrumented = gramcov::instrument(handle->base);
    if (lexicon_text != nullptr) {
      try {
        handle->lexicon = gramcov::Lexicon::parse(lexicon_text);
      } catch (const gramcov::InputError& e) {
        throw gramcov::InputError(std::string("lexicon: ") + e.what());
      }
      handle->has_lexicon = true;
    }
    handle->compiled = gramcov::compile(handle->instrumented, handle->lexicon);
    *out = handle.release();
  });
}

void gramcov_grammar_free(gramcov_grammar* grammar) { delete grammar; }

gramcov_status gramcov_grammar_info(const gramcov_grammar* grammar, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    gramcov::Provenance p = gramcov::provenance_of(grammar->instrumented);
    Json out = {{"instrumented", gramcov::print_grammar(grammar->instrumented)},
                {"table", Json::parse(gramcov::table_to_json(*grammar->instrumented.table))},
                {"stats", Json::parse(gramcov::stats_to_json(gramcov::grammar_stats(grammar->base)))},
                {"warnings", grammar->base.warnings},
                {"grammar_hash", p.grammar_hash},
                {"table_hash", p.table_hash}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_validate(const gramcov_grammar* grammar, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    const std::set<std::string>* lexical =
        grammar->has_lexicon ? &grammar->lexicon.categories() : nullptr;
    Json out = {
        {"diagnostics",
         Json::parse(gramcov::diagnostics_to_json(gramcov::validate_grammar(grammar->base, lexical)))},
        {"warnings", grammar->base.warnings}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_run(const gramcov_grammar* grammar, const char* items,
                           const char* options_json, char** out_records) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_records, "output");
    nlohmann::json options = parse_options(options_json);
    std::vector<gramcov::TestItem> parsed_items = items_of(items, options);
    std::vector<gramcov::ParseRecord> records = gramcov::parse_items(
        *grammar->compiled, parsed_items, parse_options_of(options), jobs_of(options));
    gramcov::Provenance p = gramcov::provenance_of(grammar->instrumented, config_of(options));
    *out_records = duplicate(gramcov::records_to_jsonl(p, records));
  });
}

gramcov_status gramcov_coverage(const gramcov_grammar* grammar, const char* records,
                                const char* options_json, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    gramcov::RecordFile file = load_records(grammar, records);
    gramcov::UsageMatrix matrix = matrix_of(grammar, file);
    gramcov::CoverageOptions coverage;
    coverage.include_ungrammatical = options.value("include_ungrammatical", true);
    gramcov::CoverageReport report =
        gramcov::coverage_report(matrix, grammar->instrumented, coverage);
    if (options.value("interaction", false)) {
      gramcov::InteractionOptions interaction;
      interaction.recursion_bound = options.value("bound", 1);
      interaction.cap = options.value("cap", interaction.cap);
      interaction.strict_cap = options.value("strict_cap", false);
      report.t_int =
          gramcov::interaction_coverage(grammar->instrumented, matrix, interaction, coverage);
    }
    const gramcov::DisjunctTable& table = *grammar->instrumented.table;
    Json out = {{"report", gramcov::coverage_json(report, table,
                                                  report_provenance(grammar, options, file))},
                {"text", gramcov::coverage_text(report, table)}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_complete(const gramcov_grammar* grammar, const char* records,
                                const char* options_json, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    gramcov::RecordFile file = load_records(grammar, records);
    gramcov::CoverageOptions coverage;
    coverage.include_ungrammatical = options.value("include_ungrammatical", true);
    const std::set<std::string>* lexical =
        grammar->has_lexicon ? &grammar->lexicon.categories() : nullptr;
    gramcov::CompletenessReport report = gramcov::completeness_report(
        matrix_of(grammar, file), grammar->instrumented, lexical, coverage);
    const gramcov::DisjunctTable& table = *grammar->instrumented.table;
    Json out = {{"report", gramcov::completeness_json(report, table,
                                                      report_provenance(grammar, options, file))},
                {"text", gramcov::completeness_text(report, table)}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_reduce_suite(const gramcov_grammar* grammar, const char* records,
                                    const char* options_json, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    std::string mode = options.value("mode", "equivalence");
    if (mode != "equivalence" && mode != "similarity") {
      throw gramcov::InputError("unknown reduction mode '" + mode + "'");
    }
    gramcov::RecordFile file = load_records(grammar, records);
    gramcov::UsageMatrix matrix = matrix_of(grammar, file);
    gramcov::Provenance p = report_provenance(grammar, options, file);
    gramcov::ReductionReport report = mode == "similarity" ? gramcov::similarity_reduce(matrix)
                                                           : gramcov::equivalence_reduce(matrix);
    std::string label = mode == "similarity" ? "no similar cases" : "no equivalents";
    Json out = {
        {"report", gramcov::reduction_json(report, p)},
        {"classes",
         gramcov::equivalence_json(
             gramcov::equivalence_classes(matrix, gramcov::EquivalenceMode::kEquivalence),
             gramcov::equivalence_classes(matrix, gramcov::EquivalenceMode::kStrict), p)},
        {"text", gramcov::reduction_table(gramcov::reduction_rows(report, "original", label))},
        {"kept", report.kept}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_suspects(const gramcov_grammar* grammar, const char* records,
                                const char* options_json, char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    int top = options.value("top", 10);
    if (top < 0) throw gramcov::InputError("top must be non-negative");
    gramcov::RecordFile file = load_records(grammar, records);
    gramcov::UsageMatrix matrix = matrix_of(grammar, file);
    gramcov::SuspectReport report = gramcov::suspect_disjuncts(matrix, top);
    const gramcov::DisjunctTable& table = *grammar->instrumented.table;
    Json out = {{"report", gramcov::suspects_json(report, matrix, table,
                                                  report_provenance(grammar, options, file))},
                {"text", gramcov::suspects_text(report, matrix, table)}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_specialize(const gramcov_grammar* grammar, const char* train_records,
                                  const char* test_items, const char* options_json,
                                  char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    gramcov::RecordFile train = load_records(grammar, train_records);
    std::vector<gramcov::TestItem> items = items_of(test_items, options);
    gramcov::ParseOptions parse = parse_options_of(options);
    int jobs = jobs_of(options);
    gramcov::ReducedGrammar reduced = gramcov::reduce_grammar(grammar->instrumented, train.records);
    auto compiled = gramcov::compile(reduced.grammar, grammar->lexicon);
    gramcov::PairedRuns runs = gramcov::paired_runs(*grammar->compiled, *compiled, items, parse,
                                                    jobs, options.value("repeat", 1));
    std::vector<gramcov::ParseRecord>& base_run = runs.base;
    std::vector<gramcov::ParseRecord>& reduced_run = runs.reduced;
    gramcov::RunComparison comparison = gramcov::compare_runs(base_run, reduced_run);
    gramcov::GrammarStats base_stats = gramcov::grammar_stats(grammar->instrumented);
    gramcov::Provenance p = report_provenance(grammar, options, train);
    Json out = {
        {"report", gramcov::comparison_json(comparison, base_stats, reduced.stats,
                                            static_cast<int>(reduced.kept.size()), p)},
        {"text", gramcov::comparison_text(comparison, base_stats, reduced.stats)},
        {"reduced_grammar", gramcov::print_grammar(gramcov::plain_grammar(reduced.grammar))},
        {"base_records", gramcov::records_to_jsonl(p, base_run)},
        {"reduced_records",
         gramcov::records_to_jsonl(gramcov::provenance_of(reduced.grammar, p.config),
                                   reduced_run)}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_fragments(const gramcov_grammar* grammar, const char* pool_records,
                                 const char* test_items, const char* options_json,
                                 char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    gramcov::RecordFile pool = load_records(grammar, pool_records);
    std::vector<gramcov::TestItem> items = items_of(test_items, options);
    gramcov::SweepOptions sweep;
    sweep.sizes = options.value("sizes", std::vector<std::size_t>{});
    sweep.trials = options.value("trials", 3);
    sweep.seed = options.value("seed", std::uint64_t{1});
    sweep.parse = parse_options_of(options);
    sweep.jobs = jobs_of(options);
    std::vector<gramcov::SweepRow> rows = gramcov::fragment_sweep(
        grammar->instrumented, grammar->lexicon, pool.records, items, sweep);
    Json json_rows = Json::array();
    Json timing = Json::array();
    for (const gramcov::SweepRow& row : rows) {
      json_rows.push_back({{"size", row.size},
                           {"trial", row.trial},
                           {"parsed", row.parsed},
                           {"total", row.total},
                           {"coverage_pct", row.coverage_pct()},
                           {"kept_disjuncts", row.kept.size()}});
      timing.push_back(std::round(row.runtime_s * 1000.0) / 1000.0);
    }
    Json report = {{"provenance", gramcov::provenance_to_json(
                                      report_provenance(grammar, options, pool))},
                   {"report", "fragments"},
                   {"seed", sweep.seed},
                   {"trials", sweep.trials},
                   {"sizes", sweep.sizes},
                   {"rows", json_rows},
                   {"timing", {{"runtime_s", timing}}}};
    Json out = {{"report", report}, {"csv", gramcov::sweep_to_csv(rows)}};
    *out_json = duplicate(out.dump(2));
  });
}

gramcov_status gramcov_stage(const gramcov_grammar* grammar, const char* train_records,
                             const char* items_text, const char* options_json,
                             char** out_json) {
  return guarded([&] {
    require(grammar, "grammar");
    require(out_json, "output");
    nlohmann::json options = parse_options(options_json);
    gramcov::RecordFile train = load_records(grammar, train_records);
    std::vector<gramcov::TestItem> items = items_of(items_text, options);
    int threshold = 1;
    if (options.contains("threshold")) {
      threshold = options["threshold"].get<int>();
    } else if (options.contains("percentile")) {
      threshold = gramcov::percentile_threshold(gramcov::item_frequencies(train.records),
                                                options["percentile"].get<double>());
    }
    gramcov::StagedGrammar staged =
        gramcov::build_staged(grammar->instrumented, train.records, threshold);
    gramcov::StagedParser parser(staged, grammar->lexicon);
    gramcov::ParseOptions parse = parse_options_of(options);
    int jobs = jobs_of(options);
    std::vector<gramcov::StagedRecord> staged_run = parser.parse_all(items, parse, jobs);
    std::vector<gramcov::ParseRecord> base_run =
        gramcov::parse_items(*grammar->compiled, items, parse, jobs);
    gramcov::Provenance p = report_provenance(grammar, options, train);
    std::vector<gramcov::ParseRecord> plain;
    for (const gramcov::StagedRecord& r : staged_run) plain.push_back(r.record);
    Json out = {{"report", gramcov::staged_json(staged, staged_run, base_run, p)},
                {"records", gramcov::records_to_jsonl(p, plain)}};
    *out_json = duplicate(out.dump(2));
  });
}

}  // extern "C"
