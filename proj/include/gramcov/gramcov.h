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

/* C interface to the gramcov library.
 *
 * A grammar handle holds a grammar, its instrumented form and a lexicon.
 * Operations take text inputs (record streams, test suites) and an options
 * object in JSON, and return a freshly allocated JSON string through an out
 * parameter; release it with gramcov_string_free. Every call returns a status
 * code; on failure gramcov_last_error() describes the problem (per thread).
 *
 * Items inputs are JSON Lines test suites ({"id","text","grammatical"} per
 * line) unless the options say {"items_format": "corpus", "prefix": "..."},
 * in which case they are plain text with one sentence per line. */

#ifndef GRAMCOV_GRAMCOV_H_
#define GRAMCOV_GRAMCOV_H_

#if defined(GRAMCOV_BUILDING_LIBRARY)
#define GRAMCOV_API __attribute__((visibility("default")))
#else
#define GRAMCOV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gramcov_status {
  GRAMCOV_OK = 0,
  GRAMCOV_INPUT_ERROR = 1,
  GRAMCOV_INTERNAL_ERROR = 2
} gramcov_status;

typedef struct gramcov_grammar gramcov_grammar;

GRAMCOV_API const char* gramcov_version(void);
GRAMCOV_API const char* gramcov_last_error(void);
GRAMCOV_API void gramcov_string_free(char* str);

/* Parses and instruments a grammar. The lexicon may be NULL. */
GRAMCOV_API gramcov_status gramcov_grammar_load(const char* grammar_text,
                                                const char* lexicon_text,
                                                gramcov_grammar** out);
GRAMCOV_API void gramcov_grammar_free(gramcov_grammar* grammar);

/* {"instrumented": text, "table": [...], "stats": {...}, "warnings": [...],
 *  "grammar_hash": hex, "table_hash": hex} */
GRAMCOV_API gramcov_status gramcov_grammar_info(const gramcov_grammar* grammar, char** out_json);

/* {"diagnostics": [...], "warnings": [...]} */
GRAMCOV_API gramcov_status gramcov_validate(const gramcov_grammar* grammar, char** out_json);

/* Parses items with the instrumented grammar. Options: fold_case,
 * unknown_token_error, max_seconds, max_edges, jobs, config. Output is a
 * record stream (JSON Lines), not a JSON object. */
GRAMCOV_API gramcov_status gramcov_run(const gramcov_grammar* grammar, const char* items,
                                       const char* options_json, char** out_records);

/* Options: include_ungrammatical, interaction, bound, cap, strict_cap.
 * {"report": {...}, "text": "..."} */
GRAMCOV_API gramcov_status gramcov_coverage(const gramcov_grammar* grammar, const char* records,
                                            const char* options_json, char** out_json);

/* Options: include_ungrammatical. {"report": {...}, "text": "..."} */
GRAMCOV_API gramcov_status gramcov_complete(const gramcov_grammar* grammar, const char* records,
                                            const char* options_json, char** out_json);

/* Options: mode ("equivalence" | "similarity").
 * {"report": {...}, "classes": {...}, "text": "...", "kept": [...]} */
GRAMCOV_API gramcov_status gramcov_reduce_suite(const gramcov_grammar* grammar,
                                                const char* records, const char* options_json,
                                                char** out_json);

/* Options: top. {"report": {...}, "text": "..."} */
GRAMCOV_API gramcov_status gramcov_suspects(const gramcov_grammar* grammar, const char* records,
                                            const char* options_json, char** out_json);

/* Reduces the grammar to the disjuncts exercised by the training records,
 * then parses the test items with both grammars. Options as for
 * gramcov_run. {"report": {...}, "text": "...", "reduced_grammar": text,
 * "base_records": jsonl, "reduced_records": jsonl} */
GRAMCOV_API gramcov_status gramcov_specialize(const gramcov_grammar* grammar,
                                              const char* train_records, const char* test_items,
                                              const char* options_json, char** out_json);

/* Options: sizes (array), trials, seed, plus those of gramcov_run.
 * {"csv": "...", "rows": [...]} */
GRAMCOV_API gramcov_status gramcov_fragments(const gramcov_grammar* grammar,
                                             const char* pool_records, const char* test_items,
                                             const char* options_json, char** out_json);

/* Options: threshold, or percentile (item-frequency percentile), plus those
 * of gramcov_run. {"report": {...}, "records": jsonl} */
GRAMCOV_API gramcov_status gramcov_stage(const gramcov_grammar* grammar,
                                         const char* train_records, const char* items,
                                         const char* options_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* GRAMCOV_GRAMCOV_H_ */
