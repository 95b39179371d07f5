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

#include <gtest/gtest.h>

#include "gramcov/errors.h"
#include "gramcov/records.h"
#include "gramcov/reports.h"
#include "gramcov/suite.h"
#include "gramcov/suite_tools.h"
#include "test_util.h"

namespace gramcov {
namespace {

using testing_util::Toy;

TEST(Suite, JsonLines) {
  std::vector<TestItem> items = parse_suite_jsonl(
      "{\"id\":\"a\",\"text\":\"the dog sleeps .\"}\n\n"
      "{\"id\":\"b\",\"text\":\"dog the sleeps .\",\"grammatical\":false}\n");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_TRUE(items[0].grammatical);
  EXPECT_FALSE(items[1].grammatical);
  EXPECT_EQ(parse_suite_jsonl(suite_to_jsonl(items)).size(), 2u);
}

TEST(Suite, DuplicateIdsRejected) {
  EXPECT_THROW(parse_suite_jsonl("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n"),
               InputError);
  EXPECT_THROW(parse_suite_jsonl("{\"id\":\"a\"\n"), InputError);
}

TEST(Suite, EmptySuite) { EXPECT_TRUE(parse_suite_jsonl("").empty()); }

TEST(Suite, Corpus) {
  std::vector<TestItem> items = parse_corpus("first line\n\n  \nsecond line\n", "news");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].id, "news-0001");
  EXPECT_EQ(items[1].id, "news-0002");
  EXPECT_EQ(items[1].text, "second line");
}

TEST(Records, Sha256) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Records, RoundTrip) {
  const Toy& toy = Toy::get();
  std::vector<ParseRecord> records = parse_items(*toy.compiled, toy.suite, {});
  Provenance p = provenance_of(toy.instrumented, Json{{"seed", 1}});
  std::string text = records_to_jsonl(p, records);
  RecordFile file = parse_records_jsonl(text);
  EXPECT_EQ(file.provenance.grammar_hash, p.grammar_hash);
  EXPECT_EQ(file.provenance.config, p.config);
  ASSERT_EQ(file.records.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(file.records[i].id, records[i].id);
    EXPECT_EQ(file.records[i].status, records[i].status);
    ASSERT_EQ(file.records[i].solutions.size(), records[i].solutions.size());
    for (std::size_t k = 0; k < records[i].solutions.size(); ++k) {
      EXPECT_EQ(file.records[i].solutions[k].fs, records[i].solutions[k].fs);
      EXPECT_EQ(file.records[i].solutions[k].marks, records[i].solutions[k].marks);
      EXPECT_EQ(file.records[i].solutions[k].constraints, records[i].solutions[k].constraints);
    }
  }
  EXPECT_EQ(records_to_jsonl(p, file.records), text);
}

TEST(Records, MalformedLine) {
  const Toy& toy = Toy::get();
  std::string text = records_to_jsonl(provenance_of(toy.instrumented), {}) + "{not json\n";
  EXPECT_THROW(parse_records_jsonl(text), SyntaxError);
}

TEST(Records, ProvenanceMismatch) {
  const Toy& toy = Toy::get();
  Provenance a = provenance_of(toy.instrumented);
  Provenance b = provenance_of(instrument(parse_grammar("S --> { A: ^=!; | B: ^=!; }.")));
  EXPECT_NO_THROW(check_provenance(a, a, "records"));
  EXPECT_THROW(check_provenance(b, a, "records"), InputError);
}

TEST(Records, StripTiming) {
  Json value = {{"a", 1}, {"timing", {{"x", 2}}}, {"nested", {{{"timing", 3}, {"b", 4}}}}};
  Json stripped = strip_timing(value);
  EXPECT_FALSE(stripped.contains("timing"));
  EXPECT_FALSE(stripped["nested"][0].contains("timing"));
  EXPECT_EQ(stripped["nested"][0]["b"], 4);
}

TEST(Reports, ReductionTable) {
  std::vector<ReductionTableRow> rows = {{"parseable", 1093, "100%", 1537.0, "100%"},
                                         {"no equivalents", 783, "71%", 665.3, "43%"},
                                         {"no similar cases", 214, "19%", 128.5, "8%"}};
  EXPECT_EQ(reduction_table(rows),
            "                  test cases  relative size   runtime  relative runtime\n"
            "parseable               1093           100%  1537.0 s              100%\n"
            "no equivalents           783            71%   665.3 s               43%\n"
            "no similar cases         214            19%   128.5 s                8%\n");
}

TEST(Reports, ReductionRowsFromReport) {
  ReductionReport r;
  r.original_count = 1787;
  r.reduced_count = 1600;
  r.original_runtime_s = 1213;
  r.reduced_runtime_s = 899.5;
  std::vector<ReductionTableRow> rows = reduction_rows(r, "parseable", "no equivalents");
  EXPECT_EQ(rows[1].relative_size, "89%");
  EXPECT_EQ(rows[1].relative_runtime, "74%");
  r.reduced_count = 331;
  r.reduced_runtime_s = 175.0;
  EXPECT_EQ(r.relative_size(), "18%");
  EXPECT_EQ(r.relative_runtime(), "14%");
}

TEST(Reports, TimingIsSeparated) {
  const Toy& toy = Toy::get();
  std::vector<ParseRecord> records = parse_items(*toy.compiled, toy.suite, {});
  UsageMatrix m = accumulate_usage(records, *toy.instrumented.table);
  Provenance p = provenance_of(toy.instrumented);
  Json j = reduction_json(similarity_reduce(m), p);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_TRUE(j.contains("provenance"));
  Json again = reduction_json(similarity_reduce(m), p);
  EXPECT_EQ(strip_timing(j).dump(), strip_timing(again).dump());
  Json coverage = coverage_json(coverage_report(m, toy.instrumented), *toy.instrumented.table, p);
  EXPECT_EQ(coverage["t_dis"]["denominator"], 88);
}

}  // namespace
}  // namespace gramcov
