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

// Parse record streams: JSON Lines with one header line carrying the
// provenance, then one line per item.
//
//   {"format":"gramcov-records","version":1,"grammar_hash":...,
//    "table_hash":...,"config":{...}}
//   {"id":...,"text":...,"grammatical":true,"status":"parsed",
//    "solutions":[{"fs":...,"marks":[[1,2],[5,1]],"constraints":[...]}],
//    "note":"","edges":42,"timing":{"elapsed_s":0.003}}

#ifndef GRAMCOV_RECORDS_H_
#define GRAMCOV_RECORDS_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gramcov/grammar.h"
#include "gramcov/parser.h"

namespace gramcov {

using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data);

struct Provenance {
  std::string grammar_hash;
  std::string table_hash;
  Json config = Json::object();
};

// Hashes of the printed instrumented grammar and of its disjunct table.
Provenance provenance_of(const Grammar& instrumented, Json config = Json::object());

// Throws InputError when the hashes differ.
void check_provenance(const Provenance& found, const Provenance& expected,
                      const std::string& what);

Json provenance_to_json(const Provenance& provenance);

Json record_to_json(const ParseRecord& record);
ParseRecord record_from_json(const nlohmann::json& value);

std::string records_to_jsonl(const Provenance& provenance,
                             const std::vector<ParseRecord>& records);

struct RecordFile {
  Provenance provenance;
  std::vector<ParseRecord> records;
};

// Throws SyntaxError with the offending line.
RecordFile parse_records_jsonl(std::string_view text);

// Removes every "timing" member, recursively.
Json strip_timing(Json value);

}  // namespace gramcov

#endif  // GRAMCOV_RECORDS_H_
