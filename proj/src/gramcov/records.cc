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

#include "gramcov/records.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

#include "gramcov/errors.h"
#include "gramcov/instrument.h"

namespace gramcov {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 computation failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

Provenance provenance_of(const Grammar& instrumented, Json config) {
  Provenance p;
  p.grammar_hash = sha256_hex(print_grammar(instrumented));
  p.table_hash =
      instrumented.table ? sha256_hex(table_to_json(*instrumented.table)) : sha256_hex("");
  p.config = std::move(config);
  return p;
}

void check_provenance(const Provenance& found, const Provenance& expected,
                      const std::string& what) {
  if (found.grammar_hash != expected.grammar_hash) {
    throw InputError(what + " was produced with a different grammar (hash " +
                     found.grammar_hash.substr(0, 12) + ", expected " +
                     expected.grammar_hash.substr(0, 12) + ")");
  }
  if (found.table_hash != expected.table_hash) {
    throw InputError(what + " was produced with a different disjunct table");
  }
}

Json provenance_to_json(const Provenance& provenance) {
  return {{"grammar_hash", provenance.grammar_hash},
          {"table_hash", provenance.table_hash},
          {"config", provenance.config}};
}

Json record_to_json(const ParseRecord& record) {
  Json solutions = Json::array();
  for (const Solution& solution : record.solutions) {
    Json marks = Json::array();
    for (const auto& [id, count] : solution.marks) marks.push_back({id, count});
    solutions.push_back(
        {{"fs", solution.fs}, {"marks", marks}, {"constraints", solution.constraints}});
  }
  // Millisecond resolution.
  double elapsed = std::round(record.elapsed * 1000.0) / 1000.0;
  return {{"id", record.id},
          {"text", record.text},
          {"grammatical", record.grammatical},
          {"status", status_name(record.status)},
          {"solutions", solutions},
          {"note", record.note},
          {"edges", record.edges},
          {"timing", {{"elapsed_s", elapsed}}}};
}

ParseRecord record_from_json(const nlohmann::json& value) {
  ParseRecord record;
  record.id = value.at("id").get<std::string>();
  record.text = value.at("text").get<std::string>();
  record.grammatical = value.at("grammatical").get<bool>();
  record.status = parse_status(value.at("status").get<std::string>());
  for (const auto& s : value.at("solutions")) {
    Solution solution;
    solution.fs = s.at("fs").get<std::string>();
    for (const auto& pair : s.at("marks")) {
      int id = pair.at(0).get<int>();
      int count = pair.at(1).get<int>();
      if (id < 1 || count < 1) throw InputError("bad mark entry in record '" + record.id + "'");
      solution.marks[id] = count;
    }
    solution.constraints = s.at("constraints").get<std::vector<int>>();
    record.solutions.push_back(std::move(solution));
  }
  record.note = value.value("note", "");
  record.edges = value.value("edges", 0LL);
  if (value.contains("timing")) record.elapsed = value.at("timing").value("elapsed_s", 0.0);
  if (record.parseable() != !record.solutions.empty()) {
    throw InputError("record '" + record.id + "': status and solutions disagree");
  }
  return record;
}

std::string records_to_jsonl(const Provenance& provenance,
                             const std::vector<ParseRecord>& records) {
  Json header = {{"format", "gramcov-records"}, {"version", 1}};
  Json fields = provenance_to_json(provenance);
  for (auto& [key, value] : fields.items()) header[key] = value;
  std::string out = header.dump() + "\n";
  for (const ParseRecord& record : records) out += record_to_json(record).dump() + "\n";
  return out;
}

RecordFile parse_records_jsonl(std::string_view text) {
  RecordFile file;
  int line_number = 0;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    try {
      nlohmann::json value = nlohmann::json::parse(line);
      if (!have_header) {
        if (value.value("format", "") != "gramcov-records") {
          throw InputError("missing record stream header");
        }
        file.provenance.grammar_hash = value.at("grammar_hash").get<std::string>();
        file.provenance.table_hash = value.at("table_hash").get<std::string>();
        file.provenance.config = Json::parse(value.at("config").dump());
        have_header = true;
      } else {
        file.records.push_back(record_from_json(value));
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const std::exception& e) {
      throw SyntaxError(e.what(), line_number, 1);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw SyntaxError("empty record stream", 1, 1);
  return file;
}

Json strip_timing(Json value) {
  if (value.is_object()) {
    Json out = Json::object();
    for (auto& [key, member] : value.items()) {
      if (key != "timing") out[key] = strip_timing(member);
    }
    return out;
  }
  if (value.is_array()) {
    Json out = Json::array();
    for (auto& element : value) out.push_back(strip_timing(element));
    return out;
  }
  return value;
}

}  // namespace gramcov
