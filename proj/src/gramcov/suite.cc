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

#include "gramcov/suite.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "gramcov/errors.h"

namespace gramcov {

std::vector<TestItem> parse_suite_jsonl(std::string_view text) {
  std::vector<TestItem> items;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json object;
    try {
      object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SyntaxError(std::string("invalid JSON: ") + e.what(), line_number, 1);
    }
    if (!object.is_object() || !object.contains("id") || !object.contains("text") ||
        !object["id"].is_string() || !object["text"].is_string()) {
      throw SyntaxError("item needs string fields 'id' and 'text'", line_number, 1);
    }
    TestItem item;
    item.id = object["id"].get<std::string>();
    item.text = object["text"].get<std::string>();
    if (object.contains("grammatical")) {
      if (!object["grammatical"].is_boolean()) {
        throw SyntaxError("'grammatical' must be a boolean", line_number, 1);
      }
      item.grammatical = object["grammatical"].get<bool>();
    }
    if (!ids.insert(item.id).second) {
      throw SyntaxError("duplicate item id '" + item.id + "'", line_number, 1);
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string suite_to_jsonl(const std::vector<TestItem>& items) {
  std::string out;
  for (const TestItem& item : items) {
    nlohmann::ordered_json object = {
        {"id", item.id}, {"text", item.text}, {"grammatical", item.grammatical}};
    out += object.dump() + "\n";
  }
  return out;
}

std::vector<TestItem> parse_corpus(std::string_view text, std::string_view prefix) {
  std::vector<TestItem> items;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    char number[16];
    std::snprintf(number, sizeof(number), "%04zu", items.size() + 1);
    items.push_back({std::string(prefix) + "-" + number, line, true});
  }
  return items;
}

std::vector<TestItem> load_items(const std::string& path) {
  std::filesystem::path p(path);
  std::string content = read_file(path);
  if (p.extension() == ".jsonl") return parse_suite_jsonl(content);
  return parse_corpus(content, p.stem().string());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("error writing '" + path + "'");
}

}  // namespace gramcov
