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

#ifndef GRAMCOV_SUITE_H_
#define GRAMCOV_SUITE_H_

#include <string>
#include <string_view>
#include <vector>

namespace gramcov {

struct TestItem {
  std::string id;
  std::string text;
  bool grammatical = true;
};

// JSON Lines: {"id": ..., "text": ..., "grammatical": true|false}.
// "grammatical" defaults to true; ids must be unique.
std::vector<TestItem> parse_suite_jsonl(std::string_view text);
std::string suite_to_jsonl(const std::vector<TestItem>& items);

// Plain text, one sentence per line; blank lines skipped. Items are numbered
// `prefix`-0001, `prefix`-0002, ... by line order and are grammatical.
std::vector<TestItem> parse_corpus(std::string_view text, std::string_view prefix);

// Dispatches on the file extension: .jsonl is a test suite, anything else a
// corpus named after the file stem.
std::vector<TestItem> load_items(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace gramcov

#endif  // GRAMCOV_SUITE_H_
