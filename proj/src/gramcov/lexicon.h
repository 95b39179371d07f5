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

#ifndef GRAMCOV_LEXICON_H_
#define GRAMCOV_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gramcov/grammar.h"

namespace gramcov {

struct LexicalEntry {
  std::string token;
  std::string category;
  Annotation annotation;  // mentions ^ only
  int line = 0;
};

// One entry per line: `token CATEGORY annotation*`. A token with several
// lines is lexically ambiguous. Blank lines and "comment" lines are skipped.
class Lexicon {
 public:
  static Lexicon parse(std::string_view text);

  const std::vector<LexicalEntry>& entries() const { return entries_; }
  // Indices of the entries for `token`; empty when unknown.
  std::vector<int> lookup(std::string_view token, bool fold_case) const;
  const std::set<std::string>& categories() const { return categories_; }

 private:
  std::vector<LexicalEntry> entries_;
  std::map<std::string, std::vector<int>, std::less<>> exact_;
  std::map<std::string, std::vector<int>, std::less<>> folded_;
  std::set<std::string> categories_;
};

std::string fold_case(std::string_view text);

}  // namespace gramcov

#endif  // GRAMCOV_LEXICON_H_
