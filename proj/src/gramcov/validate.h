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

#ifndef GRAMCOV_VALIDATE_H_
#define GRAMCOV_VALIDATE_H_

#include <set>
#include <string>
#include <vector>

#include "gramcov/grammar.h"

namespace gramcov {

struct Diagnostic {
  enum class Kind { kUnreachable, kNoExpansion, kNonterminating };
  Kind kind;
  std::string category;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

const char* diagnostic_kind_name(Diagnostic::Kind kind);

// Static checks for unusable categories. `lexical` lists the categories with
// lexicon entries; when null, every category without a rule counts as
// lexical. Diagnostics are ordered by kind, then category name.
std::vector<Diagnostic> validate_grammar(const Grammar& grammar,
                                         const std::set<std::string>* lexical = nullptr);

std::string diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

}  // namespace gramcov

#endif  // GRAMCOV_VALIDATE_H_
