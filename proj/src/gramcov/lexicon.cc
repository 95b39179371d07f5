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

#include "gramcov/lexicon.h"

#include <cctype>

#include "gramcov/errors.h"
#include "gramcov/text_syntax.h"

namespace gramcov {

std::string fold_case(std::string_view text) {
  std::string result(text);
  for (char& c : result) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return result;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lexicon;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '"') continue;

    std::size_t token_end = line.find_first_of(" \t\r", first);
    if (token_end == std::string_view::npos) {
      throw SyntaxError("lexicon entry without category", line_number,
                        static_cast<int>(first) + 1);
    }
    std::size_t category_begin = line.find_first_not_of(" \t\r", token_end);
    if (category_begin == std::string_view::npos) {
      throw SyntaxError("lexicon entry without category", line_number,
                        static_cast<int>(token_end) + 1);
    }
    std::size_t category_end = line.find_first_of(" \t\r", category_begin);
    if (category_end == std::string_view::npos) category_end = line.size();

    LexicalEntry entry;
    entry.token = std::string(line.substr(first, token_end - first));
    entry.category = std::string(line.substr(category_begin, category_end - category_begin));
    entry.line = line_number;
    if (parse_disjunct_name(entry.category) > 0) {
      throw SyntaxError("category '" + entry.category + "' is reserved", line_number,
                        static_cast<int>(category_begin) + 1);
    }

    // Keep column numbers meaningful by blanking the consumed prefix.
    std::string rest(line);
    for (std::size_t i = 0; i < category_end; ++i) rest[i] = ' ';
    syntax::TokenStream stream(rest, line_number);
    syntax::AnnotationOptions options;
    options.lexical = true;
    entry.annotation = syntax::parse_conjunction(stream, options);
    const syntax::Token& trailing = stream.peek();
    if (trailing.kind != syntax::TokenKind::kEnd) {
      throw SyntaxError("unexpected " + syntax::describe(trailing) + " in lexicon entry",
                        trailing.line, trailing.column);
    }

    int index = static_cast<int>(lexicon.entries_.size());
    lexicon.exact_[entry.token].push_back(index);
    lexicon.folded_[fold_case(entry.token)].push_back(index);
    lexicon.categories_.insert(entry.category);
    lexicon.entries_.push_back(std::move(entry));
  }
  return lexicon;
}

std::vector<int> Lexicon::lookup(std::string_view token, bool fold) const {
  const auto& index = fold ? folded_ : exact_;
  auto it = fold ? index.find(fold_case(token)) : index.find(token);
  if (it == index.end()) return {};
  return it->second;
}

}  // namespace gramcov
