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

// Tokenizer and annotation parser shared by grammar and lexicon files.

#ifndef GRAMCOV_TEXT_SYNTAX_H_
#define GRAMCOV_TEXT_SYNTAX_H_

#include <string>
#include <string_view>
#include <vector>

#include "gramcov/grammar.h"

namespace gramcov::syntax {

enum class TokenKind {
  kIdent,
  kArrow,
  kColon,
  kSemicolon,
  kDot,
  kBar,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kQuestion,
  kStar,
  kPlus,
  kMinus,
  kEquals,
  kDollar,
  kTilde,
  kCaret,
  kBang,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
  int begin = 0;
  int end = 0;
  int end_line = 1;
  int end_column = 1;
  // Comments that appear between the previous token and this one.
  std::vector<std::string> comments;
};

std::string describe(const Token& token);

class TokenStream {
 public:
  // `first_line` offsets reported line numbers (lexicon lines are parsed one
  // at a time).
  explicit TokenStream(std::string_view text, int first_line = 1);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  const Token& expect(TokenKind kind, const std::string& what);
  // Moves comments preceding the next token into `sink`.
  void absorb_comments(std::vector<std::string>& sink);

  SourceSpan span_from(const Token& first) const;
  SourceSpan span_between(const Token& first, const Token& last) const;
  SourceSpan span_until_peek(const Token& first) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct AnnotationOptions {
  bool allow_marks = false;
  // Lexical annotations may only mention the mother (^).
  bool lexical = false;
};

// Parses a (possibly empty) conjunction of constraints; stops at the first
// token that cannot start a constraint.
Annotation parse_conjunction(TokenStream& stream, const AnnotationOptions& options);

}  // namespace gramcov::syntax

#endif  // GRAMCOV_TEXT_SYNTAX_H_
