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

#include "gramcov/text_syntax.h"

#include <cctype>

#include "gramcov/errors.h"

namespace gramcov::syntax {
namespace {

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

std::vector<Token> tokenize_source(std::string_view text, int first_line) {
  std::vector<Token> tokens;
  std::vector<std::string> pending_comments;
  int line = first_line;
  int column = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };

  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '"') {
      int start_line = line;
      int start_column = column;
      std::size_t close = text.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw SyntaxError("unterminated comment", start_line, start_column);
      }
      pending_comments.emplace_back(text.substr(i + 1, close - i - 1));
      advance(close + 1 - i);
      continue;
    }

    Token token;
    token.line = line;
    token.column = column;
    token.begin = static_cast<int>(i);
    std::size_t length = 1;
    if (text.substr(i, 3) == "-->") {
      token.kind = TokenKind::kArrow;
      length = 3;
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        unsigned char d = static_cast<unsigned char>(text[j]);
        if (is_ident_char(d)) {
          ++j;
        } else if (d == '-' && j + 1 < text.size() &&
                   std::isalnum(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
        } else {
          break;
        }
      }
      token.kind = TokenKind::kIdent;
      length = j - i;
    } else {
      switch (c) {
        case ':': token.kind = TokenKind::kColon; break;
        case ';': token.kind = TokenKind::kSemicolon; break;
        case '.': token.kind = TokenKind::kDot; break;
        case '|': token.kind = TokenKind::kBar; break;
        case '{': token.kind = TokenKind::kLBrace; break;
        case '}': token.kind = TokenKind::kRBrace; break;
        case '(': token.kind = TokenKind::kLParen; break;
        case ')': token.kind = TokenKind::kRParen; break;
        case '?': token.kind = TokenKind::kQuestion; break;
        case '*': token.kind = TokenKind::kStar; break;
        case '+': token.kind = TokenKind::kPlus; break;
        case '-': token.kind = TokenKind::kMinus; break;
        case '=': token.kind = TokenKind::kEquals; break;
        case '$': token.kind = TokenKind::kDollar; break;
        case '~': token.kind = TokenKind::kTilde; break;
        case '^': token.kind = TokenKind::kCaret; break;
        case '!': token.kind = TokenKind::kBang; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + text[i] + "'", line,
                            column);
      }
    }
    token.text = std::string(text.substr(i, length));
    advance(length);
    token.end = static_cast<int>(i);
    token.end_line = line;
    token.end_column = column;
    token.comments = std::move(pending_comments);
    pending_comments.clear();
    tokens.push_back(std::move(token));
  }

  Token end;
  end.kind = TokenKind::kEnd;
  end.line = line;
  end.column = column;
  end.begin = end.end = static_cast<int>(text.size());
  end.end_line = line;
  end.end_column = column;
  end.comments = std::move(pending_comments);
  tokens.push_back(std::move(end));
  return tokens;
}

}  // namespace

std::string describe(const Token& token) {
  if (token.kind == TokenKind::kEnd) return "end of input";
  return "'" + token.text + "'";
}

TokenStream::TokenStream(std::string_view text, int first_line)
    : tokens_(tokenize_source(text, first_line)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t index = pos_ + ahead;
  return index < tokens_.size() ? tokens_[index] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& token = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return token;
}

const Token& TokenStream::expect(TokenKind kind, const std::string& what) {
  const Token& token = peek();
  if (token.kind != kind) {
    throw SyntaxError("expected " + what + " but found " + describe(token), token.line,
                      token.column);
  }
  return next();
}

void TokenStream::absorb_comments(std::vector<std::string>& sink) {
  Token& token = tokens_[pos_];
  for (std::string& comment : token.comments) sink.push_back(std::move(comment));
  token.comments.clear();
}

SourceSpan TokenStream::span_between(const Token& first, const Token& last) const {
  SourceSpan span;
  span.line = first.line;
  span.column = first.column;
  span.begin = first.begin;
  span.end_line = last.end_line;
  span.end_column = last.end_column;
  span.end = last.end;
  return span;
}

SourceSpan TokenStream::span_from(const Token& first) const {
  const Token& last = pos_ > 0 ? tokens_[pos_ - 1] : tokens_[0];
  return span_between(first, last);
}

SourceSpan TokenStream::span_until_peek(const Token& first) const {
  SourceSpan span = span_from(first);
  const Token& stop = peek();
  span.end = stop.begin;
  return span;
}

namespace {

bool is_mark_token(const Token& token) {
  return token.kind == TokenKind::kIdent && parse_disjunct_name(token.text) > 0;
}

bool starts_path(const TokenStream& stream, std::size_t ahead) {
  std::size_t k = ahead;
  while (stream.peek(k).kind == TokenKind::kLParen) ++k;
  TokenKind kind = stream.peek(k).kind;
  return kind == TokenKind::kCaret || kind == TokenKind::kBang;
}

bool starts_atomic(const TokenStream& stream) {
  const Token& token = stream.peek();
  return token.kind == TokenKind::kTilde || is_mark_token(token) || starts_path(stream, 0);
}

// Distinguishes `{ ^X=y; | ... }` from a right-hand-side alternation that
// happens to follow an annotation.
bool starts_annotation_disjunction(const TokenStream& stream) {
  if (stream.peek().kind != TokenKind::kLBrace) return false;
  std::size_t k = 1;
  while (stream.peek(k).kind == TokenKind::kLBrace ||
         stream.peek(k).kind == TokenKind::kLParen) {
    ++k;
  }
  const Token& token = stream.peek(k);
  return token.kind == TokenKind::kCaret || token.kind == TokenKind::kBang ||
         token.kind == TokenKind::kTilde || token.kind == TokenKind::kBar ||
         token.kind == TokenKind::kRBrace || is_mark_token(token);
}

class AnnotationParser {
 public:
  AnnotationParser(TokenStream& stream, const AnnotationOptions& options)
      : stream_(stream), options_(options) {}

  Annotation conjunction() {
    Annotation conj;
    conj.kind = Annotation::Kind::kConjunction;
    const Token& first = stream_.peek();
    for (;;) {
      stream_.absorb_comments(conj.comments);
      if (starts_atomic(stream_)) {
        conj.children.push_back(atomic());
      } else if (starts_annotation_disjunction(stream_)) {
        conj.children.push_back(disjunction());
        if (stream_.peek().kind == TokenKind::kSemicolon) stream_.next();
      } else {
        break;
      }
    }
    conj.span = stream_.span_until_peek(first);
    return conj;
  }

 private:
  Annotation disjunction() {
    const Token& open = stream_.next();
    Annotation result;
    result.kind = Annotation::Kind::kDisjunction;
    result.children.push_back(conjunction());
    while (stream_.peek().kind == TokenKind::kBar) {
      stream_.next();
      result.children.push_back(conjunction());
    }
    stream_.expect(TokenKind::kRBrace, "'}' closing the annotation disjunction");
    if (result.children.size() < 2) {
      throw SyntaxError("disjunction needs at least two branches", open.line, open.column);
    }
    result.span = stream_.span_from(open);
    return result;
  }

  Annotation atomic() {
    const Token& first = stream_.peek();
    Annotation result;
    if (first.kind == TokenKind::kTilde) {
      stream_.next();
      result.kind = Annotation::Kind::kNonexistence;
      result.lhs = path();
    } else if (is_mark_token(first)) {
      if (!options_.allow_marks) {
        throw SyntaxError("'" + first.text + "' is in the reserved DISJUNCT- namespace",
                          first.line, first.column);
      }
      stream_.next();
      result.kind = Annotation::Kind::kMarkInsertion;
      result.mark = parse_disjunct_name(first.text);
      stream_.expect(TokenKind::kDollar, "'$' after a mark");
      expect_mark_projection();
    } else {
      result.lhs = path();
      const Token& op = stream_.next();
      if (op.kind == TokenKind::kEquals) {
        result.kind = Annotation::Kind::kEquation;
        const Token& value = stream_.peek();
        if (starts_path(stream_, 0)) {
          result.rhs = path();
        } else if (value.kind == TokenKind::kIdent || value.kind == TokenKind::kPlus ||
                   value.kind == TokenKind::kMinus) {
          stream_.next();
          result.rhs_is_atom = true;
          result.atom = value.text;
        } else {
          throw SyntaxError("expected a path or an atomic value but found " +
                                describe(value),
                            value.line, value.column);
        }
      } else if (op.kind == TokenKind::kDollar) {
        result.kind = Annotation::Kind::kMembership;
        if (!starts_path(stream_, 0)) {
          const Token& bad = stream_.peek();
          throw SyntaxError("set membership needs a set-valued path but found " +
                                describe(bad),
                            bad.line, bad.column);
        }
        result.rhs = path();
      } else {
        throw SyntaxError("expected '=' or '$' but found " + describe(op), op.line,
                          op.column);
      }
    }
    stream_.expect(TokenKind::kSemicolon, "';' ending the constraint");
    result.span = stream_.span_from(first);
    return result;
  }

  void expect_mark_projection() {
    const Token& o = stream_.peek();
    if (o.kind != TokenKind::kIdent || o.text != "o" ||
        stream_.peek(1).kind != TokenKind::kStar) {
      throw SyntaxError("expected 'o*' but found " + describe(o), o.line, o.column);
    }
    stream_.next();
    stream_.next();
  }

  PathExpr path() {
    if (stream_.peek().kind == TokenKind::kLParen) {
      stream_.next();
      PathExpr inner = path();
      stream_.expect(TokenKind::kRParen, "')' closing the path");
      return inner;
    }
    const Token& root = stream_.next();
    PathExpr result;
    if (root.kind == TokenKind::kCaret) {
      result.root = PathRoot::kMother;
    } else if (root.kind == TokenKind::kBang) {
      if (options_.lexical) {
        throw SyntaxError("'!' is not available in lexical annotations", root.line,
                          root.column);
      }
      result.root = PathRoot::kDaughter;
    } else {
      throw SyntaxError("expected '^' or '!' but found " + describe(root), root.line,
                        root.column);
    }
    while (stream_.peek().kind == TokenKind::kIdent && !is_mark_token(stream_.peek())) {
      result.attributes.push_back(stream_.next().text);
    }
    return result;
  }

  TokenStream& stream_;
  AnnotationOptions options_;
};

}  // namespace

Annotation parse_conjunction(TokenStream& stream, const AnnotationOptions& options) {
  return AnnotationParser(stream, options).conjunction();
}

}  // namespace gramcov::syntax
