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

#include "gramcov/grammar.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "gramcov/errors.h"
#include "gramcov/text_syntax.h"

namespace gramcov {

std::string SourceSpan::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + "-" +
         std::to_string(end_line) + ":" + std::to_string(end_column);
}

std::string disjunct_name(int id) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "DISJUNCT-%03d", id);
  return buffer;
}

int parse_disjunct_name(std::string_view name) {
  constexpr std::string_view kPrefix = "DISJUNCT-";
  if (name.size() <= kPrefix.size() || name.substr(0, kPrefix.size()) != kPrefix) {
    return 0;
  }
  int value = 0;
  for (char c : name.substr(kPrefix.size())) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
    value = value * 10 + (c - '0');
    if (value > 100000000) return 0;
  }
  return value;
}

void DisjunctTable::add(DisjunctEntry entry) {
  if (entry.id != static_cast<int>(entries_.size()) + 1) {
    throw InternalError("disjunct serials must be dense and ordered");
  }
  if (entry.disjunction >= 0) {
    by_choice_[{entry.disjunction, entry.branch}] = entry.id;
  }
  entries_.push_back(std::move(entry));
}

const DisjunctEntry& DisjunctTable::at(int id) const {
  if (!contains(id)) {
    throw InputError("unknown disjunct " + disjunct_name(id));
  }
  return entries_[id - 1];
}

int DisjunctTable::lookup(int disjunction, int branch) const {
  auto it = by_choice_.find({disjunction, branch});
  return it == by_choice_.end() ? 0 : it->second;
}

const Rule* Grammar::find_rule(std::string_view lhs) const {
  for (const Rule& rule : rules) {
    if (rule.lhs == lhs) return &rule;
  }
  return nullptr;
}

std::vector<std::string> Grammar::preterminals() const {
  std::set<std::string> lhs;
  for (const Rule& rule : rules) lhs.insert(rule.lhs);
  std::set<std::string> result;
  for (const Rule& rule : rules) {
    for_each_symbol(rule.rhs, [&](const RhsExpr& symbol) {
      if (!lhs.count(symbol.category)) result.insert(symbol.category);
    });
  }
  return {result.begin(), result.end()};
}

namespace {

using syntax::Token;
using syntax::TokenKind;

class GrammarParser {
 public:
  GrammarParser(std::string_view text, const ParseGrammarOptions& options)
      : stream_(text), options_(options) {}

  Grammar parse() {
    Grammar grammar;
    std::set<std::string> seen;
    while (stream_.peek().kind != TokenKind::kEnd) {
      Rule rule = parse_rule();
      if (!seen.insert(rule.lhs).second) {
        throw SyntaxError("duplicate rule for category '" + rule.lhs + "'",
                          rule.span.line, rule.span.column);
      }
      grammar.rules.push_back(std::move(rule));
    }
    if (grammar.rules.empty()) {
      throw SyntaxError("grammar contains no rules", 1, 1);
    }
    grammar.start = grammar.rules.front().lhs;
    for (const Rule& rule : grammar.rules) {
      for_each_symbol(rule.rhs, [&](const RhsExpr& symbol) {
        if (!seen.count(symbol.category) && warned_.insert(symbol.category).second) {
          grammar.warnings.push_back(symbol.span.to_string() + ": category '" +
                                     symbol.category +
                                     "' has no rule; treated as lexical");
        }
      });
    }
    return grammar;
  }

 private:
  Rule parse_rule() {
    const Token& head = stream_.expect(TokenKind::kIdent, "rule left-hand side");
    Rule rule;
    rule.lhs = head.text;
    rule.span = stream_.span_from(head);
    check_category_name(head);
    stream_.expect(TokenKind::kArrow, "'-->'");
    rule.rhs = parse_sequence();
    const Token& dot = stream_.expect(TokenKind::kDot, "'.' ending the rule");
    rule.span = stream_.span_between(head, dot);
    check_iterations(rule.rhs);
    return rule;
  }

  static bool nullable(const RhsExpr& e) {
    switch (e.kind) {
      case RhsExpr::Kind::kEmpty:
      case RhsExpr::Kind::kOptional:
      case RhsExpr::Kind::kStar:
        return true;
      case RhsExpr::Kind::kSymbol:
        return false;
      case RhsExpr::Kind::kPlus:
        return nullable(e.children.front());
      case RhsExpr::Kind::kSequence:
        for (const RhsExpr& child : e.children) {
          if (!nullable(child)) return false;
        }
        return true;
      case RhsExpr::Kind::kAlternation:
        for (const RhsExpr& child : e.children) {
          if (nullable(child)) return true;
        }
        return false;
    }
    return false;
  }

  // An iterated expression that can match the empty string would admit
  // unboundedly many derivations of the same input.
  static void check_iterations(const RhsExpr& e) {
    if ((e.kind == RhsExpr::Kind::kStar || e.kind == RhsExpr::Kind::kPlus) &&
        nullable(e.children.front())) {
      throw SyntaxError("iterated expression can match the empty string", e.span.line,
                        e.span.column);
    }
    for (const RhsExpr& child : e.children) check_iterations(child);
  }

  void check_category_name(const Token& token) {
    if (token.text == "e") {
      throw SyntaxError("'e' is reserved for the empty string", token.line, token.column);
    }
    if (parse_disjunct_name(token.text) > 0) {
      throw SyntaxError("'" + token.text + "' is in the reserved DISJUNCT- namespace",
                        token.line, token.column);
    }
  }

  static bool ends_sequence(TokenKind kind) {
    return kind == TokenKind::kBar || kind == TokenKind::kRBrace ||
           kind == TokenKind::kRParen || kind == TokenKind::kDot ||
           kind == TokenKind::kEnd;
  }

  RhsExpr parse_sequence() {
    RhsExpr seq;
    seq.kind = RhsExpr::Kind::kSequence;
    const Token& first = stream_.peek();
    while (!ends_sequence(stream_.peek().kind)) {
      RhsExpr term = parse_term(seq.comments);
      if (term.kind == RhsExpr::Kind::kSequence) {
        for (RhsExpr& element : term.children) seq.children.push_back(std::move(element));
        seq.comments.insert(seq.comments.end(), term.comments.begin(), term.comments.end());
      } else {
        seq.children.push_back(std::move(term));
      }
    }
    stream_.absorb_comments(seq.comments);
    if (seq.children.empty()) {
      throw SyntaxError("empty right-hand side (write 'e' for the empty string)",
                        first.line, first.column);
    }
    seq.span = stream_.span_until_peek(first);
    return seq;
  }

  RhsExpr parse_term(std::vector<std::string>& comments) {
    const Token& token = stream_.peek();
    stream_.absorb_comments(comments);
    RhsExpr term;
    if (token.kind == TokenKind::kIdent && token.text == "e") {
      stream_.next();
      term.kind = RhsExpr::Kind::kEmpty;
      term.annotation = parse_optional_annotation();
      term.span = stream_.span_from(token);
      return term;
    }
    if (token.kind == TokenKind::kIdent) {
      check_category_name(token);
      stream_.next();
      RhsExpr symbol;
      symbol.kind = RhsExpr::Kind::kSymbol;
      symbol.category = token.text;
      std::vector<RhsExpr::Kind> postfixes = parse_postfixes();
      symbol.annotation = parse_optional_annotation();
      symbol.span = stream_.span_from(token);
      return wrap(std::move(symbol), postfixes);
    }
    if (token.kind == TokenKind::kLBrace) {
      stream_.next();
      RhsExpr alternation;
      alternation.kind = RhsExpr::Kind::kAlternation;
      alternation.children.push_back(parse_sequence());
      while (stream_.peek().kind == TokenKind::kBar) {
        stream_.next();
        alternation.children.push_back(parse_sequence());
      }
      stream_.expect(TokenKind::kRBrace, "'}' closing the alternation");
      if (alternation.children.size() < 2) {
        throw SyntaxError("alternation needs at least two branches", token.line,
                          token.column);
      }
      alternation.span = stream_.span_from(token);
      return wrap(std::move(alternation), parse_postfixes());
    }
    if (token.kind == TokenKind::kLParen) {
      stream_.next();
      RhsExpr group = parse_sequence();
      stream_.expect(TokenKind::kRParen, "')' closing the group");
      group.span = stream_.span_from(token);
      std::vector<RhsExpr::Kind> postfixes = parse_postfixes();
      if (postfixes.empty()) return group;
      return wrap(std::move(group), postfixes);
    }
    throw SyntaxError("expected a category, 'e', '{' or '(' but found " +
                          syntax::describe(token),
                      token.line, token.column);
  }

  std::vector<RhsExpr::Kind> parse_postfixes() {
    std::vector<RhsExpr::Kind> result;
    for (;;) {
      switch (stream_.peek().kind) {
        case TokenKind::kQuestion: result.push_back(RhsExpr::Kind::kOptional); break;
        case TokenKind::kStar: result.push_back(RhsExpr::Kind::kStar); break;
        case TokenKind::kPlus: result.push_back(RhsExpr::Kind::kPlus); break;
        default: return result;
      }
      stream_.next();
    }
  }

  static RhsExpr wrap(RhsExpr base, const std::vector<RhsExpr::Kind>& postfixes) {
    for (RhsExpr::Kind kind : postfixes) {
      RhsExpr outer;
      outer.kind = kind;
      outer.span = base.span;
      outer.children.push_back(std::move(base));
      base = std::move(outer);
    }
    return base;
  }

  Annotation parse_optional_annotation() {
    if (stream_.peek().kind != TokenKind::kColon) return Annotation{};
    stream_.next();
    syntax::AnnotationOptions options;
    options.allow_marks = options_.allow_marks;
    return syntax::parse_conjunction(stream_, options);
  }

  syntax::TokenStream stream_;
  ParseGrammarOptions options_;
  std::set<std::string> warned_;
};

void print_path(const PathExpr& path, std::string& out) {
  switch (path.root) {
    case PathRoot::kMother: out += '^'; break;
    case PathRoot::kDaughter: out += '!'; break;
    case PathRoot::kMarkProjection: out += "o*"; return;
  }
  for (std::size_t i = 0; i < path.attributes.size(); ++i) {
    if (i > 0) out += ' ';
    out += path.attributes[i];
  }
}

void print_comments(const std::vector<std::string>& comments, std::string& out) {
  for (const std::string& comment : comments) {
    out += " \"" + comment + "\"";
  }
}

void print_annotation_to(const Annotation& a, std::string& out) {
  switch (a.kind) {
    case Annotation::Kind::kConjunction:
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (i > 0) out += ' ';
        print_annotation_to(a.children[i], out);
      }
      print_comments(a.comments, out);
      return;
    case Annotation::Kind::kDisjunction:
      out += "{ ";
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (i > 0) out += " | ";
        print_annotation_to(a.children[i], out);
      }
      out += " }";
      return;
    case Annotation::Kind::kEquation:
      print_path(a.lhs, out);
      out += '=';
      if (a.rhs_is_atom) {
        out += a.atom;
      } else {
        print_path(a.rhs, out);
      }
      out += ';';
      return;
    case Annotation::Kind::kMembership:
      print_path(a.lhs, out);
      out += " $ ";
      print_path(a.rhs, out);
      out += ';';
      return;
    case Annotation::Kind::kNonexistence:
      out += '~';
      print_path(a.lhs, out);
      out += ';';
      return;
    case Annotation::Kind::kMarkInsertion:
      out += disjunct_name(a.mark) + " $ o*;";
      return;
  }
}

void print_rhs_to(const RhsExpr& e, std::string& out, const std::string& separator);

void print_with_annotation(const Annotation& annotation, std::string& out) {
  if (annotation.empty() && annotation.comments.empty()) return;
  out += ": ";
  print_annotation_to(annotation, out);
}

void print_rhs_to(const RhsExpr& e, std::string& out, const std::string& separator) {
  switch (e.kind) {
    case RhsExpr::Kind::kSequence:
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += separator;
        print_rhs_to(e.children[i], out, " ");
      }
      print_comments(e.comments, out);
      return;
    case RhsExpr::Kind::kSymbol:
      out += e.category;
      print_with_annotation(e.annotation, out);
      return;
    case RhsExpr::Kind::kEmpty:
      out += 'e';
      print_with_annotation(e.annotation, out);
      return;
    case RhsExpr::Kind::kAlternation:
      out += "{ ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += " | ";
        print_rhs_to(e.children[i], out, " ");
      }
      out += " }";
      return;
    case RhsExpr::Kind::kOptional:
    case RhsExpr::Kind::kStar:
    case RhsExpr::Kind::kPlus: {
      // Postfix operators bind to the category; a symbol's annotation follows
      // the whole postfix chain.
      std::string postfixes;
      const RhsExpr* base = &e;
      while (base->kind == RhsExpr::Kind::kOptional ||
             base->kind == RhsExpr::Kind::kStar || base->kind == RhsExpr::Kind::kPlus) {
        char op = base->kind == RhsExpr::Kind::kOptional ? '?'
                  : base->kind == RhsExpr::Kind::kStar   ? '*'
                                                         : '+';
        postfixes.insert(postfixes.begin(), op);
        base = &base->children.front();
      }
      if (base->kind == RhsExpr::Kind::kSymbol) {
        out += base->category + postfixes;
        print_with_annotation(base->annotation, out);
      } else if (base->kind == RhsExpr::Kind::kAlternation) {
        print_rhs_to(*base, out, " ");
        out += postfixes;
      } else {
        out += "( ";
        print_rhs_to(*base, out, " ");
        out += " )" + postfixes;
      }
      return;
    }
  }
}

bool equal_annotation(const Annotation& a, const Annotation& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case Annotation::Kind::kEquation:
      if (a.rhs_is_atom != b.rhs_is_atom || a.lhs != b.lhs) return false;
      return a.rhs_is_atom ? a.atom == b.atom : a.rhs == b.rhs;
    case Annotation::Kind::kMembership:
      return a.lhs == b.lhs && a.rhs == b.rhs;
    case Annotation::Kind::kNonexistence:
      return a.lhs == b.lhs;
    case Annotation::Kind::kMarkInsertion:
      return a.mark == b.mark;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!equal_annotation(a.children[i], b.children[i])) return false;
  }
  return true;
}

bool equal_rhs(const RhsExpr& a, const RhsExpr& b) {
  if (a.kind != b.kind || a.category != b.category || a.synthetic != b.synthetic ||
      a.children.size() != b.children.size() ||
      !equal_annotation(a.annotation, b.annotation)) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!equal_rhs(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace

Grammar parse_grammar(std::string_view text, const ParseGrammarOptions& options) {
  return GrammarParser(text, options).parse();
}

std::string print_annotation(const Annotation& annotation) {
  std::string out;
  print_annotation_to(annotation, out);
  return out;
}

std::string print_rhs(const RhsExpr& expr) {
  std::string out;
  print_rhs_to(expr, out, " ");
  return out;
}

std::string print_grammar(const Grammar& grammar) {
  std::string out;
  for (const Rule& rule : grammar.rules) {
    if (!out.empty()) out += "\n";
    std::string indent(rule.lhs.size() + 5, ' ');
    out += rule.lhs + " --> ";
    print_rhs_to(rule.rhs, out, "\n" + indent);
    out += ".\n";
  }
  return out;
}

bool structurally_equal(const Grammar& a, const Grammar& b) {
  if (a.start != b.start || a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (a.rules[i].lhs != b.rules[i].lhs || !equal_rhs(a.rules[i].rhs, b.rules[i].rhs)) {
      return false;
    }
  }
  return true;
}

}  // namespace gramcov
