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

// Object model for regular-right-hand-side unification grammars with
// LFG-style functional annotations.
//
// Textual form (one rule per `.`-terminated statement):
//
//   VP --> V: !=^;
//          NP?: !=^OBJ;
//          PP*: { !=^OBL; | ! $ ^ADJUNCT; }.
//
//   ^ / !      mother / daughter feature structure
//   $          set membership, ~ nonexistence, o* the mark projection
//   { a | b }  disjunction (on the right-hand side or inside an annotation)
//   ? * +      optionality / iteration, ( ... ) groups, e the empty string
//   "..."      comment
//
// The first rule's left-hand side is the start category.

#ifndef GRAMCOV_GRAMMAR_H_
#define GRAMCOV_GRAMMAR_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gramcov {

struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;
  // Byte offsets into the source text, [begin, end).
  int begin = 0;
  int end = 0;

  std::string to_string() const;
};

enum class PathRoot { kMother, kDaughter, kMarkProjection };

struct PathExpr {
  PathRoot root = PathRoot::kMother;
  std::vector<std::string> attributes;

  bool operator==(const PathExpr&) const = default;
};

struct Annotation {
  enum class Kind {
    kConjunction,
    kDisjunction,
    kEquation,
    kMembership,
    kNonexistence,
    kMarkInsertion,
  };

  Kind kind = Kind::kConjunction;
  // Conjuncts, or disjunction branches (each branch is a conjunction).
  std::vector<Annotation> children;
  // Equation lhs, membership element, nonexistence path.
  PathExpr lhs;
  // Equation rhs (unless rhs_is_atom) or membership set.
  PathExpr rhs;
  bool rhs_is_atom = false;
  std::string atom;
  // Mark insertion serial.
  int mark = 0;

  // Instrumentation bookkeeping. A disjunction carries its disjunction index;
  // each of its branches carries the serial of the disjunct it stands for.
  int disjunction_index = -1;
  int disjunct = 0;
  // Serial of an atomic non-mark constraint, assigned by normalize().
  int constraint_id = 0;

  SourceSpan span;
  std::vector<std::string> comments;

  bool empty() const { return kind == Kind::kConjunction && children.empty(); }
  bool is_atomic() const {
    return kind != Kind::kConjunction && kind != Kind::kDisjunction;
  }
};

struct RhsExpr {
  enum class Kind {
    kSequence,
    kSymbol,
    kOptional,
    kStar,
    kPlus,
    kAlternation,
    kEmpty,
  };

  Kind kind = Kind::kSequence;
  // Sequence elements; alternation branches (always sequences); the single
  // operand of optional/star/plus.
  std::vector<RhsExpr> children;
  std::string category;
  // Annotation of a symbol or of an empty alternative; always a conjunction.
  Annotation annotation;

  SourceSpan span;
  std::vector<std::string> comments;

  int disjunction_index = -1;  // alternation
  int disjunct = 0;            // sequence that is an alternation branch
  // Empty element inserted by instrumentation only to carry a mark.
  bool synthetic = false;
  // Serial of a symbol occurrence's phrase-structure constraint, assigned by
  // normalize().
  int constraint_id = 0;
};

struct Rule {
  std::string lhs;
  RhsExpr rhs;  // a sequence
  SourceSpan span;
};

struct DisjunctEntry {
  int id = 0;
  std::string rule;
  SourceSpan span;
  std::string description;
  std::string comment;
  int disjunction = -1;
  int branch = -1;
  // Categories the alternative itself selects (not those of nested
  // disjunctions); for an annotation disjunct, the annotated category.
  std::vector<std::string> categories;
};

// Numbering of every disjunct of an instrumented grammar.
class DisjunctTable {
 public:
  void add(DisjunctEntry entry);

  std::size_t size() const { return entries_.size(); }
  bool contains(int id) const { return id >= 1 && id <= static_cast<int>(size()); }
  const DisjunctEntry& at(int id) const;
  const std::vector<DisjunctEntry>& entries() const { return entries_; }
  // Disjunct serial for a (disjunction, branch) choice, 0 when the branch
  // carries no mark of its own.
  int lookup(int disjunction, int branch) const;

 private:
  std::vector<DisjunctEntry> entries_;
  std::map<std::pair<int, int>, int> by_choice_;
};

std::string disjunct_name(int id);
// Parses "DISJUNCT-nnn"; returns 0 if `name` is not a mark symbol.
int parse_disjunct_name(std::string_view name);

struct Grammar {
  std::vector<Rule> rules;
  std::string start;
  bool instrumented = false;
  // Some disjunctions were pruned (see derive_grammar); choice indices no
  // longer line up with the table.
  bool pruned = false;
  std::shared_ptr<const DisjunctTable> table;
  std::vector<std::string> warnings;

  const Rule* find_rule(std::string_view lhs) const;
  // Categories used on some right-hand side without a rule of their own.
  std::vector<std::string> preterminals() const;
};

struct ParseGrammarOptions {
  // Accept DISJUNCT-nnn mark insertions (printed instrumented grammars).
  bool allow_marks = false;
};

Grammar parse_grammar(std::string_view text, const ParseGrammarOptions& options = {});
std::string print_grammar(const Grammar& grammar);
std::string print_rhs(const RhsExpr& expr);
std::string print_annotation(const Annotation& annotation);

// Equality of rules and annotations, ignoring spans, comments and
// instrumentation bookkeeping.
bool structurally_equal(const Grammar& a, const Grammar& b);

// Visits every category occurrence in `expr`.
template <typename Fn>
void for_each_symbol(const RhsExpr& expr, Fn&& fn) {
  if (expr.kind == RhsExpr::Kind::kSymbol) fn(expr);
  for (const RhsExpr& child : expr.children) for_each_symbol(child, fn);
}

}  // namespace gramcov

#endif  // GRAMCOV_GRAMMAR_H_
