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

#include <gtest/gtest.h>

#include <random>

#include "gramcov/errors.h"
#include "gramcov/grammar.h"
#include "gramcov/grammar_stats.h"
#include "gramcov/validate.h"
#include "oracles.h"
#include "test_util.h"

namespace gramcov {
namespace {

using testing_util::Toy;

TEST(ParseGrammar, SampleRuleStructure) {
  Grammar g = parse_grammar(oracle::kSampleRule);
  ASSERT_EQ(g.rules.size(), 1u);
  EXPECT_EQ(g.start, "VP");
  EXPECT_FALSE(g.instrumented);
  const RhsExpr& rhs = g.rules[0].rhs;
  ASSERT_EQ(rhs.kind, RhsExpr::Kind::kSequence);
  ASSERT_EQ(rhs.children.size(), 3u);
  EXPECT_EQ(rhs.children[0].kind, RhsExpr::Kind::kSymbol);
  EXPECT_EQ(rhs.children[0].category, "V");
  ASSERT_EQ(rhs.children[1].kind, RhsExpr::Kind::kOptional);
  EXPECT_EQ(rhs.children[1].children[0].category, "NP");
  ASSERT_EQ(rhs.children[2].kind, RhsExpr::Kind::kStar);
  const RhsExpr& pp = rhs.children[2].children[0];
  EXPECT_EQ(pp.category, "PP");
  ASSERT_EQ(pp.annotation.children.size(), 1u);
  const Annotation& disjunction = pp.annotation.children[0];
  ASSERT_EQ(disjunction.kind, Annotation::Kind::kDisjunction);
  ASSERT_EQ(disjunction.children.size(), 2u);
  EXPECT_EQ(disjunction.children[0].children[0].kind, Annotation::Kind::kEquation);
  EXPECT_EQ(disjunction.children[0].children[0].rhs.attributes,
            std::vector<std::string>{"OBL"});
  EXPECT_EQ(disjunction.children[1].children[0].kind, Annotation::Kind::kMembership);
  EXPECT_EQ(disjunction.children[1].children[0].rhs.attributes,
            std::vector<std::string>{"ADJUNCT"});
}

TEST(ParseGrammar, SpansAreRecorded) {
  Grammar g = parse_grammar(oracle::kSampleRule);
  const RhsExpr& pp = g.rules[0].rhs.children[2].children[0];
  EXPECT_EQ(pp.span.line, 3);
  EXPECT_EQ(pp.annotation.children[0].children[1].span.line, 3);
  EXPECT_GT(pp.annotation.children[0].children[1].span.column,
            pp.annotation.children[0].children[0].span.column);
}

TEST(ParseGrammar, EmptyRule) {
  Grammar g = parse_grammar("S --> e: .");
  ASSERT_EQ(g.rules.size(), 1u);
  const RhsExpr& rhs = g.rules[0].rhs;
  ASSERT_EQ(rhs.children.size(), 1u);
  EXPECT_EQ(rhs.children[0].kind, RhsExpr::Kind::kEmpty);
}

TEST(ParseGrammar, SyntaxErrorCarriesPosition) {
  try {
    parse_grammar("S --> A: ^=!;\n  B: ^X=.");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(ParseGrammar, DuplicateLhsRejected) {
  EXPECT_THROW(parse_grammar("S --> A: ^=!;.\nS --> B: ^=!;."), InputError);
}

TEST(ParseGrammar, UndeclaredCategoryWarns) {
  Grammar g = parse_grammar("S --> A: ^=!; B: ^X=!;.\nB --> C: ^=!;.");
  EXPECT_FALSE(g.warnings.empty());
}

TEST(ParseGrammar, MarksNeedPermission) {
  const char* text = "S --> { e: DISJUNCT-001 $ o*; | A: ^=!; DISJUNCT-002 $ o*; }.";
  EXPECT_THROW(parse_grammar(text), InputError);
  EXPECT_NO_THROW(parse_grammar(text, {.allow_marks = true}));
}

TEST(ParseGrammar, ToyRoundTrip) {
  const Grammar& g = Toy::get().plain;
  Grammar again = parse_grammar(print_grammar(g));
  EXPECT_TRUE(structurally_equal(g, again));
  EXPECT_EQ(grammar_stats(g), grammar_stats(again));
}

TEST(ParseGrammar, RandomRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    std::string text = oracle::random_grammar(rng);
    Grammar g = parse_grammar(text);
    Grammar again = parse_grammar(print_grammar(g));
    EXPECT_TRUE(structurally_equal(g, again)) << text;
    EXPECT_EQ(grammar_stats(g), grammar_stats(again)) << text;
  }
}

TEST(GrammarStats, SampleRule) {
  GrammarStats s = grammar_stats(parse_grammar(oracle::kSampleRule));
  EXPECT_EQ(stats_to_json(s),
            R"({"rules":1,"arcs":5,"disjuncts":6,"constraints":7,"disjunctions":3})");
}

TEST(GrammarStats, DisjunctionFreeRule) {
  GrammarStats s = grammar_stats(parse_grammar("S --> A: ^=!;."));
  EXPECT_EQ(s.n_rules, 1);
  EXPECT_EQ(s.n_arcs, 1);
  EXPECT_EQ(s.n_disjuncts, 1);
  EXPECT_EQ(s.n_disjunctions, 0);
}

TEST(GrammarStats, ToyFixture) {
  GrammarStats s = grammar_stats(Toy::get().plain);
  EXPECT_EQ(stats_to_json(s),
            R"({"rules":22,"arcs":126,"disjuncts":128,"constraints":242,"disjunctions":39})");
  EXPECT_EQ(s, oracle::brute_stats(Toy::get().plain));
}

TEST(GrammarStats, MatchesBruteForceOnRandomGrammars) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::string text = oracle::random_grammar(rng);
    Grammar g = parse_grammar(text);
    GrammarStats s = grammar_stats(g);
    EXPECT_EQ(s, oracle::brute_stats(g)) << text;
    EXPECT_GE(s.n_disjuncts, s.n_arcs) << text;
    EXPECT_GE(s.n_arcs, s.n_rules) << text;
    EXPECT_GE(s.n_rules, 1) << text;
  }
}

TEST(GrammarStats, InstrumentationDoesNotChangeStats) {
  EXPECT_EQ(grammar_stats(Toy::get().plain), grammar_stats(Toy::get().instrumented));
}

TEST(GrammarStats, AnnotationAlternatives) {
  Grammar g = parse_grammar("S --> A: ^F=x; { ^G=y; | { ^H=z; | ^H=w; } ^K=v; } { ^L=a; | ^L=b; }.");
  EXPECT_EQ(annotation_alternatives(g.rules[0].rhs.children[0].annotation), 6);
}

TEST(Validate, ToyIsClean) {
  const Toy& toy = Toy::get();
  EXPECT_TRUE(validate_grammar(toy.plain, &toy.lexicon.categories()).empty());
}

TEST(Validate, CategoryWithoutExpansion) {
  const Toy& toy = Toy::get();
  std::string text = read_file(testing_util::data_path("toy/toy.gram"));
  text += "\nADVPX --> ADVadj: ! $ ^ADJUNCT; ADV: !=^;.\n";
  Grammar g = parse_grammar(text);
  std::vector<Diagnostic> d = validate_grammar(g, &toy.lexicon.categories());
  bool no_expansion = false;
  for (const Diagnostic& diagnostic : d) {
    if (diagnostic.kind == Diagnostic::Kind::kNoExpansion && diagnostic.category == "ADVadj") {
      no_expansion = true;
    }
  }
  EXPECT_TRUE(no_expansion);
}

TEST(Validate, PureRecursionDoesNotTerminate) {
  std::vector<Diagnostic> d = validate_grammar(parse_grammar("X --> X: ^=!;."));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, Diagnostic::Kind::kNonterminating);
  EXPECT_EQ(d[0].category, "X");
}

TEST(Validate, MatchesGraphOracles) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    std::string text = oracle::random_grammar(rng);
    Grammar g = parse_grammar(text);
    std::set<std::string> unreachable;
    std::set<std::string> nonterminating;
    for (const Diagnostic& d : validate_grammar(g)) {
      if (d.kind == Diagnostic::Kind::kUnreachable) unreachable.insert(d.category);
      if (d.kind == Diagnostic::Kind::kNonterminating) nonterminating.insert(d.category);
    }
    EXPECT_EQ(unreachable, oracle::unreachable_categories(g)) << text;
    EXPECT_EQ(nonterminating, oracle::nonterminating_categories(g)) << text;
  }
}

TEST(Validate, DiagnosticsAreOrdered) {
  Grammar g = parse_grammar("S --> A: ^=!;.\nZ --> Z: ^=!;.\nY --> B: ^=!;.");
  std::set<std::string> lexical = {"A"};
  std::vector<Diagnostic> d = validate_grammar(g, &lexical);
  for (std::size_t i = 1; i < d.size(); ++i) {
    EXPECT_TRUE(std::make_pair(static_cast<int>(d[i - 1].kind), d[i - 1].category) <
                std::make_pair(static_cast<int>(d[i].kind), d[i].category));
  }
}

}  // namespace
}  // namespace gramcov
