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

#include "oracles.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gramcov/instrument.h"

namespace oracle {

using gramcov::Annotation;
using gramcov::FeatureGraph;
using gramcov::Grammar;
using gramcov::PathRoot;
using gramcov::RhsExpr;
using gramcov::Rule;

const char kSampleRule[] =
    "VP --> V: !=^;\n"
    "       NP?: !=^OBJ;\n"
    "       PP*: { !=^OBL; | ! $ ^ADJUNCT; }.\n";

const char kSampleLexicon[] =
    "sleeps V ^PRED=sleep;\n"
    "sees V ^PRED=see;\n"
    "mary NP ^PRED=mary;\n"
    "john NP ^PRED=john;\n"
    "home PP ^PRED=home;\n"
    "there PP ^PRED=there;\n";

namespace {

using Choice = std::pair<int, int>;

struct Term {
  std::vector<const Annotation*> atoms;
  std::vector<int> marks;
  std::vector<Choice> choices;
};

std::vector<Term> terms_of(const Annotation& a) {
  switch (a.kind) {
    case Annotation::Kind::kConjunction: {
      std::vector<Term> result(1);
      for (const Annotation& child : a.children) {
        std::vector<Term> next;
        for (const Term& left : result) {
          for (const Term& right : terms_of(child)) {
            Term t = left;
            t.atoms.insert(t.atoms.end(), right.atoms.begin(), right.atoms.end());
            t.marks.insert(t.marks.end(), right.marks.begin(), right.marks.end());
            t.choices.insert(t.choices.end(), right.choices.begin(), right.choices.end());
            next.push_back(std::move(t));
          }
        }
        result = std::move(next);
      }
      return result;
    }
    case Annotation::Kind::kDisjunction: {
      std::vector<Term> result;
      for (std::size_t i = 0; i < a.children.size(); ++i) {
        for (Term t : terms_of(a.children[i])) {
          if (a.disjunction_index >= 0) {
            t.choices.emplace_back(a.disjunction_index, static_cast<int>(i));
          }
          result.push_back(std::move(t));
        }
      }
      return result;
    }
    case Annotation::Kind::kMarkInsertion: {
      Term t;
      t.marks.push_back(a.mark);
      return {t};
    }
    default: {
      Term t;
      t.atoms.push_back(&a);
      return {t};
    }
  }
}

struct Partial {
  std::shared_ptr<FeatureGraph> graph;
  MarkMultiset marks;
  std::vector<Choice> choices;
};

struct Constituent {
  FeatureGraph graph;
  MarkMultiset marks;
  std::vector<Choice> choices;
};

}  // namespace

struct DerivationOracle::Impl {
  const Grammar& grammar;
  const gramcov::Lexicon& lexicon;
  gramcov::SymbolTable symbols;
  std::vector<std::string> tokens;
  std::map<std::tuple<std::string, int, int>, std::vector<Constituent>> memo;
  std::set<std::tuple<std::string, int, int>> active;

  Impl(const Grammar& g, const gramcov::Lexicon& l) : grammar(g), lexicon(l) {}

  std::vector<int> path(const gramcov::PathExpr& p) {
    std::vector<int> ids;
    for (const std::string& attribute : p.attributes) ids.push_back(symbols.intern(attribute));
    return ids;
  }

  bool apply(FeatureGraph& g, const Term& term, int daughter) {
    int fresh = -1;
    auto root = [&](PathRoot r) {
      if (r == PathRoot::kMother) return static_cast<int>(FeatureGraph::kRoot);
      if (daughter >= 0) return daughter;
      if (fresh < 0) fresh = g.new_node();
      return fresh;
    };
    for (const Annotation* a : term.atoms) {
      if (a->kind == Annotation::Kind::kEquation) {
        int lhs = g.follow(root(a->lhs.root), path(a->lhs), true);
        if (lhs < 0) return false;
        int rhs = a->rhs_is_atom ? g.new_atom(symbols.intern(a->atom))
                                 : g.follow(root(a->rhs.root), path(a->rhs), true);
        if (rhs < 0 || !g.unify(lhs, rhs)) return false;
      } else if (a->kind == Annotation::Kind::kMembership) {
        int element = g.follow(root(a->lhs.root), path(a->lhs), true);
        if (element < 0) return false;
        int set = g.follow(root(a->rhs.root), path(a->rhs), true);
        if (set < 0 || !g.add_member(set, element)) return false;
      } else if (a->kind == Annotation::Kind::kNonexistence) {
        if (!g.require_absent(root(a->lhs.root), path(a->lhs))) return false;
      }
    }
    return true;
  }

  static void add(Partial& p, const Term& term) {
    for (int mark : term.marks) ++p.marks[mark];
    p.choices.insert(p.choices.end(), term.choices.begin(), term.choices.end());
  }

  using Result = std::vector<std::pair<int, Partial>>;

  Result match(const RhsExpr& e, int pos, int limit, const Partial& p) {
    Result out;
    switch (e.kind) {
      case RhsExpr::Kind::kSequence: {
        out.emplace_back(pos, p);
        for (const RhsExpr& child : e.children) {
          Result next;
          for (const auto& [at, partial] : out) {
            Result step = match(child, at, limit, partial);
            next.insert(next.end(), step.begin(), step.end());
          }
          out = std::move(next);
        }
        return out;
      }
      case RhsExpr::Kind::kEmpty:
        for (const Term& term : terms_of(e.annotation)) {
          Partial q{std::make_shared<FeatureGraph>(*p.graph), p.marks, p.choices};
          if (!apply(*q.graph, term, -1)) continue;
          add(q, term);
          out.emplace_back(pos, std::move(q));
        }
        return out;
      case RhsExpr::Kind::kSymbol: {
        std::vector<Term> terms = terms_of(e.annotation);
        for (int end = pos; end <= limit; ++end) {
          for (const Constituent& c : constituents(e.category, pos, end)) {
            for (const Term& term : terms) {
              Partial q{std::make_shared<FeatureGraph>(*p.graph), p.marks, p.choices};
              int daughter = q.graph->import(c.graph);
              if (!apply(*q.graph, term, daughter)) continue;
              for (const auto& [id, count] : c.marks) q.marks[id] += count;
              q.choices.insert(q.choices.end(), c.choices.begin(), c.choices.end());
              add(q, term);
              out.emplace_back(end, std::move(q));
            }
          }
        }
        return out;
      }
      case RhsExpr::Kind::kAlternation:
        for (std::size_t i = 0; i < e.children.size(); ++i) {
          const RhsExpr& branch = e.children[i];
          std::optional<Choice> choice;
          if (e.disjunction_index >= 0) choice = Choice{e.disjunction_index, static_cast<int>(i)};
          Partial q = p;
          if (choice) q.choices.push_back(*choice);
          Result step;
          if (branch.children.size() == 1 && branch.children[0].kind == RhsExpr::Kind::kPlus) {
            step = iterate(branch.children[0].children[0], pos, limit, q, choice);
          } else {
            step = match(branch, pos, limit, q);
          }
          out.insert(out.end(), step.begin(), step.end());
        }
        return out;
      case RhsExpr::Kind::kPlus:
        return iterate(e.children[0], pos, limit, p, std::nullopt);
      default:
        throw std::logic_error("oracle needs a normalized grammar");
    }
  }

  // One or more iterations of `body`; `choice` is recorded again on every
  // further iteration. Iterations must consume input.
  Result iterate(const RhsExpr& body, int pos, int limit, const Partial& p,
                 std::optional<Choice> choice) {
    Result out;
    Result frontier = match(body, pos, limit, p);
    while (!frontier.empty()) {
      Result next;
      for (auto& [at, partial] : frontier) {
        Partial q = partial;
        if (choice) q.choices.push_back(*choice);
        for (auto& [end, r] : match(body, at, limit, q)) {
          if (end > at) next.emplace_back(end, std::move(r));
        }
        out.emplace_back(at, std::move(partial));
      }
      frontier = std::move(next);
    }
    return out;
  }

  const std::vector<Constituent>& constituents(const std::string& category, int i, int j) {
    auto key = std::make_tuple(category, i, j);
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;
    static const std::vector<Constituent> kNone;
    // A constituent that would contain itself over the same span adds no
    // finite derivation.
    if (!active.insert(key).second) return kNone;
    std::vector<Constituent> result;
    if (j == i + 1) {
      for (int index : lexicon.lookup(tokens[i], false)) {
        const gramcov::LexicalEntry& entry = lexicon.entries()[index];
        if (entry.category != category) continue;
        for (const Term& term : terms_of(entry.annotation)) {
          FeatureGraph g;
          if (!apply(g, term, -1) || !g.compact()) continue;
          result.push_back({std::move(g), {}, {}});
        }
      }
    }
    if (const Rule* rule = grammar.find_rule(category)) {
      Partial start{std::make_shared<FeatureGraph>(), {}, {}};
      for (auto& [end, p] : match(rule->rhs, i, j, start)) {
        if (end != j) continue;
        FeatureGraph g = *p.graph;
        if (!g.compact()) continue;
        result.push_back({std::move(g), std::move(p.marks), std::move(p.choices)});
      }
    }
    active.erase(key);
    return memo.emplace(key, std::move(result)).first->second;
  }
};

DerivationOracle::DerivationOracle(const Grammar& grammar, const gramcov::Lexicon& lexicon)
    : impl_(std::make_unique<Impl>(grammar, lexicon)) {}

DerivationOracle::~DerivationOracle() = default;

std::vector<Derivation> DerivationOracle::derive(const std::vector<std::string>& tokens) {
  impl_->tokens = tokens;
  impl_->memo.clear();
  std::vector<Derivation> result;
  const int n = static_cast<int>(tokens.size());
  const gramcov::DisjunctTable* table =
      impl_->grammar.instrumented && !impl_->grammar.pruned ? impl_->grammar.table.get() : nullptr;
  for (const Constituent& c : impl_->constituents(impl_->grammar.start, 0, n)) {
    Derivation d;
    d.fs = c.graph.canonical(impl_->symbols);
    d.marks = c.marks;
    if (table != nullptr) {
      for (const Choice& choice : c.choices) {
        int id = table->lookup(choice.first, choice.second);
        if (id > 0) ++d.choice_marks[id];
      }
    }
    result.push_back(std::move(d));
  }
  return result;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string token; in >> token;) tokens.push_back(token);
  return tokens;
}

namespace {

long long alternatives(const Annotation& a) {
  if (a.kind == Annotation::Kind::kConjunction) {
    long long product = 1;
    for (const Annotation& child : a.children) product *= alternatives(child);
    return product;
  }
  if (a.kind == Annotation::Kind::kDisjunction) {
    long long sum = 0;
    for (const Annotation& child : a.children) sum += alternatives(child);
    return sum;
  }
  return 1;
}

void count_annotation(const Annotation& a, gramcov::GrammarStats& s) {
  if (a.kind == Annotation::Kind::kDisjunction) ++s.n_disjunctions;
  if (a.is_atomic() && a.kind != Annotation::Kind::kMarkInsertion) ++s.n_constraints;
  for (const Annotation& child : a.children) count_annotation(child, s);
}

// Arcs and alternative-expanded arcs of an expression; other figures are
// accumulated into `s`.
std::pair<int, int> count_expr(const RhsExpr& e, gramcov::GrammarStats& s) {
  switch (e.kind) {
    case RhsExpr::Kind::kSymbol:
      ++s.n_constraints;
      count_annotation(e.annotation, s);
      return {1, static_cast<int>(alternatives(e.annotation))};
    case RhsExpr::Kind::kEmpty:
      count_annotation(e.annotation, s);
      return {1, static_cast<int>(alternatives(e.annotation))};
    case RhsExpr::Kind::kOptional:
    case RhsExpr::Kind::kStar: {
      ++s.n_disjunctions;
      auto [arcs, disjuncts] = count_expr(e.children[0], s);
      return {arcs + 1, disjuncts + 1};  // the empty alternative
    }
    case RhsExpr::Kind::kAlternation:
      ++s.n_disjunctions;
      [[fallthrough]];
    case RhsExpr::Kind::kPlus:
    case RhsExpr::Kind::kSequence: {
      std::pair<int, int> total{0, 0};
      for (const RhsExpr& child : e.children) {
        auto [arcs, disjuncts] = count_expr(child, s);
        total.first += arcs;
        total.second += disjuncts;
      }
      return total;
    }
  }
  return {0, 0};
}

bool partitioned(const RhsExpr& branch) {
  const RhsExpr* only = &branch;
  if (only->kind == RhsExpr::Kind::kSequence) {
    if (only->children.size() != 1) return false;
    only = &only->children[0];
  }
  if (only->kind == RhsExpr::Kind::kPlus) only = &only->children[0];
  if (only->kind == RhsExpr::Kind::kSequence && only->children.size() == 1) {
    only = &only->children[0];
  }
  if (only->kind != RhsExpr::Kind::kSymbol) return false;
  for (const Annotation& child : only->annotation.children) {
    if (child.kind == Annotation::Kind::kDisjunction) return true;
  }
  return false;
}

int annotation_marks(const Annotation& a) {
  int n = a.kind == Annotation::Kind::kDisjunction ? static_cast<int>(a.children.size()) : 0;
  for (const Annotation& child : a.children) n += annotation_marks(child);
  return n;
}

int table_marks(const RhsExpr& e) {
  int n = annotation_marks(e.annotation);
  switch (e.kind) {
    case RhsExpr::Kind::kOptional:
    case RhsExpr::Kind::kStar:
      // { e | X } and { e | X+ }
      n += 1 + (partitioned(e.children[0]) ? 0 : 1);
      break;
    case RhsExpr::Kind::kAlternation:
      for (const RhsExpr& branch : e.children) n += partitioned(branch) ? 0 : 1;
      break;
    default:
      break;
  }
  for (const RhsExpr& child : e.children) n += table_marks(child);
  return n;
}

void collect_symbols(const RhsExpr& e, std::set<std::string>& out) {
  if (e.kind == RhsExpr::Kind::kSymbol) out.insert(e.category);
  for (const RhsExpr& child : e.children) collect_symbols(child, out);
}

bool productive(const RhsExpr& e, const std::set<std::string>& known) {
  switch (e.kind) {
    case RhsExpr::Kind::kSymbol:
      return known.count(e.category) > 0;
    case RhsExpr::Kind::kEmpty:
    case RhsExpr::Kind::kOptional:
    case RhsExpr::Kind::kStar:
      return true;
    case RhsExpr::Kind::kAlternation:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const RhsExpr& c) { return productive(c, known); });
    default:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const RhsExpr& c) { return productive(c, known); });
  }
}

}  // namespace

gramcov::GrammarStats brute_stats(const Grammar& grammar) {
  gramcov::GrammarStats s;
  s.n_rules = static_cast<int>(grammar.rules.size());
  for (const Rule& rule : grammar.rules) {
    auto [arcs, disjuncts] = count_expr(rule.rhs, s);
    s.n_arcs += arcs;
    s.n_disjuncts += disjuncts;
  }
  return s;
}

int expected_table_size(const Grammar& grammar) {
  int n = 0;
  for (const Rule& rule : grammar.rules) n += table_marks(rule.rhs);
  return n;
}

std::set<std::string> unreachable_categories(const Grammar& grammar) {
  std::map<std::string, std::set<std::string>> edges;
  for (const Rule& rule : grammar.rules) collect_symbols(rule.rhs, edges[rule.lhs]);
  std::set<std::string> seen = {grammar.start};
  std::deque<std::string> queue = {grammar.start};
  while (!queue.empty()) {
    std::string next = queue.front();
    queue.pop_front();
    for (const std::string& c : edges[next]) {
      if (seen.insert(c).second) queue.push_back(c);
    }
  }
  std::set<std::string> all;
  for (const auto& [lhs, targets] : edges) {
    all.insert(lhs);
    all.insert(targets.begin(), targets.end());
  }
  std::set<std::string> out;
  for (const std::string& c : all) {
    if (!seen.count(c)) out.insert(c);
  }
  return out;
}

std::set<std::string> nonterminating_categories(const Grammar& grammar) {
  std::set<std::string> known;
  std::set<std::string> lhs;
  for (const Rule& rule : grammar.rules) lhs.insert(rule.lhs);
  for (const Rule& rule : grammar.rules) {
    std::set<std::string> used;
    collect_symbols(rule.rhs, used);
    for (const std::string& c : used) {
      if (!lhs.count(c)) known.insert(c);
    }
  }
  // Naive iteration: one pass per newly productive category at most.
  for (std::size_t round = 0; round <= grammar.rules.size(); ++round) {
    for (const Rule& rule : grammar.rules) {
      if (productive(rule.rhs, known)) known.insert(rule.lhs);
    }
  }
  std::set<std::string> out;
  for (const std::string& c : lhs) {
    if (!known.count(c)) out.insert(c);
  }
  return out;
}

bool rows_equivalent(const gramcov::UsageRow& a, const gramcov::UsageRow& b, bool strict) {
  if (strict) {
    std::vector<MarkMultiset> x = a.solutions;
    std::vector<MarkMultiset> y = b.solutions;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }
  auto sets = [](const gramcov::UsageRow& row) {
    std::set<std::set<int>> out;
    for (const MarkMultiset& m : row.solutions) {
      std::set<int> ids;
      for (const auto& [id, count] : m) ids.insert(id);
      out.insert(ids);
    }
    return out;
  };
  return sets(a) == sets(b);
}

gramcov::UsageMatrix random_matrix(std::mt19937_64& rng, int max_items, int max_disjuncts) {
  std::uniform_int_distribution<int> items_dist(1, max_items);
  std::uniform_int_distribution<int> disjuncts_dist(1, max_disjuncts);
  gramcov::UsageMatrix m;
  m.table_size = disjuncts_dist(rng);
  const int items = items_dist(rng);
  std::uniform_int_distribution<int> id_dist(1, m.table_size);
  std::uniform_int_distribution<int> count_dist(1, 3);
  std::uniform_int_distribution<int> solutions_dist(1, 3);
  std::uniform_int_distribution<int> size_dist(1, std::min(8, m.table_size));
  std::bernoulli_distribution unparsed(0.1);
  std::bernoulli_distribution ungrammatical(0.2);
  // A small pool of solution shapes makes equivalent rows likely.
  std::vector<MarkMultiset> pool;
  for (int i = 0; i < 6; ++i) {
    MarkMultiset s;
    for (int k = size_dist(rng); k > 0; --k) s[id_dist(rng)] = count_dist(rng);
    pool.push_back(s);
  }
  std::uniform_int_distribution<std::size_t> pool_dist(0, pool.size() - 1);
  for (int i = 0; i < items; ++i) {
    gramcov::UsageRow row;
    char id[16];
    std::snprintf(id, sizeof(id), "r%03d", i);
    row.id = id;
    row.grammatical = !ungrammatical(rng);
    row.elapsed = 0.001 * (1 + i % 7);
    if (unparsed(rng)) {
      row.status = gramcov::ParseStatus::kNoParse;
    } else {
      row.status = gramcov::ParseStatus::kParsed;
      for (int k = solutions_dist(rng); k > 0; --k) {
        MarkMultiset s;
        if (std::bernoulli_distribution(0.5)(rng)) {
          s = pool[pool_dist(rng)];
        } else {
          for (int j = size_dist(rng); j > 0; --j) s[id_dist(rng)] = count_dist(rng);
        }
        row.solutions.push_back(s);
        for (const auto& [id, count] : s) row.total[id] += count;
      }
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::string random_grammar(std::mt19937_64& rng) {
  static const char* kAnnotations[] = {"!=^;", "! $ ^ADJ;", "{ !=^A; | !=^B; }",
                                       "^F=x; { ^G=y; | ^G=z; | ^H=w; }", "!=^C; ~^D;"};
  static const char* kSuffixes[] = {"", "", "?", "*", "+"};
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  std::string out;
  const int rules = 1 + pick(6);
  for (int r = 0; r < rules; ++r) {
    out += "C" + std::to_string(r) + " --> ";
    const int branches = 1 + pick(3);
    if (branches > 1) out += "{ ";
    for (int b = 0; b < branches; ++b) {
      if (b > 0) out += "| ";
      const int elements = 1 + pick(3);
      for (int e = 0; e < elements; ++e) {
        if (pick(8) == 0) {
          out += "e: ^E=+; ";
          continue;
        }
        std::string category = pick(2) == 0 ? "C" + std::to_string(pick(6))
                                             : "W" + std::to_string(pick(3));
        out += category + kSuffixes[pick(5)] + ": " + kAnnotations[pick(5)] + " ";
      }
    }
    if (branches > 1) out += "}";
    out += ".\n";
  }
  return out;
}

std::set<std::vector<int>> sample_rule_combinations(int bound) {
  // Ids: 1 no object, 2 object, 3 no PP, 4 PP as OBL, 5 PP as ADJUNCT.
  std::set<std::vector<int>> out;
  for (int object : {1, 2}) {
    out.insert({object, 3});
    const int max_pps = std::max(1, bound);
    for (int k = 1; k <= max_pps; ++k) {
      for (int mask = 0; mask < (1 << k); ++mask) {
        std::set<int> ids = {object};
        for (int i = 0; i < k; ++i) ids.insert((mask >> i) & 1 ? 5 : 4);
        out.insert(std::vector<int>(ids.begin(), ids.end()));
      }
    }
  }
  return out;
}

}  // namespace oracle
