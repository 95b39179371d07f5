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

#include "gramcov/parser.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>

#include "gramcov/errors.h"
#include "gramcov/instrument.h"
#include "gramcov/parallel.h"

namespace gramcov {
namespace compiled {

using Choice = std::pair<int, int>;

struct Path {
  PathRoot root = PathRoot::kMother;
  std::vector<int> attributes;
};

struct Constraint {
  Annotation::Kind kind = Annotation::Kind::kEquation;
  Path lhs;
  Path rhs;
  bool rhs_is_atom = false;
  int atom = -1;
};

// One disjunction-free alternative of an annotation.
struct Term {
  std::vector<Constraint> constraints;
  std::vector<int> marks;
  std::vector<Choice> choices;
  std::vector<int> constraint_ids;
};

struct Arc {
  int category = -1;  // -1: empty element, consumes no input
  int constraint_id = 0;
  std::vector<Term> terms;
  int target = 0;
};

struct Epsilon {
  int target = 0;
  std::optional<Choice> choice;
};

struct State {
  std::vector<Epsilon> epsilons;
  std::vector<int> symbol_arcs;
  std::vector<int> empty_arcs;
  bool final = false;
};

struct Automaton {
  int category = -1;
  std::vector<State> states;
  std::vector<Arc> arcs;
};

struct LexicalForm {
  int category = -1;
  std::vector<Term> terms;
};

}  // namespace compiled

class CompiledGrammar {
 public:
  Grammar source;
  Lexicon lexicon;
  SymbolTable symbols;
  SymbolTable categories;
  std::vector<int> automaton_of;  // by category; -1 without a rule
  std::vector<compiled::Automaton> automata;
  std::vector<compiled::LexicalForm> lexical;  // parallel to lexicon entries
  int start = -1;
};

namespace {

using compiled::Arc;
using compiled::Automaton;
using compiled::Choice;
using compiled::Term;

class Compiler {
 public:
  explicit Compiler(CompiledGrammar& out) : out_(out) {}

  std::vector<Term> dnf(const Annotation& annotation) {
    switch (annotation.kind) {
      case Annotation::Kind::kConjunction: {
        std::vector<Term> result(1);
        for (const Annotation& child : annotation.children) {
          std::vector<Term> factor = dnf(child);
          std::vector<Term> product;
          product.reserve(result.size() * factor.size());
          for (const Term& left : result) {
            for (const Term& right : factor) product.push_back(merge(left, right));
          }
          result = std::move(product);
        }
        return result;
      }
      case Annotation::Kind::kDisjunction: {
        std::vector<Term> result;
        for (std::size_t i = 0; i < annotation.children.size(); ++i) {
          for (Term term : dnf(annotation.children[i])) {
            if (annotation.disjunction_index >= 0) {
              term.choices.insert(term.choices.begin(),
                                  Choice{annotation.disjunction_index, static_cast<int>(i)});
            }
            result.push_back(std::move(term));
          }
        }
        return result;
      }
      case Annotation::Kind::kMarkInsertion: {
        Term term;
        term.marks.push_back(annotation.mark);
        return {term};
      }
      default: {
        Term term;
        compiled::Constraint constraint;
        constraint.kind = annotation.kind;
        constraint.lhs = path(annotation.lhs);
        constraint.rhs_is_atom = annotation.rhs_is_atom;
        if (annotation.rhs_is_atom) {
          constraint.atom = out_.symbols.intern(annotation.atom);
        } else {
          constraint.rhs = path(annotation.rhs);
        }
        term.constraints.push_back(std::move(constraint));
        if (annotation.constraint_id > 0) term.constraint_ids.push_back(annotation.constraint_id);
        return {term};
      }
    }
  }

  Automaton automaton(const Rule& rule) {
    Automaton a;
    a.category = out_.categories.intern(rule.lhs);
    a.states.emplace_back();
    int end = build(a, rule.rhs, 0);
    a.states[end].final = true;
    return a;
  }

 private:
  static Term merge(const Term& left, const Term& right) {
    Term term = left;
    term.constraints.insert(term.constraints.end(), right.constraints.begin(),
                            right.constraints.end());
    term.marks.insert(term.marks.end(), right.marks.begin(), right.marks.end());
    term.choices.insert(term.choices.end(), right.choices.begin(), right.choices.end());
    term.constraint_ids.insert(term.constraint_ids.end(), right.constraint_ids.begin(),
                               right.constraint_ids.end());
    return term;
  }

  compiled::Path path(const PathExpr& expr) {
    compiled::Path p;
    p.root = expr.root;
    for (const std::string& attribute : expr.attributes) {
      p.attributes.push_back(out_.symbols.intern(attribute));
    }
    return p;
  }

  static int new_state(Automaton& a) {
    a.states.emplace_back();
    return static_cast<int>(a.states.size()) - 1;
  }

  int build(Automaton& a, const RhsExpr& expr, int from,
            std::optional<Choice> loop = std::nullopt) {
    switch (expr.kind) {
      case RhsExpr::Kind::kSequence: {
        int current = from;
        for (const RhsExpr& child : expr.children) current = build(a, child, current);
        return current;
      }
      case RhsExpr::Kind::kSymbol:
      case RhsExpr::Kind::kEmpty: {
        int target = new_state(a);
        Arc arc;
        arc.target = target;
        arc.terms = dnf(expr.annotation);
        if (expr.kind == RhsExpr::Kind::kSymbol) {
          arc.category = out_.categories.intern(expr.category);
          arc.constraint_id = expr.constraint_id;
        }
        a.arcs.push_back(std::move(arc));
        int index = static_cast<int>(a.arcs.size()) - 1;
        if (expr.kind == RhsExpr::Kind::kSymbol) {
          a.states[from].symbol_arcs.push_back(index);
        } else {
          a.states[from].empty_arcs.push_back(index);
        }
        return target;
      }
      case RhsExpr::Kind::kAlternation: {
        int end = new_state(a);
        for (std::size_t i = 0; i < expr.children.size(); ++i) {
          const RhsExpr& branch = expr.children[i];
          std::optional<Choice> choice;
          if (expr.disjunction_index >= 0) {
            choice = Choice{expr.disjunction_index, static_cast<int>(i)};
          }
          int begin = new_state(a);
          a.states[from].epsilons.push_back({begin, choice});
          int last;
          if (branch.children.size() == 1 && branch.children.front().kind == RhsExpr::Kind::kPlus) {
            // Each further iteration re-enters the alternative.
            last = build(a, branch.children.front(), begin, choice);
          } else {
            last = build(a, branch, begin);
          }
          a.states[last].epsilons.push_back({end, std::nullopt});
        }
        return end;
      }
      case RhsExpr::Kind::kPlus: {
        int begin = new_state(a);
        a.states[from].epsilons.push_back({begin, std::nullopt});
        int last = build(a, expr.children.front(), begin);
        a.states[last].epsilons.push_back({begin, loop});
        return last;
      }
      case RhsExpr::Kind::kOptional:
      case RhsExpr::Kind::kStar:
        break;
    }
    throw InternalError("right-hand side is not normalized");
  }

  CompiledGrammar& out_;
};

struct LogNode;
using Log = std::shared_ptr<const LogNode>;

// Persistent derivation log: children first (left, then right), then the
// node's own contribution.
struct LogNode {
  Log left;
  Log right;
  const Term* term = nullptr;
  int constraint_id = 0;
  std::optional<Choice> choice;
};

Log extend(Log left, Log right, const Term* term, int constraint_id,
           std::optional<Choice> choice) {
  auto node = std::make_shared<LogNode>();
  node->left = std::move(left);
  node->right = std::move(right);
  node->term = term;
  node->constraint_id = constraint_id;
  node->choice = choice;
  return node;
}

struct Flattened {
  MarkMultiset marks;
  std::vector<Choice> choices;
  std::vector<int> constraints;
};

void flatten(const Log& log, Flattened& out) {
  std::vector<std::pair<const LogNode*, bool>> stack;
  if (log) stack.push_back({log.get(), false});
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({node, true});
      if (node->right) stack.push_back({node->right.get(), false});
      if (node->left) stack.push_back({node->left.get(), false});
      continue;
    }
    if (node->choice) out.choices.push_back(*node->choice);
    if (node->constraint_id > 0) out.constraints.push_back(node->constraint_id);
    if (node->term != nullptr) {
      for (int mark : node->term->marks) ++out.marks[mark];
      out.choices.insert(out.choices.end(), node->term->choices.begin(),
                         node->term->choices.end());
      out.constraints.insert(out.constraints.end(), node->term->constraint_ids.begin(),
                             node->term->constraint_ids.end());
    }
  }
}

using GraphPtr = std::shared_ptr<const FeatureGraph>;

bool apply(FeatureGraph& graph, const Term& term, int daughter) {
  int fresh = -1;
  auto root = [&](PathRoot r) {
    if (r == PathRoot::kMother) return static_cast<int>(FeatureGraph::kRoot);
    if (daughter >= 0) return daughter;
    if (fresh < 0) fresh = graph.new_node();
    return fresh;
  };
  for (const compiled::Constraint& c : term.constraints) {
    switch (c.kind) {
      case Annotation::Kind::kEquation: {
        int lhs = graph.follow(root(c.lhs.root), c.lhs.attributes, true);
        if (lhs < 0) return false;
        int rhs = c.rhs_is_atom ? graph.new_atom(c.atom)
                                : graph.follow(root(c.rhs.root), c.rhs.attributes, true);
        if (rhs < 0 || !graph.unify(lhs, rhs)) return false;
        break;
      }
      case Annotation::Kind::kMembership: {
        int element = graph.follow(root(c.lhs.root), c.lhs.attributes, true);
        if (element < 0) return false;
        int set = graph.follow(root(c.rhs.root), c.rhs.attributes, true);
        if (set < 0 || !graph.add_member(set, element)) return false;
        break;
      }
      case Annotation::Kind::kNonexistence:
        if (!graph.require_absent(root(c.lhs.root), c.lhs.attributes)) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

class ChartParser {
 public:
  ChartParser(const CompiledGrammar& g, const std::vector<std::vector<int>>& entries,
              const ParseOptions& options)
      : g_(g), entries_(entries), options_(options), n_(static_cast<int>(entries.size())) {
    const std::size_t cells = static_cast<std::size_t>(g.categories.size()) * (n_ + 1);
    waiting_.resize(cells);
    complete_.resize(cells);
    predicted_.assign(cells, 0);
    started_ = Clock::now();
  }

  bool run() {
    for (int i = 0; i < n_; ++i) {
      for (int entry : entries_[i]) {
        const compiled::LexicalForm& form = g_.lexical[entry];
        for (const Term& term : form.terms) {
          FeatureGraph graph;
          if (!apply(graph, term, -1) || !graph.compact()) continue;
          add_edge({form.category, i, i + 1, std::make_shared<FeatureGraph>(std::move(graph)),
                    nullptr});
        }
      }
    }
    predict(g_.start, 0);
    while (!agenda_.empty() && !exceeded_) {
      auto [is_active, index] = agenda_.front();
      agenda_.pop_front();
      if (is_active) {
        process_active(index);
      } else {
        process_edge(index);
      }
    }
    return !exceeded_;
  }

  std::vector<Solution> solutions() const {
    std::vector<Solution> result;
    if (g_.start < 0) return result;
    const DisjunctTable* table = g_.source.pruned ? nullptr : g_.source.table.get();
    for (int e : complete_[cell(g_.start, 0)]) {
      const Edge& edge = edges_[e];
      if (edge.end != n_) continue;
      Flattened flat;
      flatten(edge.log, flat);
      Solution solution;
      solution.fs = edge.graph->canonical(g_.symbols);
      solution.marks = std::move(flat.marks);
      if (table != nullptr) {
        for (const Choice& choice : flat.choices) {
          int id = table->lookup(choice.first, choice.second);
          if (id > 0) ++solution.trace_marks[id];
        }
      }
      std::sort(flat.constraints.begin(), flat.constraints.end());
      flat.constraints.erase(std::unique(flat.constraints.begin(), flat.constraints.end()),
                             flat.constraints.end());
      solution.constraints = std::move(flat.constraints);
      solution.choices = std::move(flat.choices);
      result.push_back(std::move(solution));
    }
    std::sort(result.begin(), result.end(), [](const Solution& a, const Solution& b) {
      if (a.choices != b.choices) return a.choices < b.choices;
      return a.fs < b.fs;
    });
    return result;
  }

  long long edge_count() const { return count_; }

 private:
  using Clock = std::chrono::steady_clock;

  struct Active {
    int automaton;
    int state;
    int start;
    int end;
    GraphPtr graph;
    Log log;
  };
  struct Edge {
    int category;
    int start;
    int end;
    GraphPtr graph;
    Log log;
  };

  std::size_t cell(int category, int position) const {
    return static_cast<std::size_t>(category) * (n_ + 1) + position;
  }

  void charge() {
    ++count_;
    if (count_ > options_.limits.max_edges) exceeded_ = true;
    if ((count_ & 63) == 0 &&
        std::chrono::duration<double>(Clock::now() - started_).count() >
            options_.limits.max_seconds) {
      exceeded_ = true;
    }
  }

  void add_edge(Edge edge) {
    edges_.push_back(std::move(edge));
    agenda_.emplace_back(false, static_cast<int>(edges_.size()) - 1);
    charge();
  }

  void predict(int category, int position) {
    if (category < 0) return;
    int automaton = g_.automaton_of[category];
    if (automaton < 0 || predicted_[cell(category, position)]) return;
    predicted_[cell(category, position)] = 1;
    closure(automaton, 0, position, position, std::make_shared<FeatureGraph>(), nullptr);
  }

  // Follows epsilon and empty-element transitions from `state`, recording an
  // active item at every state that can consume input or complete.
  void closure(int automaton, int state, int start, int end, const GraphPtr& graph,
               const Log& log) {
    if (exceeded_) return;
    const Automaton& a = g_.automata[automaton];
    const compiled::State& s = a.states[state];
    if (!s.symbol_arcs.empty() || s.final) {
      actives_.push_back({automaton, state, start, end, graph, log});
      agenda_.emplace_back(true, static_cast<int>(actives_.size()) - 1);
      charge();
    }
    for (const compiled::Epsilon& eps : s.epsilons) {
      closure(automaton, eps.target, start, end, graph,
              eps.choice ? extend(log, nullptr, nullptr, 0, eps.choice) : log);
    }
    for (int arc_index : s.empty_arcs) {
      const Arc& arc = a.arcs[arc_index];
      for (const Term& term : arc.terms) {
        Log extended = extend(log, nullptr, &term, 0, std::nullopt);
        // Mark-only terms leave the graph unchanged.
        if (term.constraints.empty()) {
          closure(automaton, arc.target, start, end, graph, extended);
          continue;
        }
        auto next = std::make_shared<FeatureGraph>(*graph);
        if (!apply(*next, term, -1)) continue;
        closure(automaton, arc.target, start, end, next, extended);
      }
    }
  }

  void process_active(int index) {
    const Active active = actives_[index];
    const Automaton& a = g_.automata[active.automaton];
    const compiled::State& s = a.states[active.state];
    for (int arc_index : s.symbol_arcs) {
      int category = a.arcs[arc_index].category;
      std::size_t key = cell(category, active.end);
      waiting_[key].emplace_back(index, arc_index);
      predict(category, active.end);
      const std::vector<int> ready = complete_[key];
      for (int e : ready) combine(active, arc_index, edges_[e]);
    }
    if (s.final) {
      FeatureGraph graph = *active.graph;
      if (graph.compact()) {
        add_edge({a.category, active.start, active.end,
                  std::make_shared<FeatureGraph>(std::move(graph)), active.log});
      }
    }
  }

  void process_edge(int index) {
    const Edge edge = edges_[index];
    std::size_t key = cell(edge.category, edge.start);
    complete_[key].push_back(index);
    const std::vector<std::pair<int, int>> waiting = waiting_[key];
    for (auto [active, arc] : waiting) combine(actives_[active], arc, edge);
  }

  void combine(const Active& active, int arc_index, const Edge& edge) {
    const Arc& arc = g_.automata[active.automaton].arcs[arc_index];
    for (const Term& term : arc.terms) {
      if (exceeded_) return;
      auto graph = std::make_shared<FeatureGraph>(*active.graph);
      int daughter = graph->import(*edge.graph);
      if (!apply(*graph, term, daughter)) continue;
      closure(active.automaton, arc.target, active.start, edge.end, graph,
              extend(active.log, edge.log, &term, arc.constraint_id, std::nullopt));
    }
  }

  const CompiledGrammar& g_;
  const std::vector<std::vector<int>>& entries_;
  const ParseOptions& options_;
  const int n_;

  std::deque<Active> actives_;
  std::deque<Edge> edges_;
  std::deque<std::pair<bool, int>> agenda_;
  std::vector<std::vector<std::pair<int, int>>> waiting_;
  std::vector<std::vector<int>> complete_;
  std::vector<char> predicted_;
  long long count_ = 0;
  bool exceeded_ = false;
  Clock::time_point started_;
};

}  // namespace

const char* status_name(ParseStatus status) {
  switch (status) {
    case ParseStatus::kParsed:
      return "parsed";
    case ParseStatus::kNoParse:
      return "no_parse";
    case ParseStatus::kResourceExceeded:
      return "resource_exceeded";
  }
  return "unknown";
}

ParseStatus parse_status(std::string_view name) {
  if (name == "parsed") return ParseStatus::kParsed;
  if (name == "no_parse") return ParseStatus::kNoParse;
  if (name == "resource_exceeded") return ParseStatus::kResourceExceeded;
  throw InputError("unknown parse status '" + std::string(name) + "'");
}

TokenizeResult tokenize(std::string_view text, const Lexicon& lexicon, bool fold_case) {
  TokenizeResult result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t begin = text.find_first_not_of(" \t\r\n", pos);
    if (begin == std::string_view::npos) break;
    std::size_t end = text.find_first_of(" \t\r\n", begin);
    if (end == std::string_view::npos) end = text.size();
    std::string surface(text.substr(begin, end - begin));
    if (lexicon.lookup(surface, fold_case).empty()) result.unknown.push_back(surface);
    result.tokens.push_back({surface, static_cast<int>(result.tokens.size())});
    pos = end;
  }
  return result;
}

Solution strip_marks(Solution solution) {
  solution.marks.clear();
  return solution;
}

std::shared_ptr<const CompiledGrammar> compile(const Grammar& grammar, const Lexicon& lexicon) {
  auto out = std::make_shared<CompiledGrammar>();
  out->source = grammar.instrumented ? grammar : normalize(grammar);
  out->lexicon = lexicon;
  Compiler compiler(*out);
  for (const Rule& rule : out->source.rules) out->categories.intern(rule.lhs);
  for (const Rule& rule : out->source.rules) out->automata.push_back(compiler.automaton(rule));
  for (const LexicalEntry& entry : lexicon.entries()) {
    compiled::LexicalForm form;
    form.category = out->categories.intern(entry.category);
    form.terms = compiler.dnf(entry.annotation);
    // Lexical disjunctions are not instrumented.
    for (Term& term : form.terms) term.choices.clear();
    out->lexical.push_back(std::move(form));
  }
  out->automaton_of.assign(out->categories.size(), -1);
  for (std::size_t i = 0; i < out->automata.size(); ++i) {
    out->automaton_of[out->automata[i].category] = static_cast<int>(i);
  }
  out->start = out->categories.find(out->source.start);
  return out;
}

const Grammar& compiled_source(const CompiledGrammar& compiled) { return compiled.source; }

ParseRecord parse_item(const CompiledGrammar& compiled, const TestItem& item,
                       const ParseOptions& options) {
  auto started = std::chrono::steady_clock::now();
  ParseRecord record;
  record.id = item.id;
  record.text = item.text;
  record.grammatical = item.grammatical;

  TokenizeResult tokens = tokenize(item.text, compiled.lexicon, options.fold_case);
  if (!tokens.unknown.empty()) {
    std::string list;
    for (const std::string& token : tokens.unknown) list += (list.empty() ? "" : " ") + token;
    if (options.unknown_token_error) {
      throw InputError("item '" + item.id + "': unknown token(s): " + list);
    }
    record.status = ParseStatus::kNoParse;
    record.note = "unknown token(s): " + list;
  } else {
    std::vector<std::vector<int>> entries;
    for (const Token& token : tokens.tokens) {
      entries.push_back(compiled.lexicon.lookup(token.surface, options.fold_case));
    }
    ChartParser parser(compiled, entries, options);
    bool finished = parser.run();
    record.edges = parser.edge_count();
    if (!finished) {
      record.status = ParseStatus::kResourceExceeded;
    } else {
      record.solutions = parser.solutions();
      record.status =
          record.solutions.empty() ? ParseStatus::kNoParse : ParseStatus::kParsed;
    }
  }
  record.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

std::vector<ParseRecord> parse_items(const CompiledGrammar& compiled,
                                     const std::vector<TestItem>& items,
                                     const ParseOptions& options, int jobs) {
  std::vector<ParseRecord> records(items.size());
  parallel_for(items.size(), jobs,
               [&](std::size_t i) { records[i] = parse_item(compiled, items[i], options); });
  return records;
}

}  // namespace gramcov
