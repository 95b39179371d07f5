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

#include "gramcov/grammar_stats.h"

#include <nlohmann/json.hpp>

#include "gramcov/instrument.h"

namespace gramcov {
namespace {

int count_constraints(const Annotation& annotation) {
  if (annotation.kind == Annotation::Kind::kMarkInsertion) return 0;
  if (annotation.is_atomic()) return 1;
  int total = 0;
  for (const Annotation& child : annotation.children) total += count_constraints(child);
  return total;
}

int count_disjunctions(const Annotation& annotation) {
  int total = annotation.kind == Annotation::Kind::kDisjunction ? 1 : 0;
  for (const Annotation& child : annotation.children) total += count_disjunctions(child);
  return total;
}

void accumulate(const RhsExpr& expr, GrammarStats& stats) {
  switch (expr.kind) {
    case RhsExpr::Kind::kSymbol:
      ++stats.n_constraints;
      [[fallthrough]];
    case RhsExpr::Kind::kEmpty:
      if (expr.synthetic) break;
      ++stats.n_arcs;
      stats.n_disjuncts += static_cast<int>(annotation_alternatives(expr.annotation));
      stats.n_constraints += count_constraints(expr.annotation);
      stats.n_disjunctions += count_disjunctions(expr.annotation);
      break;
    case RhsExpr::Kind::kAlternation:
      ++stats.n_disjunctions;
      break;
    default:
      break;
  }
  for (const RhsExpr& child : expr.children) accumulate(child, stats);
}

}  // namespace

long long annotation_alternatives(const Annotation& annotation) {
  switch (annotation.kind) {
    case Annotation::Kind::kConjunction: {
      long long product = 1;
      for (const Annotation& child : annotation.children) {
        product *= annotation_alternatives(child);
      }
      return product;
    }
    case Annotation::Kind::kDisjunction: {
      long long sum = 0;
      for (const Annotation& child : annotation.children) sum += annotation_alternatives(child);
      return sum;
    }
    default:
      return 1;
  }
}

GrammarStats grammar_stats(const Grammar& grammar) {
  Grammar plain = grammar;
  for (Rule& rule : plain.rules) rule.rhs = strip_mark_insertions(rule.rhs);
  plain.instrumented = false;
  Grammar normalized = normalize(plain);
  GrammarStats stats;
  stats.n_rules = static_cast<int>(normalized.rules.size());
  for (const Rule& rule : normalized.rules) accumulate(rule.rhs, stats);
  return stats;
}

std::string stats_to_json(const GrammarStats& stats) {
  nlohmann::ordered_json out = {{"rules", stats.n_rules},
                                {"arcs", stats.n_arcs},
                                {"disjuncts", stats.n_disjuncts},
                                {"constraints", stats.n_constraints},
                                {"disjunctions", stats.n_disjunctions}};
  return out.dump();
}

}  // namespace gramcov
