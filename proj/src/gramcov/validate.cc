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

#include "gramcov/validate.h"

#include <deque>
#include <map>
#include <nlohmann/json.hpp>

namespace gramcov {
namespace {

bool derives_terminal_string(const RhsExpr& expr, const std::set<std::string>& productive) {
  switch (expr.kind) {
    case RhsExpr::Kind::kSymbol:
      return productive.count(expr.category) > 0;
    case RhsExpr::Kind::kEmpty:
    case RhsExpr::Kind::kOptional:
    case RhsExpr::Kind::kStar:
      return true;
    case RhsExpr::Kind::kPlus:
      return derives_terminal_string(expr.children.front(), productive);
    case RhsExpr::Kind::kSequence:
      for (const RhsExpr& child : expr.children) {
        if (!derives_terminal_string(child, productive)) return false;
      }
      return true;
    case RhsExpr::Kind::kAlternation:
      for (const RhsExpr& child : expr.children) {
        if (derives_terminal_string(child, productive)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

const char* diagnostic_kind_name(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::kUnreachable:
      return "unreachable";
    case Diagnostic::Kind::kNoExpansion:
      return "no_expansion";
    case Diagnostic::Kind::kNonterminating:
      return "nonterminating";
  }
  return "unknown";
}

std::vector<Diagnostic> validate_grammar(const Grammar& grammar,
                                         const std::set<std::string>* lexical) {
  std::map<std::string, const Rule*> rules;
  std::set<std::string> inventory;
  for (const Rule& rule : grammar.rules) {
    rules[rule.lhs] = &rule;
    inventory.insert(rule.lhs);
    for_each_symbol(rule.rhs, [&](const RhsExpr& symbol) { inventory.insert(symbol.category); });
  }

  std::vector<Diagnostic> result;

  std::set<std::string> reached = {grammar.start};
  std::deque<std::string> queue = {grammar.start};
  while (!queue.empty()) {
    auto it = rules.find(queue.front());
    queue.pop_front();
    if (it == rules.end()) continue;
    for_each_symbol(it->second->rhs, [&](const RhsExpr& symbol) {
      if (reached.insert(symbol.category).second) queue.push_back(symbol.category);
    });
  }
  for (const std::string& category : inventory) {
    if (!reached.count(category)) {
      result.push_back({Diagnostic::Kind::kUnreachable, category,
                        "category '" + category + "' is unreachable from '" + grammar.start +
                            "'"});
    }
  }

  std::set<std::string> productive;
  for (const std::string& category : inventory) {
    if (rules.count(category)) continue;
    if (lexical == nullptr || lexical->count(category)) {
      productive.insert(category);
    } else {
      result.push_back({Diagnostic::Kind::kNoExpansion, category,
                        "category '" + category + "' has neither a rule nor lexical entries"});
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rule] : rules) {
      if (!productive.count(lhs) && derives_terminal_string(rule->rhs, productive)) {
        productive.insert(lhs);
        changed = true;
      }
    }
  }
  for (const auto& [lhs, rule] : rules) {
    if (!productive.count(lhs)) {
      result.push_back({Diagnostic::Kind::kNonterminating, lhs,
                        "rule for '" + lhs + "' has no derivation to lexical material"});
    }
  }
  return result;
}

std::string diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Diagnostic& d : diagnostics) {
    out.push_back({{"kind", diagnostic_kind_name(d.kind)},
                   {"category", d.category},
                   {"message", d.message}});
  }
  return out.dump(2);
}

}  // namespace gramcov
