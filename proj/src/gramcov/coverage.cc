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

#include "gramcov/coverage.h"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <map>

#include "gramcov/errors.h"
#include "gramcov/grammar_stats.h"

namespace gramcov {

std::set<int> UsageRow::exercised() const {
  std::set<int> ids;
  for (const auto& [id, count] : total) ids.insert(id);
  return ids;
}

const UsageRow* UsageMatrix::find(const std::string& id) const {
  for (const UsageRow& row : rows) {
    if (row.id == id) return &row;
  }
  return nullptr;
}

UsageMatrix accumulate_usage(const std::vector<ParseRecord>& records,
                             const DisjunctTable& table) {
  UsageMatrix matrix;
  matrix.table_size = static_cast<int>(table.size());
  for (const ParseRecord& record : records) {
    UsageRow row;
    row.id = record.id;
    row.text = record.text;
    row.grammatical = record.grammatical;
    row.status = record.status;
    row.elapsed = record.elapsed;
    for (const Solution& solution : record.solutions) {
      for (const auto& [id, count] : solution.marks) {
        if (!table.contains(id)) {
          throw InputError("item '" + record.id + "' uses " + disjunct_name(id) +
                           ", which is not in the disjunct table");
        }
        row.total[id] += count;
      }
      row.solutions.push_back(solution.marks);
      row.constraints.insert(solution.constraints.begin(), solution.constraints.end());
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

double Ratio::value() const {
  return defined() ? static_cast<double>(numerator) / static_cast<double>(denominator) : 0.0;
}

std::string Ratio::display() const { return truncate_two_decimals(numerator, denominator); }

std::string truncate_two_decimals(long long numerator, long long denominator) {
  if (denominator <= 0) return "n/a";
  long long hundredths = numerator * 100 / denominator;
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%lld.%02lld", hundredths / 100, hundredths % 100);
  return buffer;
}

std::string percent_truncated(long long numerator, long long denominator) {
  if (denominator <= 0) return "n/a";
  return std::to_string(numerator * 100 / denominator) + "%";
}

namespace {

bool counts(const UsageRow& row, const CoverageOptions& options) {
  return row.parseable() && (row.grammatical || options.include_ungrammatical);
}

}  // namespace

CoverageReport coverage_report(const UsageMatrix& matrix, const Grammar& grammar,
                               const CoverageOptions& options) {
  CoverageReport report;
  report.includes_ungrammatical = options.include_ungrammatical;
  report.items = static_cast<int>(matrix.rows.size());
  std::set<int> constraints;
  for (const UsageRow& row : matrix.rows) {
    if (!row.parseable()) continue;
    ++report.parseable;
    if (!row.grammatical) ++report.parseable_ungrammatical;
    if (!counts(row, options)) continue;
    for (const auto& [id, count] : row.total) report.exercised.insert(id);
    constraints.insert(row.constraints.begin(), row.constraints.end());
  }
  for (int id = 1; id <= matrix.table_size; ++id) {
    if (!report.exercised.count(id)) report.unexercised.insert(id);
  }
  report.t_dis = {static_cast<long long>(report.exercised.size()), matrix.table_size};
  report.t_con = {static_cast<long long>(constraints.size()),
                  grammar_stats(grammar).n_constraints};
  return report;
}

namespace {

using Combo = std::vector<int>;
using ComboSet = std::set<Combo>;

class Enumerator {
 public:
  // With `allowed`, only combinations drawn from it are built.
  Enumerator(const Grammar& grammar, const InteractionOptions& options,
             const std::set<int>* allowed = nullptr)
      : grammar_(grammar), options_(options), allowed_(allowed) {
    compute_reach();
  }

  ComboSet run() {
    const Rule* start = grammar_.find_rule(grammar_.start);
    if (start == nullptr) return {};
    path_[start->lhs] = 1;
    return expr(start->rhs);
  }

  bool exact() const { return exact_; }

 private:
  // Categories whose expansion can be entered below each rule, itself
  // included when recursive. Only their path counts affect an expansion.
  void compute_reach() {
    std::map<std::string, std::set<std::string>> direct;
    for (const Rule& rule : grammar_.rules) {
      for_each_symbol(rule.rhs, [&](const RhsExpr& symbol) {
        if (grammar_.find_rule(symbol.category) != nullptr) {
          direct[rule.lhs].insert(symbol.category);
        }
      });
    }
    for (const Rule& rule : grammar_.rules) {
      std::set<std::string>& seen = reach_[rule.lhs];
      std::vector<std::string> stack(direct[rule.lhs].begin(), direct[rule.lhs].end());
      while (!stack.empty()) {
        std::string category = stack.back();
        stack.pop_back();
        if (!seen.insert(category).second) continue;
        for (const std::string& next : direct[category]) stack.push_back(next);
      }
      seen.insert(rule.lhs);
    }
  }

  // Each product merges at most cap pairs; products whose results collapse
  // onto few sets would otherwise run long below the cap.
  ComboSet product(const ComboSet& a, const ComboSet& b) {
    ComboSet result;
    long long work = 0;
    for (const Combo& x : a) {
      for (const Combo& y : b) {
        if (++work > options_.cap) {
          exact_ = false;
          return result;
        }
        Combo merged;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(merged));
        result.insert(std::move(merged));
        if (static_cast<long long>(result.size()) >= options_.cap) {
          exact_ = false;
          return result;
        }
      }
    }
    return result;
  }

  void absorb(ComboSet& into, const ComboSet& from) {
    for (const Combo& combo : from) {
      if (static_cast<long long>(into.size()) >= options_.cap && !into.count(combo)) {
        exact_ = false;
        return;
      }
      into.insert(combo);
    }
  }

  ComboSet annotation(const Annotation& a) {
    switch (a.kind) {
      case Annotation::Kind::kConjunction: {
        ComboSet result = {Combo{}};
        for (const Annotation& child : a.children) {
          result = product(result, annotation(child));
          if (result.empty()) break;
        }
        return result;
      }
      case Annotation::Kind::kDisjunction: {
        ComboSet result;
        for (const Annotation& child : a.children) absorb(result, annotation(child));
        return result;
      }
      case Annotation::Kind::kMarkInsertion:
        if (allowed_ != nullptr && !allowed_->count(a.mark)) return {};
        return {Combo{a.mark}};
      default:
        return {Combo{}};
    }
  }

  std::string memo_key(const std::string& category) {
    std::string key = category;
    for (const std::string& name : reach_[category]) {
      auto it = path_.find(name);
      if (it != path_.end() && it->second > 0) key += "|" + name + "=" + std::to_string(it->second);
    }
    return key;
  }

  ComboSet symbol(const RhsExpr& e) {
    ComboSet own = annotation(e.annotation);
    const Rule* rule = grammar_.find_rule(e.category);
    if (rule == nullptr) return own;
    int& depth = path_[e.category];
    if (depth >= 1 + options_.recursion_bound) return {};
    std::string key = memo_key(e.category);
    auto cached = memo_.find(key);
    if (cached == memo_.end()) {
      ++path_[e.category];
      ComboSet below = expr(rule->rhs);
      --path_[e.category];
      cached = memo_.emplace(std::move(key), std::move(below)).first;
    }
    return product(own, cached->second);
  }

  ComboSet expr(const RhsExpr& e) {
    switch (e.kind) {
      case RhsExpr::Kind::kSymbol:
        return symbol(e);
      case RhsExpr::Kind::kEmpty:
        return annotation(e.annotation);
      case RhsExpr::Kind::kSequence: {
        ComboSet result = {Combo{}};
        for (const RhsExpr& child : e.children) {
          result = product(result, expr(child));
          if (result.empty()) break;
        }
        return result;
      }
      case RhsExpr::Kind::kAlternation: {
        ComboSet result;
        for (const RhsExpr& child : e.children) absorb(result, expr(child));
        return result;
      }
      case RhsExpr::Kind::kPlus: {
        ComboSet body = expr(e.children.front());
        ComboSet result = body;
        ComboSet repeated = body;
        for (int k = 2; k <= std::max(1, options_.recursion_bound); ++k) {
          repeated = product(repeated, body);
          absorb(result, repeated);
        }
        return result;
      }
      case RhsExpr::Kind::kOptional:
      case RhsExpr::Kind::kStar:
        break;
    }
    throw InternalError("interaction coverage needs a normalized grammar");
  }

  const Grammar& grammar_;
  const InteractionOptions& options_;
  const std::set<int>* allowed_;
  std::map<std::string, std::set<std::string>> reach_;
  std::map<std::string, int> path_;
  std::map<std::string, ComboSet> memo_;
  bool exact_ = true;
};

}  // namespace

std::set<std::vector<int>> enumerate_combinations(const Grammar& grammar,
                                                  const InteractionOptions& options,
                                                  bool* exact) {
  if (!grammar.instrumented) {
    throw InputError("interaction coverage needs an instrumented grammar");
  }
  if (options.recursion_bound < 0 || options.cap <= 0) {
    throw InputError("recursion bound must be >= 0 and the cap positive");
  }
  Enumerator enumerator(grammar, options);
  ComboSet combos = enumerator.run();
  if (exact != nullptr) *exact = enumerator.exact();
  if (!enumerator.exact() && options.strict_cap) {
    throw InputError("interaction enumeration exceeded the cap of " +
                     std::to_string(options.cap) + " combinations");
  }
  return combos;
}

InteractionCoverage interaction_coverage(const Grammar& grammar, const UsageMatrix& matrix,
                                         const InteractionOptions& options,
                                         const CoverageOptions& coverage) {
  InteractionCoverage result;
  result.recursion_bound = options.recursion_bound;
  result.cap = options.cap;
  ComboSet combos = enumerate_combinations(grammar, options, &result.exact);
  std::set<Combo> solutions;
  for (const UsageRow& row : matrix.rows) {
    if (!counts(row, coverage)) continue;
    for (const MarkMultiset& solution : row.solutions) {
      Combo combo;
      for (const auto& [id, count] : solution) combo.push_back(id);
      solutions.insert(std::move(combo));
    }
  }
  // Past the cap the enumeration is partial; a solution set missing from it
  // is then checked by enumerating only combinations of its own disjuncts.
  ComboSet witnessed;
  for (const Combo& combo : solutions) {
    bool legal = combos.count(combo) > 0;
    if (!legal && !result.exact) {
      std::set<int> allowed(combo.begin(), combo.end());
      Enumerator restricted(grammar, options, &allowed);
      legal = restricted.run().count(combo) > 0;
    }
    if (legal) witnessed.insert(combo);
  }
  combos.insert(witnessed.begin(), witnessed.end());
  result.ratio = {static_cast<long long>(witnessed.size()),
                  static_cast<long long>(combos.size())};
  return result;
}

}  // namespace gramcov
