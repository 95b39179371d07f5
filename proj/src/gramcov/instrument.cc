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

#include "gramcov/instrument.h"

#include <map>
#include <nlohmann/json.hpp>

#include "gramcov/errors.h"

namespace gramcov {
namespace {

using Kind = RhsExpr::Kind;

RhsExpr make_empty(const SourceSpan& span) {
  RhsExpr empty;
  empty.kind = Kind::kEmpty;
  empty.span = span;
  return empty;
}

RhsExpr make_sequence(std::vector<RhsExpr> elements, const SourceSpan& span) {
  RhsExpr seq;
  seq.kind = Kind::kSequence;
  seq.span = span;
  for (RhsExpr& element : elements) {
    if (element.kind == Kind::kSequence) {
      for (RhsExpr& inner : element.children) seq.children.push_back(std::move(inner));
      seq.comments.insert(seq.comments.end(), element.comments.begin(),
                          element.comments.end());
    } else {
      seq.children.push_back(std::move(element));
    }
  }
  return seq;
}

// Single-element sequences under an iteration collapse to the element.
RhsExpr unwrap_single(RhsExpr expr) {
  if (expr.kind == Kind::kSequence && expr.children.size() == 1 && expr.comments.empty()) {
    return std::move(expr.children.front());
  }
  return expr;
}

RhsExpr normalize_expr(const RhsExpr& expr) {
  switch (expr.kind) {
    case Kind::kSymbol:
    case Kind::kEmpty:
      return expr;
    case Kind::kSequence: {
      std::vector<RhsExpr> elements;
      for (const RhsExpr& child : expr.children) elements.push_back(normalize_expr(child));
      RhsExpr seq = make_sequence(std::move(elements), expr.span);
      seq.comments.insert(seq.comments.begin(), expr.comments.begin(), expr.comments.end());
      seq.disjunct = expr.disjunct;
      return seq;
    }
    case Kind::kAlternation: {
      RhsExpr alt = expr;
      alt.children.clear();
      for (const RhsExpr& branch : expr.children) {
        RhsExpr normalized = normalize_expr(branch);
        if (normalized.kind != Kind::kSequence) {
          normalized = make_sequence({std::move(normalized)}, branch.span);
        }
        alt.children.push_back(std::move(normalized));
      }
      return alt;
    }
    case Kind::kPlus: {
      RhsExpr plus;
      plus.kind = Kind::kPlus;
      plus.span = expr.span;
      plus.children.push_back(unwrap_single(normalize_expr(expr.children.front())));
      return plus;
    }
    case Kind::kOptional:
    case Kind::kStar: {
      RhsExpr operand = unwrap_single(normalize_expr(expr.children.front()));
      RhsExpr filled;
      if (expr.kind == Kind::kStar) {
        RhsExpr plus;
        plus.kind = Kind::kPlus;
        plus.span = expr.span;
        plus.children.push_back(std::move(operand));
        filled = make_sequence({std::move(plus)}, expr.span);
      } else {
        filled = make_sequence({std::move(operand)}, expr.span);
      }
      RhsExpr alt;
      alt.kind = Kind::kAlternation;
      alt.span = expr.span;
      alt.children.push_back(make_sequence({make_empty(expr.span)}, expr.span));
      alt.children.push_back(std::move(filled));
      return alt;
    }
  }
  throw InternalError("unhandled right-hand-side kind");
}

bool has_top_level_disjunction(const Annotation& annotation) {
  for (const Annotation& child : annotation.children) {
    if (child.kind == Annotation::Kind::kDisjunction) return true;
  }
  return false;
}

// Alternatives whose marking is delegated to their annotation disjuncts.
bool is_partitioned_by_annotation(const RhsExpr& branch) {
  if (branch.children.size() != 1) return false;
  const RhsExpr* element = &branch.children.front();
  if (element->kind == Kind::kPlus) element = &element->children.front();
  return element->kind == Kind::kSymbol && has_top_level_disjunction(element->annotation);
}

// The sequence within which an alternative's anchor is searched.
RhsExpr* anchor_scope(RhsExpr& branch) {
  if (branch.children.size() == 1 && branch.children.front().kind == Kind::kPlus) {
    RhsExpr& body = branch.children.front().children.front();
    if (body.kind != Kind::kSequence) {
      if (body.kind == Kind::kSymbol || body.kind == Kind::kEmpty) return &body;
      SourceSpan span = body.span;
      body = make_sequence({std::move(body)}, span);
    }
    return &body;
  }
  return &branch;
}

RhsExpr* find_anchor(RhsExpr& scope) {
  if (scope.kind == Kind::kSymbol || scope.kind == Kind::kEmpty) return &scope;
  for (RhsExpr& element : scope.children) {
    if (element.kind == Kind::kSymbol) return &element;
  }
  for (RhsExpr& element : scope.children) {
    if (element.kind == Kind::kEmpty) return &element;
  }
  return nullptr;
}

// Pass 1: give every markable alternative an anchor.
void ensure_anchors(RhsExpr& expr) {
  for (RhsExpr& child : expr.children) ensure_anchors(child);
  if (expr.kind != Kind::kAlternation) return;
  for (RhsExpr& branch : expr.children) {
    if (is_partitioned_by_annotation(branch)) continue;
    RhsExpr* scope = anchor_scope(branch);
    if (find_anchor(*scope) == nullptr) {
      RhsExpr marker = make_empty(scope->span);
      marker.synthetic = true;
      scope->children.insert(scope->children.begin(), std::move(marker));
    }
  }
}

struct PendingBranch {
  RhsExpr* branch;
  int disjunction;
  int index;
};

Annotation make_mark(int id) {
  Annotation mark;
  mark.kind = Annotation::Kind::kMarkInsertion;
  mark.mark = id;
  return mark;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& part : parts) {
    if (!out.empty()) out += "; ";
    out += part;
  }
  return out;
}

class Numbering {
 public:
  explicit Numbering(DisjunctTable& table) : table_(table) {}

  void rule(Rule& rule) {
    rule_ = rule.lhs;
    visit(rule.rhs);
  }

 private:
  void visit(RhsExpr& expr) {
    switch (expr.kind) {
      case Kind::kSymbol:
      case Kind::kEmpty: {
        auto pending = anchors_.find(&expr);
        if (pending != anchors_.end()) {
          mark_branch(expr, pending->second);
          anchors_.erase(pending);
        }
        visit_annotation(expr.annotation, expr.category);
        return;
      }
      case Kind::kAlternation: {
        expr.disjunction_index = next_disjunction_++;
        for (std::size_t i = 0; i < expr.children.size(); ++i) {
          RhsExpr& branch = expr.children[i];
          if (is_partitioned_by_annotation(branch)) continue;
          RhsExpr* anchor = find_anchor(*anchor_scope(branch));
          if (anchor == nullptr) throw InternalError("alternative without anchor");
          anchors_[anchor] = PendingBranch{&branch, expr.disjunction_index,
                                           static_cast<int>(i)};
        }
        for (RhsExpr& branch : expr.children) visit(branch);
        return;
      }
      default:
        for (RhsExpr& child : expr.children) visit(child);
        return;
    }
  }

  void mark_branch(RhsExpr& anchor, const PendingBranch& pending) {
    DisjunctEntry entry;
    entry.id = static_cast<int>(table_.size()) + 1;
    entry.rule = rule_;
    entry.span = pending.branch->span;
    std::string printed = print_rhs(strip_mark_insertions(*pending.branch));
    entry.description = rule_ + ": " + (printed.empty() ? "e" : printed);
    std::vector<std::string> comments = pending.branch->comments;
    for (const RhsExpr& element : pending.branch->children) {
      comments.insert(comments.end(), element.annotation.comments.begin(),
                      element.annotation.comments.end());
    }
    entry.comment = join(comments);
    entry.disjunction = pending.disjunction;
    entry.branch = pending.index;
    collect_categories(*pending.branch, entry.categories);
    pending.branch->disjunct = entry.id;
    anchor.annotation.children.push_back(make_mark(entry.id));
    table_.add(std::move(entry));
  }

  static void collect_categories(const RhsExpr& expr, std::vector<std::string>& out) {
    for (const RhsExpr& child : expr.children) {
      if (child.kind == Kind::kSymbol) {
        out.push_back(child.category);
      } else if (child.kind == Kind::kPlus || child.kind == Kind::kSequence) {
        if (child.kind == Kind::kPlus && child.children.front().kind == Kind::kSymbol) {
          out.push_back(child.children.front().category);
        } else {
          collect_categories(child.kind == Kind::kPlus ? child.children.front() : child, out);
        }
      }
    }
  }

  void visit_annotation(Annotation& annotation, const std::string& category) {
    for (Annotation& child : annotation.children) {
      if (child.kind != Annotation::Kind::kDisjunction) continue;
      child.disjunction_index = next_disjunction_++;
      for (std::size_t i = 0; i < child.children.size(); ++i) {
        Annotation& branch = child.children[i];
        DisjunctEntry entry;
        entry.id = static_cast<int>(table_.size()) + 1;
        entry.rule = rule_;
        entry.span = branch.span;
        entry.description = rule_ + ": " + (category.empty() ? "e" : category) + " { " +
                            print_annotation(strip_mark_insertions(branch)) + " }";
        entry.comment = join(branch.comments);
        entry.disjunction = child.disjunction_index;
        entry.branch = static_cast<int>(i);
        if (!category.empty()) entry.categories.push_back(category);
        branch.disjunct = entry.id;
        branch.children.push_back(make_mark(entry.id));
        table_.add(std::move(entry));
        visit_annotation(branch, category);
      }
    }
  }

  DisjunctTable& table_;
  std::string rule_;
  int next_disjunction_ = 0;
  std::map<const RhsExpr*, PendingBranch> anchors_;
};

void number_constraints(Annotation& annotation, int& next) {
  if (annotation.kind == Annotation::Kind::kMarkInsertion) return;
  if (annotation.is_atomic()) {
    annotation.constraint_id = next++;
    return;
  }
  for (Annotation& child : annotation.children) number_constraints(child, next);
}

void number_constraints(RhsExpr& expr, int& next) {
  if (expr.kind == Kind::kSymbol) expr.constraint_id = next++;
  number_constraints(expr.annotation, next);
  for (RhsExpr& child : expr.children) number_constraints(child, next);
}

}  // namespace

Grammar normalize(const Grammar& grammar) {
  Grammar result = grammar;
  int next_constraint = 1;
  for (Rule& rule : result.rules) {
    RhsExpr normalized = normalize_expr(rule.rhs);
    if (normalized.kind != Kind::kSequence) {
      normalized = make_sequence({std::move(normalized)}, rule.rhs.span);
    }
    rule.rhs = std::move(normalized);
    number_constraints(rule.rhs, next_constraint);
  }
  return result;
}

Grammar instrument(const Grammar& grammar) {
  if (grammar.instrumented) {
    throw InputError("grammar is already instrumented");
  }
  Grammar result = normalize(grammar);
  for (Rule& rule : result.rules) ensure_anchors(rule.rhs);
  auto table = std::make_shared<DisjunctTable>();
  Numbering numbering(*table);
  for (Rule& rule : result.rules) numbering.rule(rule);
  result.table = std::move(table);
  result.instrumented = true;
  return result;
}

Annotation strip_mark_insertions(const Annotation& annotation) {
  Annotation result = annotation;
  result.children.clear();
  for (const Annotation& child : annotation.children) {
    if (child.kind == Annotation::Kind::kMarkInsertion) continue;
    result.children.push_back(strip_mark_insertions(child));
  }
  return result;
}

RhsExpr strip_mark_insertions(const RhsExpr& expr) {
  RhsExpr result = expr;
  result.annotation = strip_mark_insertions(expr.annotation);
  result.children.clear();
  for (const RhsExpr& child : expr.children) {
    if (child.synthetic) continue;
    result.children.push_back(strip_mark_insertions(child));
  }
  return result;
}

std::string table_to_json(const DisjunctTable& table) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const DisjunctEntry& entry : table.entries()) {
    entries.push_back({{"id", disjunct_name(entry.id)},
                       {"rule", entry.rule},
                       {"span", entry.span.to_string()},
                       {"description", entry.description},
                       {"comment", entry.comment},
                       {"disjunction", entry.disjunction},
                       {"branch", entry.branch}});
  }
  return entries.dump(2);
}

}  // namespace gramcov
