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

// Disjunct numbering and mark injection.
//
// Normalization rewrites `X?` to `{ e | X }` and `X*` to `{ e | X+ }` so that
// absent constituents become markable alternatives. Every alternative of a
// disjunction then receives one `DISJUNCT-nnn $ o*;` insertion on its anchor:
//
//   * the first symbol at the alternative's top level, else its first empty
//     element, else a synthetic empty element placed in front;
//   * for an alternative that is a single iteration `X+`, the anchor is chosen
//     inside X, so the mark fires once per iteration;
//   * an alternative consisting of one symbol (possibly iterated) whose
//     annotation holds a disjunction gets no mark of its own; the annotation
//     disjuncts partition it.
//
// Serials follow source order of the anchors.

#ifndef GRAMCOV_INSTRUMENT_H_
#define GRAMCOV_INSTRUMENT_H_

#include <string>

#include "gramcov/grammar.h"

namespace gramcov {

Grammar normalize(const Grammar& grammar);

// Throws InputError if `grammar` is already instrumented.
Grammar instrument(const Grammar& grammar);

// Removes mark insertions and synthetic empties (but keeps normalization).
RhsExpr strip_mark_insertions(const RhsExpr& expr);
Annotation strip_mark_insertions(const Annotation& annotation);

// JSON array of {id, rule, span, description, comment, disjunction, branch}.
std::string table_to_json(const DisjunctTable& table);

}  // namespace gramcov

#endif  // GRAMCOV_INSTRUMENT_H_
