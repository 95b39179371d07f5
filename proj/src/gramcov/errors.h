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

#ifndef GRAMCOV_ERRORS_H_
#define GRAMCOV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace gramcov {

// Bad user input: malformed grammar/lexicon/suite files, inconsistent
// arguments, hash mismatches. Maps to exit status 1 at the C boundary.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Syntax error with a 1-based source position.
class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                   message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Violated internal invariant. Maps to exit status 2.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gramcov

#endif  // GRAMCOV_ERRORS_H_
