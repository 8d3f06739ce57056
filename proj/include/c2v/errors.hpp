/*
 * Copyright 2026 The c2v Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef C2V_ERRORS_HPP
#define C2V_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace c2v {

// Bad input: unreadable files, format violations, vocabulary mismatches,
// empty corpora. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure with a 1-based line number attached.
class ParseError : public DataError {
 public:
  ParseError(const std::string& file, size_t line, const std::string& msg)
      : DataError(file + ":" + std::to_string(line) + ": " + msg),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Degenerate math: all-zero posterior mass, zero-norm queries, constant
// correlation input, eigensolver non-convergence. Maps to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace c2v

#endif  // C2V_ERRORS_HPP
