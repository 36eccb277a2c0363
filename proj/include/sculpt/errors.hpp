/*  Copyright 2026 The sculpt authors.

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License. */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sculpt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document or expression text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t byte_offset)
      : Error(msg + " at byte " + std::to_string(byte_offset)),
        detail_(msg),
        offset_(byte_offset) {}
  std::size_t byte_offset() const { return offset_; }
  /// The message without the position suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

/// Malformed schema. Line and column are 1-based; 0 means unknown.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg, std::size_t line = 0,
                       std::size_t column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line,
                            std::size_t column) {
    if (line == 0) return msg;
    return "line " + std::to_string(line) + ":" + std::to_string(column) +
           ": " + msg;
  }
  std::size_t line_;
  std::size_t column_;
};

/// Expression or schema outside the fragment an engine supports.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// Strong-mode carryover grew beyond its static bound. Indicates a bug in
/// the guardedness analysis or the strong simulator.
class RepresentationOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace sculpt
