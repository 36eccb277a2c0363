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

// Raw tables: the rectangular view of a delimiter-separated document.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sculpt {

struct DelimiterConfig {
  char32_t column = U',';
  char32_t row = U'\n';
};

/// 1-based table coordinate. Ordered in table order (row-major).
struct Coordinate {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

std::string to_string(const Coordinate& c);

/// An n x m grid of cell strings; std::nullopt marks a padding cell.
/// Padding only ever occurs as a suffix of a row.
class RawTable {
 public:
  RawTable() = default;

  /// Builds a table from ragged rows, right-padding short rows.
  static RawTable from_rows(const std::vector<std::vector<std::string>>& rows,
                            bool trailing_row_delimiter = false);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  const std::optional<std::string>& cell(std::size_t row,
                                         std::size_t col) const {
    return cells_[(row - 1) * cols_ + (col - 1)];
  }
  bool is_padding(std::size_t row, std::size_t col) const {
    return !cell(row, col).has_value();
  }
  /// Number of non-padding cells in a row.
  std::size_t row_width(std::size_t row) const;

  /// Replaces the text of a non-padding cell.
  void set_cell(std::size_t row, std::size_t col, std::string text);

  /// True when the source document ended with a row delimiter.
  bool trailing_row_delimiter() const { return trailing_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::optional<std::string>> cells_;
  bool trailing_ = false;
};

/// Splits a document into rows and cells. A final row delimiter terminates
/// the last row rather than opening an empty one. Throws ParseError on
/// invalid UTF-8 or unusable delimiters.
RawTable parse_document(std::string_view text, const DelimiterConfig& delims = {});

/// Inverse of parse_document: padding cells contribute no text and no
/// column delimiter.
std::string serialize_document(const RawTable& table,
                               const DelimiterConfig& delims = {});

/// Cell text with surrounding spaces, tabs and carriage returns removed.
std::string_view trim_cell(std::string_view text);

/// Canonical JSON dump: an array of rows, each an array of strings with
/// `null` for padding. Cells are dumped untrimmed.
std::string dump_json(const RawTable& table);

}  // namespace sculpt
