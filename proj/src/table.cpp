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

#include "sculpt/table.hpp"

#include <algorithm>

#include <json.hpp>

#include "sculpt/errors.hpp"
#include "sculpt/utf8.hpp"

namespace sculpt {

std::string to_string(const Coordinate& c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

RawTable RawTable::from_rows(const std::vector<std::vector<std::string>>& rows,
                             bool trailing_row_delimiter) {
  RawTable t;
  t.rows_ = rows.size();
  for (const auto& r : rows) t.cols_ = std::max(t.cols_, r.size());
  t.cells_.resize(t.rows_ * t.cols_);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t l = 0; l < rows[k].size(); ++l)
      t.cells_[k * t.cols_ + l] = rows[k][l];
  t.trailing_ = trailing_row_delimiter && t.rows_ > 0;
  return t;
}

std::size_t RawTable::row_width(std::size_t row) const {
  std::size_t w = 0;
  while (w < cols_ && cell(row, w + 1).has_value()) ++w;
  return w;
}

void RawTable::set_cell(std::size_t row, std::size_t col, std::string text) {
  auto& c = cells_[(row - 1) * cols_ + (col - 1)];
  if (!c) throw Error("cannot overwrite a padding cell at " +
                      to_string(Coordinate{row, col}));
  c = std::move(text);
}

RawTable parse_document(std::string_view text, const DelimiterConfig& delims) {
  if (delims.row == delims.column)
    throw ParseError("row and column delimiters must differ", 0);
  if (auto bad = utf8::find_invalid(text))
    throw ParseError("invalid UTF-8", *bad);

  std::vector<std::vector<std::string>> rows;
  if (text.empty()) return RawTable{};

  std::vector<std::string> row;
  std::string cell;
  std::size_t pos = 0;
  bool trailing = false;
  while (pos < text.size()) {
    std::size_t at = pos;
    char32_t c = *utf8::decode(text, pos);
    if (c == delims.column) {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == delims.row) {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      trailing = pos == text.size();
    } else {
      cell.append(text.substr(at, pos - at));
    }
  }
  if (!trailing) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return RawTable::from_rows(rows, trailing);
}

std::string serialize_document(const RawTable& table,
                               const DelimiterConfig& delims) {
  std::string out;
  for (std::size_t k = 1; k <= table.rows(); ++k) {
    if (k > 1) utf8::append(out, delims.row);
    for (std::size_t l = 1; l <= table.cols(); ++l) {
      const auto& c = table.cell(k, l);
      if (!c) break;
      if (l > 1) utf8::append(out, delims.column);
      out += *c;
    }
  }
  if (table.trailing_row_delimiter()) utf8::append(out, delims.row);
  return out;
}

std::string_view trim_cell(std::string_view text) {
  constexpr std::string_view ws = " \t\r";
  auto b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = text.find_last_not_of(ws);
  return text.substr(b, e - b + 1);
}

std::string dump_json(const RawTable& table) {
  nlohmann::json grid = nlohmann::json::array();
  for (std::size_t k = 1; k <= table.rows(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t l = 1; l <= table.cols(); ++l) {
      const auto& c = table.cell(k, l);
      if (c) {
        row.push_back(*c);
      } else {
        row.push_back(nullptr);
      }
    }
    grid.push_back(std::move(row));
  }
  return grid.dump();
}

}  // namespace sculpt
