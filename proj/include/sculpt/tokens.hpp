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

// Tokenized tables and their event streams.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sculpt/table.hpp"
#include "sculpt/text_regex.hpp"

namespace sculpt {

using TokenId = std::uint32_t;

/// Interned token names. Ids are dense and assigned in insertion order.
class Alphabet {
 public:
  TokenId add(const std::string& name);
  std::optional<TokenId> find(std::string_view name) const;
  const std::string& name(TokenId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  std::size_t words() const { return (names_.size() + 63) / 64; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TokenId> ids_;
};

/// Non-owning view of a cell's token set. A padding cell has `padding()`
/// set and no tokens.
class TokenSetView {
 public:
  TokenSetView() = default;
  TokenSetView(std::span<const std::uint64_t> words, bool padding)
      : words_(words), padding_(padding) {}

  bool padding() const { return padding_; }
  bool contains(TokenId id) const {
    std::size_t w = id / 64;
    return w < words_.size() && ((words_[w] >> (id % 64)) & 1U);
  }
  bool empty() const;
  std::vector<TokenId> ids() const;
  std::span<const std::uint64_t> words() const { return words_; }

 private:
  std::span<const std::uint64_t> words_;
  bool padding_ = false;
};

class TokenSet {
 public:
  TokenSet() = default;
  explicit TokenSet(std::size_t alphabet_size)
      : words_((alphabet_size + 63) / 64, 0) {}

  void insert(TokenId id) { words_[id / 64] |= std::uint64_t{1} << (id % 64); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); padding_ = false; }
  void set_padding(bool p) { padding_ = p; }
  TokenSetView view() const { return {words_, padding_}; }

 private:
  std::vector<std::uint64_t> words_;
  bool padding_ = false;
};

/// Sorted, comma-separated token names, or "Null" for a padding cell.
std::string format_token_set(TokenSetView set, const Alphabet& alphabet);

/// The n x m grid of token sets. Immutable once built by the Tokenizer,
/// apart from the explicit setters used by generators.
class TokenizedTable {
 public:
  TokenizedTable() = default;
  TokenizedTable(std::shared_ptr<const Alphabet> alphabet, std::size_t rows,
                 std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t cell_count() const { return rows_ * cols_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const {
    return alphabet_;
  }

  TokenSetView cell(std::size_t row, std::size_t col) const {
    std::size_t i = index(row, col);
    return {std::span<const std::uint64_t>(bits_.data() + i * stride_, stride_),
            padding_[i] != 0};
  }
  bool is_padding(std::size_t row, std::size_t col) const {
    return padding_[index(row, col)] != 0;
  }

  void set_cell(std::size_t row, std::size_t col, TokenSetView set);
  void add_token(std::size_t row, std::size_t col, TokenId id);
  void set_padding(std::size_t row, std::size_t col);

 private:
  std::size_t index(std::size_t row, std::size_t col) const {
    return (row - 1) * cols_ + (col - 1);
  }

  std::shared_ptr<const Alphabet> alphabet_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> padding_;
};

struct TokenDef {
  std::string name;
  std::string pattern;
};

/// Empty, String, Number, Date.
const std::vector<TokenDef>& predefined_tokens();

/// Compiles token definitions and computes the token set of cell text.
class Tokenizer {
 public:
  /// The alphabet is built in definition order. Throws SchemaError naming
  /// the token whose pattern does not compile.
  explicit Tokenizer(const std::vector<TokenDef>& defs);

  std::shared_ptr<const Alphabet> alphabet() const { return alphabet_; }

  /// Tokens fully matching the trimmed text.
  void tokenize_cell(std::string_view text, TokenSet& out);
  TokenizedTable tokenize(const RawTable& raw);

 private:
  std::shared_ptr<Alphabet> alphabet_;
  std::vector<TextRegex> regexes_;
  std::vector<TextRegex::Matcher> matchers_;
};

struct TableEvent {
  enum class Kind { Cell, NewRow };
  Kind kind = Kind::Cell;
  TokenSetView tokens;  // valid until the next event is requested
};

/// A forward-only producer of table events.
class EventSource {
 public:
  virtual ~EventSource() = default;
  /// Produces the next event; false at end of stream.
  bool next(TableEvent& ev) {
    if (!produce(ev)) return false;
    ++served_;
    return true;
  }
  std::uint64_t served() const { return served_; }

 protected:
  virtual bool produce(TableEvent& ev) = 0;

 private:
  std::uint64_t served_ = 0;
};

/// Lazily walks a tokenized table in table order.
class TableEventSource : public EventSource {
 public:
  explicit TableEventSource(const TokenizedTable& table) : table_(table) {}

 protected:
  bool produce(TableEvent& ev) override;

 private:
  const TokenizedTable& table_;
  std::size_t row_ = 1;
  std::size_t col_ = 0;  // last emitted column in row_
};

/// Materialized event stream (views point into `table`).
std::vector<TableEvent> event_stream(const TokenizedTable& table);

}  // namespace sculpt
