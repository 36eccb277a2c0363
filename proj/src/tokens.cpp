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

#include "sculpt/tokens.hpp"

#include <algorithm>
#include <bit>

#include "sculpt/errors.hpp"

namespace sculpt {

TokenId Alphabet::add(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<TokenId>(names_.size());
  names_.push_back(name);
  ids_.emplace(name, id);
  return id;
}

std::optional<TokenId> Alphabet::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool TokenSetView::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::vector<TokenId> TokenSetView::ids() const {
  std::vector<TokenId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<TokenId>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string format_token_set(TokenSetView set, const Alphabet& alphabet) {
  if (set.padding()) return "Null";
  std::vector<std::string> names;
  for (TokenId id : set.ids()) names.push_back(alphabet.name(id));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + "}";
}

TokenizedTable::TokenizedTable(std::shared_ptr<const Alphabet> alphabet,
                               std::size_t rows, std::size_t cols)
    : alphabet_(std::move(alphabet)),
      rows_(rows),
      cols_(cols),
      stride_(alphabet_->words()),
      bits_(rows * cols * stride_, 0),
      padding_(rows * cols, 0) {}

void TokenizedTable::set_cell(std::size_t row, std::size_t col,
                              TokenSetView set) {
  std::size_t i = index(row, col);
  padding_[i] = set.padding() ? 1 : 0;
  auto words = set.words();
  for (std::size_t w = 0; w < stride_; ++w)
    bits_[i * stride_ + w] = (w < words.size() && !set.padding()) ? words[w] : 0;
}

void TokenizedTable::add_token(std::size_t row, std::size_t col, TokenId id) {
  std::size_t i = index(row, col);
  padding_[i] = 0;
  bits_[i * stride_ + id / 64] |= std::uint64_t{1} << (id % 64);
}

void TokenizedTable::set_padding(std::size_t row, std::size_t col) {
  std::size_t i = index(row, col);
  padding_[i] = 1;
  std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_), stride_, 0);
}

const std::vector<TokenDef>& predefined_tokens() {
  static const std::vector<TokenDef> defs = {
      {"Empty", ""},
      {"String", ".*"},
      {"Number", "[+-]?[0-9]+(\\.[0-9]+)?"},
      {"Date", "[0-9]{4}-[0-9]{2}-[0-9]{2}|[0-9]{2}/[0-9]{2}/[0-9]{4}"},
  };
  return defs;
}

Tokenizer::Tokenizer(const std::vector<TokenDef>& defs)
    : alphabet_(std::make_shared<Alphabet>()) {
  regexes_.reserve(defs.size());
  for (const auto& d : defs) {
    alphabet_->add(d.name);
    try {
      regexes_.push_back(TextRegex::compile(d.pattern));
    } catch (const RegexError& e) {
      throw SchemaError("token '" + d.name + "': invalid pattern: " + e.what());
    }
  }
  matchers_.reserve(regexes_.size());
  for (const auto& re : regexes_) matchers_.emplace_back(re);
}

void Tokenizer::tokenize_cell(std::string_view text, TokenSet& out) {
  out.clear();
  std::string_view t = trim_cell(text);
  for (std::size_t i = 0; i < matchers_.size(); ++i)
    if (matchers_[i].full_match(t)) out.insert(static_cast<TokenId>(i));
}

TokenizedTable Tokenizer::tokenize(const RawTable& raw) {
  TokenizedTable t(alphabet_, raw.rows(), raw.cols());
  TokenSet scratch(alphabet_->size());
  for (std::size_t k = 1; k <= raw.rows(); ++k) {
    for (std::size_t l = 1; l <= raw.cols(); ++l) {
      const auto& c = raw.cell(k, l);
      if (!c) {
        t.set_padding(k, l);
        continue;
      }
      tokenize_cell(*c, scratch);
      t.set_cell(k, l, scratch.view());
    }
  }
  return t;
}

bool TableEventSource::produce(TableEvent& ev) {
  if (row_ > table_.rows() || table_.cols() == 0) return false;
  if (col_ == table_.cols()) {
    if (row_ == table_.rows()) {
      row_ = table_.rows() + 1;
      return false;
    }
    ++row_;
    col_ = 0;
    ev.kind = TableEvent::Kind::NewRow;
    ev.tokens = {};
    return true;
  }
  ++col_;
  ev.kind = TableEvent::Kind::Cell;
  ev.tokens = table_.cell(row_, col_);
  return true;
}

std::vector<TableEvent> event_stream(const TokenizedTable& table) {
  std::vector<TableEvent> out;
  TableEventSource src(table);
  TableEvent ev;
  while (src.next(ev)) out.push_back(ev);
  return out;
}

}  // namespace sculpt
