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

#include "lex.hpp"

#include <algorithm>

#include "sculpt/errors.hpp"

namespace sculpt::lex {

bool Lexeme::is_int() const {
  return kind == Word && !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<Lexeme> tokenize(std::string_view text) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  bool space = false;
  while (i < text.size()) {
    char c = text[i];
    if (is_space(c)) {
      space = true;
      ++i;
      continue;
    }
    if (is_punct(c)) {
      out.push_back({Lexeme::Punct, text.substr(i, 1), i, space});
      ++i;
    } else if (c == '=' || c == '%' || c == '"' || c == '\\') {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j]) && !is_punct(text[j]) &&
             text[j] != '=' && text[j] != '"' && text[j] != '\\')
        ++j;
      out.push_back({Lexeme::Word, text.substr(i, j - i), i, space});
      i = j;
    }
    space = false;
  }
  out.push_back({Lexeme::End, text.substr(text.size()), text.size(), space});
  return out;
}

std::string join_words(const std::vector<Lexeme>& toks, std::size_t from,
                       std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ' ';
    out += toks[i].text;
  }
  return out;
}

}  // namespace sculpt::lex
