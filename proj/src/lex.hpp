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

// Shared lexer for selector and content expressions. Internal header.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sculpt::lex {

struct Lexeme {
  enum Kind { Word, Punct, End } kind;
  std::string_view text;
  std::size_t pos;
  bool space_before = false;

  bool is(char c) const { return kind == Punct && text[0] == c; }
  bool is_word(std::string_view w) const { return kind == Word && text == w; }
  bool is_int() const;
};

inline bool is_punct(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case '<': case '>': case ',':
    case '.': case '|': case '&': case '!': case '*': case '+': case '?':
      return true;
    default:
      return false;
  }
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

/// Splits text into words and single-character punctuation. Throws
/// ParseError on characters that can start neither.
std::vector<Lexeme> tokenize(std::string_view text);

/// Joins the text of words[from, to) with single spaces.
std::string join_words(const std::vector<Lexeme>& toks, std::size_t from,
                       std::size_t to);

}  // namespace sculpt::lex
