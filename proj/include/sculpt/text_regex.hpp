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

// Regular expressions over cell text, as used by token definitions.
//
// The dialect is the usual scripting-language one (classes, escapes,
// `* + ? {n,m}`, groups, alternation) plus double-quoted literal runs:
// `[0-9]{4}"."[0-9]{2}` matches "1935.04". A literal quote character is
// written `\"`. Matching is always a full match over Unicode scalar values.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sculpt/errors.hpp"

namespace sculpt {

class RegexError : public Error {
 public:
  RegexError(const std::string& msg, std::size_t position)
      : Error(msg + " at offset " + std::to_string(position)) {}
};

class TextRegex {
 public:
  /// Throws RegexError on malformed patterns.
  static TextRegex compile(std::string_view pattern);

  /// A pattern matching exactly `text` (quoted literal).
  static std::string literal_pattern(std::string_view text);

  const std::string& pattern() const { return pattern_; }
  std::size_t state_count() const { return nfa_->states.size(); }

  /// One-off full match. Prefer a Matcher for repeated use.
  bool full_match(std::string_view text) const;

  struct Nfa {
    struct State {
      std::vector<int> eps;
      int cls = -1;  // index into classes, or -1
      int next = -1;
    };
    // Each class is a sorted list of disjoint inclusive ranges.
    std::vector<std::vector<std::pair<char32_t, char32_t>>> classes;
    std::vector<State> states;
    int start = 0;
    int accept = 0;

    bool class_contains(int cls, char32_t c) const;
    void close(std::vector<int>& set) const;
  };

  /// Lazily determinized matcher; owns a transition cache, so one per thread.
  class Matcher {
   public:
    explicit Matcher(const TextRegex& re);
    bool full_match(std::string_view text);

   private:
    int start();
    int step(int dstate, char32_t c);
    int intern(std::vector<int> nfa_states);

    std::shared_ptr<const Nfa> nfa_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> sets_;
    std::vector<bool> accepting_;
    std::vector<std::array<int, 128>> ascii_;
    std::map<std::pair<int, char32_t>, int> wide_;
    int start_ = -1;
  };

 private:
  std::string pattern_;
  std::shared_ptr<const Nfa> nfa_;
};

}  // namespace sculpt
