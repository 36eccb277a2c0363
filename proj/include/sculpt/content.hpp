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

// Content expressions: regular expressions over token names, matched
// against the token sets of a selected region.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sculpt/region.hpp"
#include "sculpt/tokens.hpp"

namespace sculpt {

struct ContentExpr;
using ContentPtr = std::shared_ptr<const ContentExpr>;

enum class ContentKind {
  Symbol,  // a token name
  Null,    // the padding marker
  Any,     // `True`: any cell, padding included
  Concat, Alt, Star, Plus, Opt,
};

struct ContentExpr {
  ContentKind kind;
  std::string name;  // Symbol
  ContentPtr lhs;
  ContentPtr rhs;
};

namespace content {
ContentPtr symbol(std::string name);
ContentPtr null();
ContentPtr any();
ContentPtr concat(ContentPtr a, ContentPtr b);
ContentPtr alt(ContentPtr a, ContentPtr b);
ContentPtr star(ContentPtr a);
ContentPtr plus(ContentPtr a);
ContentPtr opt(ContentPtr a);
}  // namespace content

/// Throws ParseError with a byte offset.
ContentPtr parse_content(std::string_view text);
std::string to_string(const ContentExpr& e);
bool equal(const ContentExpr& a, const ContentExpr& b);
std::size_t size(const ContentExpr& e);

enum class PadMode { Trim, Literal };
enum class Semantics { RowBased, RegionBased };

/// Thompson automaton over token ids plus the padding marker. Epsilon
/// closures are precomputed, so state sets handed out by the automaton are
/// always closed.
class ContentNfa {
 public:
  using StateSet = std::vector<std::uint64_t>;

  /// Resolves symbols against `alphabet`; throws SchemaError on names it
  /// does not contain.
  static ContentNfa compile(const ContentExpr& e, const Alphabet& alphabet);

  std::size_t state_count() const { return closure_.size(); }
  std::size_t words() const { return (state_count() + 63) / 64; }

  StateSet initial() const { return closure_[start_]; }
  /// next := states reachable from `cur` by reading one symbol of `cell`.
  void step(const StateSet& cur, TokenSetView cell, StateSet& next) const;
  bool accepts(const StateSet& s) const {
    return (s[accept_ / 64] >> (accept_ % 64)) & 1U;
  }
  bool accepts_empty() const { return accepts(initial()); }

  /// Some choice of one symbol per cell spells a word of the language.
  bool match_sequence(const std::vector<TokenSetView>& cells) const;

 private:
  static constexpr int kBottom = -1;
  static constexpr int kAny = -2;
  struct Edge {
    int label;  // token id, kBottom or kAny
    int to;
  };

  std::vector<std::vector<Edge>> edges_;
  std::vector<StateSet> closure_;
  int start_ = 0;
  int accept_ = 0;
};

/// Row-based: each nonempty row slice of `z` must match. Region-based: the
/// whole region in table order must match. Under PadMode::Trim trailing
/// padding cells of each matched sequence are dropped first.
bool satisfies(const TokenizedTable& t, const Region& z, const ContentNfa& a,
               Semantics sem, PadMode pad);

/// The sequence that is matched for row `row` of `z` (or the whole region
/// when `row` is 0) after applying the pad mode.
std::vector<TokenSetView> matched_sequence(const TokenizedTable& t,
                                           const Region& z, std::size_t row,
                                           PadMode pad);

}  // namespace sculpt
