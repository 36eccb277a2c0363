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

#include "sculpt/content.hpp"

#include <bit>

#include "lex.hpp"
#include "sculpt/errors.hpp"

namespace sculpt {

namespace content {
namespace {
ContentPtr make(ContentExpr e) {
  return std::make_shared<const ContentExpr>(std::move(e));
}
}  // namespace

ContentPtr symbol(std::string name) {
  return make({ContentKind::Symbol, std::move(name), nullptr, nullptr});
}
ContentPtr null() { return make({ContentKind::Null, {}, nullptr, nullptr}); }
ContentPtr any() { return make({ContentKind::Any, {}, nullptr, nullptr}); }
ContentPtr concat(ContentPtr a, ContentPtr b) {
  return make({ContentKind::Concat, {}, std::move(a), std::move(b)});
}
ContentPtr alt(ContentPtr a, ContentPtr b) {
  return make({ContentKind::Alt, {}, std::move(a), std::move(b)});
}
ContentPtr star(ContentPtr a) {
  return make({ContentKind::Star, {}, std::move(a), nullptr});
}
ContentPtr plus(ContentPtr a) {
  return make({ContentKind::Plus, {}, std::move(a), nullptr});
}
ContentPtr opt(ContentPtr a) {
  return make({ContentKind::Opt, {}, std::move(a), nullptr});
}
}  // namespace content

// Parsing -------------------------------------------------------------------

namespace {

using lex::Lexeme;

bool is_content_keyword(const Lexeme& l) {
  return l.is_word("Null") || l.is_word("True");
}

class ContentParser {
 public:
  explicit ContentParser(std::string_view text) : toks_(lex::tokenize(text)) {}

  ContentPtr whole() {
    ContentPtr e = alt();
    if (peek().kind != Lexeme::End) fail("unexpected input");
    return e;
  }

 private:
  const Lexeme& peek() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Lexeme& l = peek();
    std::string got = l.kind == Lexeme::End ? "end of expression"
                                            : "'" + std::string(l.text) + "'";
    throw ParseError(msg + ", found " + got, l.pos);
  }

  ContentPtr alt() {
    ContentPtr e = seq();
    while (peek().is('|')) {
      ++i_;
      e = content::alt(e, seq());
    }
    return e;
  }

  ContentPtr seq() {
    ContentPtr e = postfix();
    while (peek().is(',')) {
      ++i_;
      e = content::concat(e, postfix());
    }
    return e;
  }

  ContentPtr postfix() {
    ContentPtr e = atom();
    for (;;) {
      if (peek().is('*')) {
        e = content::star(e);
      } else if (peek().is('+')) {
        e = content::plus(e);
      } else if (peek().is('?')) {
        e = content::opt(e);
      } else {
        return e;
      }
      ++i_;
    }
  }

  ContentPtr atom() {
    const Lexeme& l = peek();
    if (l.is('(')) {
      ++i_;
      ContentPtr e = alt();
      if (!peek().is(')')) fail("expected ')'");
      ++i_;
      return e;
    }
    if (l.is_word("Null")) return ++i_, content::null();
    if (l.is_word("True")) return ++i_, content::any();
    if (l.kind == Lexeme::Word) {
      std::size_t from = i_;
      while (peek().kind == Lexeme::Word && !is_content_keyword(peek())) ++i_;
      return content::symbol(lex::join_words(toks_, from, i_));
    }
    fail("expected a token name");
  }

  std::vector<Lexeme> toks_;
  std::size_t i_ = 0;
};

// Precedence: alt < concat < postfix.
void print(const ContentExpr& e, int prec, std::string& out) {
  switch (e.kind) {
    case ContentKind::Symbol: out += e.name; break;
    case ContentKind::Null: out += "Null"; break;
    case ContentKind::Any: out += "True"; break;
    case ContentKind::Alt:
      if (prec > 1) out += '(';
      print(*e.lhs, 1, out);
      out += " | ";
      print(*e.rhs, 2, out);
      if (prec > 1) out += ')';
      break;
    case ContentKind::Concat:
      if (prec > 2) out += '(';
      print(*e.lhs, 2, out);
      out += ", ";
      print(*e.rhs, 3, out);
      if (prec > 2) out += ')';
      break;
    case ContentKind::Star:
    case ContentKind::Plus:
    case ContentKind::Opt:
      print(*e.lhs, 3, out);
      out += e.kind == ContentKind::Star ? '*' : e.kind == ContentKind::Plus ? '+' : '?';
      break;
  }
}

}  // namespace

ContentPtr parse_content(std::string_view text) {
  return ContentParser(text).whole();
}

std::string to_string(const ContentExpr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

bool equal(const ContentExpr& a, const ContentExpr& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (!a.lhs != !b.lhs || !a.rhs != !b.rhs) return false;
  return (!a.lhs || equal(*a.lhs, *b.lhs)) && (!a.rhs || equal(*a.rhs, *b.rhs));
}

std::size_t size(const ContentExpr& e) {
  return 1 + (e.lhs ? size(*e.lhs) : 0) + (e.rhs ? size(*e.rhs) : 0);
}

// Automaton -----------------------------------------------------------------

namespace {

struct Builder {
  const Alphabet& alphabet;
  std::vector<std::vector<std::pair<int, int>>> edges;  // (label, to)
  std::vector<std::vector<int>> eps;

  int state() {
    edges.emplace_back();
    eps.emplace_back();
    return static_cast<int>(edges.size()) - 1;
  }

  std::pair<int, int> build(const ContentExpr& e) {
    switch (e.kind) {
      case ContentKind::Symbol:
      case ContentKind::Null:
      case ContentKind::Any: {
        int label = -2;
        if (e.kind == ContentKind::Null) {
          label = -1;
        } else if (e.kind == ContentKind::Symbol) {
          auto id = alphabet.find(e.name);
          if (!id) throw SchemaError("unknown token '" + e.name + "' in content expression");
          label = static_cast<int>(*id);
        }
        int s = state();
        int f = state();
        edges[s].push_back({label, f});
        return {s, f};
      }
      case ContentKind::Concat: {
        auto [s1, f1] = build(*e.lhs);
        auto [s2, f2] = build(*e.rhs);
        eps[f1].push_back(s2);
        return {s1, f2};
      }
      case ContentKind::Alt: {
        auto [s1, f1] = build(*e.lhs);
        auto [s2, f2] = build(*e.rhs);
        int s = state();
        int f = state();
        eps[s].push_back(s1);
        eps[s].push_back(s2);
        eps[f1].push_back(f);
        eps[f2].push_back(f);
        return {s, f};
      }
      case ContentKind::Star:
      case ContentKind::Plus:
      case ContentKind::Opt: {
        auto [s1, f1] = build(*e.lhs);
        int s = state();
        int f = state();
        eps[s].push_back(s1);
        eps[f1].push_back(f);
        if (e.kind != ContentKind::Plus) eps[s].push_back(f);
        if (e.kind != ContentKind::Opt) eps[f1].push_back(s1);
        return {s, f};
      }
    }
    return {0, 0};
  }
};

}  // namespace

ContentNfa ContentNfa::compile(const ContentExpr& e, const Alphabet& alphabet) {
  Builder b{alphabet, {}, {}};
  auto [s, f] = b.build(e);
  ContentNfa nfa;
  nfa.start_ = s;
  nfa.accept_ = f;
  const std::size_t n = b.edges.size();
  const std::size_t words = (n + 63) / 64;
  nfa.closure_.assign(n, StateSet(words, 0));
  for (std::size_t q = 0; q < n; ++q) {
    StateSet& c = nfa.closure_[q];
    std::vector<int> todo{static_cast<int>(q)};
    c[q / 64] |= std::uint64_t{1} << (q % 64);
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      for (int y : b.eps[x]) {
        auto& w = c[y / 64];
        auto bit = std::uint64_t{1} << (y % 64);
        if (!(w & bit)) {
          w |= bit;
          todo.push_back(y);
        }
      }
    }
  }
  nfa.edges_.resize(n);
  for (std::size_t q = 0; q < n; ++q)
    for (auto [label, to] : b.edges[q]) nfa.edges_[q].push_back({label, to});
  return nfa;
}

void ContentNfa::step(const StateSet& cur, TokenSetView cell, StateSet& next) const {
  next.assign(words(), 0);
  for (std::size_t w = 0; w < cur.size(); ++w) {
    std::uint64_t bits = cur[w];
    while (bits) {
      std::size_t q = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      for (const Edge& e : edges_[q]) {
        bool ok = e.label == kAny ||
                  (e.label == kBottom ? cell.padding()
                                      : !cell.padding() &&
                                            cell.contains(static_cast<TokenId>(e.label)));
        if (!ok) continue;
        const StateSet& c = closure_[e.to];
        for (std::size_t i = 0; i < next.size(); ++i) next[i] |= c[i];
      }
    }
  }
}

bool ContentNfa::match_sequence(const std::vector<TokenSetView>& cells) const {
  StateSet cur = initial();
  StateSet next;
  for (const auto& c : cells) {
    step(cur, c, next);
    cur.swap(next);
  }
  return accepts(cur);
}

std::vector<TokenSetView> matched_sequence(const TokenizedTable& t,
                                           const Region& z, std::size_t row,
                                           PadMode pad) {
  std::vector<TokenSetView> seq;
  std::size_t from = row == 0 ? 1 : row;
  std::size_t to = row == 0 ? t.rows() : row;
  for (std::size_t k = from; k <= to; ++k)
    for (std::size_t l = 1; l <= t.cols(); ++l)
      if (z.contains(k, l)) seq.push_back(t.cell(k, l));
  if (pad == PadMode::Trim)
    while (!seq.empty() && seq.back().padding()) seq.pop_back();
  return seq;
}

bool satisfies(const TokenizedTable& t, const Region& z, const ContentNfa& a,
               Semantics sem, PadMode pad) {
  if (sem == Semantics::RegionBased)
    return a.match_sequence(matched_sequence(t, z, 0, pad));
  for (std::size_t k = 1; k <= t.rows(); ++k) {
    if (z.columns_in_row(k).empty()) continue;
    if (!a.match_sequence(matched_sequence(t, z, k, pad))) return false;
  }
  return true;
}

}  // namespace sculpt
