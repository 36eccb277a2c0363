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

#include "sculpt/text_regex.hpp"

#include <algorithm>
#include <optional>

#include "sculpt/utf8.hpp"

namespace sculpt {

namespace {

using Ranges = std::vector<std::pair<char32_t, char32_t>>;
constexpr char32_t kMaxScalar = 0x10FFFF;
constexpr int kUnbounded = -1;

Ranges normalize(Ranges r) {
  std::sort(r.begin(), r.end());
  Ranges out;
  for (auto [lo, hi] : r) {
    if (!out.empty() && lo <= out.back().second + 1) {
      out.back().second = std::max(out.back().second, hi);
    } else {
      out.emplace_back(lo, hi);
    }
  }
  return out;
}

Ranges complement(const Ranges& r) {
  Ranges out;
  char32_t next = 0;
  for (auto [lo, hi] : normalize(r)) {
    if (lo > next) out.emplace_back(next, lo - 1);
    next = hi + 1;
  }
  if (next <= kMaxScalar) out.emplace_back(next, kMaxScalar);
  return out;
}

struct Node {
  enum Kind { Empty, Class, Concat, Alt, Repeat } kind = Empty;
  Ranges ranges;
  std::vector<Node> kids;
  int min = 0;
  int max = 0;
};

Node class_node(Ranges r) {
  Node n;
  n.kind = Node::Class;
  n.ranges = normalize(std::move(r));
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view pattern)
      : src_(utf8::to_u32(pattern)) {}

  Node parse() {
    Node n = alternation();
    if (pos_ < src_.size()) fail("unexpected ')'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw RegexError(msg, pos_);
  }
  bool at_end() const { return pos_ >= src_.size(); }
  char32_t peek() const { return src_[pos_]; }

  Node alternation() {
    std::vector<Node> alts;
    alts.push_back(concatenation());
    while (!at_end() && peek() == U'|') {
      ++pos_;
      alts.push_back(concatenation());
    }
    if (alts.size() == 1) return std::move(alts.front());
    Node n;
    n.kind = Node::Alt;
    n.kids = std::move(alts);
    return n;
  }

  Node concatenation() {
    Node n;
    n.kind = Node::Concat;
    while (!at_end() && peek() != U'|' && peek() != U')') {
      if (peek() == U'"') {
        // A quoted literal is a sequence; quantifiers apply to the whole run.
        n.kids.push_back(quantified(quoted()));
      } else {
        n.kids.push_back(quantified(atom()));
      }
    }
    if (n.kids.size() == 1) return std::move(n.kids.front());
    return n;
  }

  Node quoted() {
    ++pos_;  // opening quote
    Node seq;
    seq.kind = Node::Concat;
    while (true) {
      if (at_end()) fail("unterminated quoted literal");
      char32_t c = src_[pos_++];
      if (c == U'"') break;
      if (c == U'\\') {
        if (at_end()) fail("dangling escape");
        c = src_[pos_++];
      }
      seq.kids.push_back(class_node({{c, c}}));
    }
    return seq;
  }

  std::optional<int> number() {
    std::size_t start = pos_;
    long v = 0;
    while (!at_end() && peek() >= U'0' && peek() <= U'9') {
      v = v * 10 + (peek() - U'0');
      if (v > 1000) fail("repetition count too large");
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return static_cast<int>(v);
  }

  Node quantified(Node atom) {
    while (!at_end()) {
      int lo, hi;
      char32_t c = peek();
      if (c == U'*') {
        lo = 0, hi = kUnbounded;
        ++pos_;
      } else if (c == U'+') {
        lo = 1, hi = kUnbounded;
        ++pos_;
      } else if (c == U'?') {
        lo = 0, hi = 1;
        ++pos_;
      } else if (c == U'{') {
        std::size_t save = pos_;
        ++pos_;
        auto a = number();
        if (!a) {
          pos_ = save;
          return atom;  // literal '{' handled by the caller's next atom
        }
        lo = *a, hi = *a;
        if (!at_end() && peek() == U',') {
          ++pos_;
          auto b = number();
          hi = b ? *b : kUnbounded;
        }
        if (at_end() || peek() != U'}') {
          pos_ = save;
          return atom;
        }
        ++pos_;
        if (hi != kUnbounded && hi < lo) fail("bad repetition range");
      } else {
        break;
      }
      // Lazy and possessive suffixes do not change what a full match accepts.
      if (!at_end() && (peek() == U'?' || peek() == U'+') && c != U'?') ++pos_;
      Node r;
      r.kind = Node::Repeat;
      r.min = lo;
      r.max = hi;
      r.kids.push_back(std::move(atom));
      atom = std::move(r);
    }
    return atom;
  }

  Ranges shorthand(char32_t c, bool& ok) {
    ok = true;
    Ranges digit{{U'0', U'9'}};
    Ranges word{{U'0', U'9'}, {U'A', U'Z'}, {U'_', U'_'}, {U'a', U'z'}};
    Ranges space{{U'\t', U'\r'}, {U' ', U' '}};
    switch (c) {
      case U'd': return digit;
      case U'D': return complement(digit);
      case U'w': return word;
      case U'W': return complement(word);
      case U's': return space;
      case U'S': return complement(space);
      default: ok = false; return {};
    }
  }

  char32_t hex(int digits) {
    char32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end()) fail("truncated hex escape");
      char32_t c = src_[pos_++];
      int d;
      if (c >= U'0' && c <= U'9') d = c - U'0';
      else if (c >= U'a' && c <= U'f') d = c - U'a' + 10;
      else if (c >= U'A' && c <= U'F') d = c - U'A' + 10;
      else fail("bad hex digit");
      v = v * 16 + d;
    }
    return v;
  }

  // Escape after the backslash; sets `single` when it denotes one char.
  Ranges escape(bool& single, char32_t& ch) {
    if (at_end()) fail("dangling escape");
    char32_t c = src_[pos_++];
    bool ok;
    Ranges sh = shorthand(c, ok);
    if (ok) {
      single = false;
      return sh;
    }
    single = true;
    switch (c) {
      case U'n': ch = U'\n'; break;
      case U't': ch = U'\t'; break;
      case U'r': ch = U'\r'; break;
      case U'f': ch = U'\f'; break;
      case U'v': ch = U'\v'; break;
      case U'x': ch = hex(2); break;
      case U'u': ch = hex(4); break;
      default: ch = c; break;
    }
    return {{ch, ch}};
  }

  Node bracket() {
    ++pos_;  // '['
    bool negate = false;
    if (!at_end() && peek() == U'^') {
      negate = true;
      ++pos_;
    }
    Ranges r;
    bool first = true;
    while (true) {
      if (at_end()) fail("unterminated character class");
      char32_t c = peek();
      if (c == U']' && !first) {
        ++pos_;
        break;
      }
      first = false;
      char32_t lo;
      ++pos_;
      if (c == U'\\') {
        bool single;
        Ranges e = escape(single, lo);
        if (!single) {
          r.insert(r.end(), e.begin(), e.end());
          continue;
        }
      } else {
        lo = c;
      }
      if (pos_ + 1 < src_.size() && peek() == U'-' && src_[pos_ + 1] != U']') {
        ++pos_;
        char32_t hi = src_[pos_++];
        if (hi == U'\\') {
          bool single;
          escape(single, hi);
          if (!single) fail("class shorthand as range bound");
        }
        if (hi < lo) fail("reversed range in character class");
        r.emplace_back(lo, hi);
      } else {
        r.emplace_back(lo, lo);
      }
    }
    return class_node(negate ? complement(r) : r);
  }

  Node atom() {
    char32_t c = peek();
    switch (c) {
      case U'(': {
        ++pos_;
        if (pos_ + 1 < src_.size() && peek() == U'?' && src_[pos_ + 1] == U':')
          pos_ += 2;
        Node inner = alternation();
        if (at_end() || peek() != U')') fail("missing ')'");
        ++pos_;
        return inner;
      }
      case U'[':
        return bracket();
      case U'.':
        ++pos_;
        return class_node({{0, kMaxScalar}});
      case U'^':
      case U'$':
        // Anchors are implicit; accept them as no-ops.
        ++pos_;
        return Node{};
      case U'*':
      case U'+':
      case U'?':
        fail("quantifier without operand");
      case U'\\': {
        ++pos_;
        bool single;
        char32_t ch;
        return class_node(escape(single, ch));
      }
      default:
        ++pos_;
        return class_node({{c, c}});
    }
  }

  std::u32string src_;
  std::size_t pos_ = 0;
};

class Builder {
 public:
  using Nfa = TextRegex::Nfa;

  explicit Builder(Nfa& nfa) : nfa_(nfa) {}

  // Returns (start, accept) of a fragment.
  std::pair<int, int> build(const Node& n) {
    switch (n.kind) {
      case Node::Empty: {
        int s = fresh();
        return {s, s};
      }
      case Node::Class: {
        int s = fresh(), t = fresh();
        nfa_.classes.push_back(n.ranges);
        nfa_.states[s].cls = static_cast<int>(nfa_.classes.size()) - 1;
        nfa_.states[s].next = t;
        return {s, t};
      }
      case Node::Concat: {
        if (n.kids.empty()) return build(Node{});
        auto [s, t] = build(n.kids.front());
        for (std::size_t i = 1; i < n.kids.size(); ++i) {
          auto [s2, t2] = build(n.kids[i]);
          eps(t, s2);
          t = t2;
        }
        return {s, t};
      }
      case Node::Alt: {
        int s = fresh(), t = fresh();
        for (const Node& k : n.kids) {
          auto [s2, t2] = build(k);
          eps(s, s2);
          eps(t2, t);
        }
        return {s, t};
      }
      case Node::Repeat:
        return repeat(n.kids.front(), n.min, n.max);
    }
    return build(Node{});
  }

 private:
  std::pair<int, int> repeat(const Node& body, int lo, int hi) {
    int s = fresh();
    int t = s;
    for (int i = 0; i < lo; ++i) {
      auto [s2, t2] = build(body);
      eps(t, s2);
      t = t2;
    }
    if (hi == kUnbounded) {
      auto [s2, t2] = build(body);
      int end = fresh();
      eps(t, s2);
      eps(t, end);
      eps(t2, s2);
      eps(t2, end);
      return {s, end};
    }
    int end = fresh();
    eps(t, end);
    for (int i = lo; i < hi; ++i) {
      auto [s2, t2] = build(body);
      eps(t, s2);
      eps(t2, end);
      t = t2;
    }
    return {s, end};
  }

  int fresh() {
    nfa_.states.emplace_back();
    return static_cast<int>(nfa_.states.size()) - 1;
  }
  void eps(int from, int to) { nfa_.states[from].eps.push_back(to); }

  Nfa& nfa_;
};

}  // namespace

bool TextRegex::Nfa::class_contains(int cls, char32_t c) const {
  const auto& r = classes[cls];
  auto it = std::upper_bound(
      r.begin(), r.end(), c,
      [](char32_t v, const std::pair<char32_t, char32_t>& p) {
        return v < p.first;
      });
  if (it == r.begin()) return false;
  --it;
  return c <= it->second;
}

void TextRegex::Nfa::close(std::vector<int>& set) const {
  std::vector<bool> seen(states.size(), false);
  std::vector<int> stack = set;
  for (int s : set) seen[s] = true;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : states[s].eps) {
      if (!seen[t]) {
        seen[t] = true;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
}

TextRegex TextRegex::compile(std::string_view pattern) {
  Node root = Parser(pattern).parse();
  auto nfa = std::make_shared<Nfa>();
  Builder b(*nfa);
  auto [s, t] = b.build(root);
  nfa->start = s;
  nfa->accept = t;
  TextRegex re;
  re.pattern_ = std::string(pattern);
  re.nfa_ = std::move(nfa);
  return re;
}

std::string TextRegex::literal_pattern(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool TextRegex::full_match(std::string_view text) const {
  Matcher m(*this);
  return m.full_match(text);
}

TextRegex::Matcher::Matcher(const TextRegex& re) : nfa_(re.nfa_) {}

int TextRegex::Matcher::intern(std::vector<int> set) {
  auto it = ids_.find(set);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(sets_.size());
  accepting_.push_back(std::binary_search(set.begin(), set.end(), nfa_->accept));
  std::array<int, 128> row;
  row.fill(-2);
  ascii_.push_back(row);
  ids_.emplace(set, id);
  sets_.push_back(std::move(set));
  return id;
}

int TextRegex::Matcher::start() {
  if (start_ < 0) {
    std::vector<int> s{nfa_->start};
    nfa_->close(s);
    start_ = intern(std::move(s));
  }
  return start_;
}

int TextRegex::Matcher::step(int d, char32_t c) {
  if (c < 128) {
    int cached = ascii_[d][c];
    if (cached != -2) return cached;
  } else {
    auto it = wide_.find({d, c});
    if (it != wide_.end()) return it->second;
  }
  std::vector<int> next;
  for (int s : sets_[d]) {
    const auto& st = nfa_->states[s];
    if (st.cls >= 0 && nfa_->class_contains(st.cls, c)) next.push_back(st.next);
  }
  int id = -1;
  if (!next.empty()) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    nfa_->close(next);
    id = intern(std::move(next));
  }
  if (c < 128) {
    ascii_[d][c] = id;
  } else {
    wide_[{d, c}] = id;
  }
  return id;
}

bool TextRegex::Matcher::full_match(std::string_view text) {
  int d = start();
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t c;
    auto b = static_cast<unsigned char>(text[pos]);
    if (b < 0x80) {
      c = b;
      ++pos;
    } else if (auto dec = utf8::decode(text, pos)) {
      c = *dec;
    } else {
      c = b;
      ++pos;
    }
    d = step(d, c);
    if (d < 0) return false;
  }
  return accepting_[d];
}

}  // namespace sculpt
