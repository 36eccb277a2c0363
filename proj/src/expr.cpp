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

#include "sculpt/expr.hpp"

#include <array>
#include <string_view>
#include <vector>

#include "lex.hpp"
#include "sculpt/errors.hpp"

namespace sculpt {

namespace ast {
namespace {

CoordPtr make(CoordExpr e) { return std::make_shared<const CoordExpr>(std::move(e)); }
NavPtr make(NavExpr e) { return std::make_shared<const NavExpr>(std::move(e)); }

}  // namespace

CoordPtr token(std::string name) {
  return make(CoordExpr{.kind = CoordKind::Token, .name = std::move(name)});
}
CoordPtr root() {
  static const CoordPtr r = make(CoordExpr{.kind = CoordKind::Root});
  return r;
}
CoordPtr truth() {
  static const CoordPtr t = make(CoordExpr{.kind = CoordKind::True});
  return t;
}
CoordPtr lor(CoordPtr a, CoordPtr b) {
  return make(CoordExpr{.kind = CoordKind::Or, .lhs = std::move(a), .rhs = std::move(b)});
}
CoordPtr land(CoordPtr a, CoordPtr b) {
  return make(CoordExpr{.kind = CoordKind::And, .lhs = std::move(a), .rhs = std::move(b)});
}
CoordPtr lnot(CoordPtr a) {
  return make(CoordExpr{.kind = CoordKind::Not, .lhs = std::move(a)});
}
CoordPtr exists(NavPtr a) {
  return make(CoordExpr{.kind = CoordKind::Exists, .nav = std::move(a)});
}
CoordPtr apply(NavPtr a, CoordPtr phi) {
  return make(CoordExpr{.kind = CoordKind::Apply, .lhs = std::move(phi), .nav = std::move(a)});
}
CoordPtr cell(std::size_t row, std::size_t col) {
  return make(CoordExpr{.kind = CoordKind::Cell, .row = row, .col = col});
}
CoordPtr row_index(std::size_t row) {
  return make(CoordExpr{.kind = CoordKind::RowIndex, .row = row});
}
CoordPtr col_index(std::size_t col) {
  return make(CoordExpr{.kind = CoordKind::ColIndex, .col = col});
}
CoordPtr row_of(CoordPtr phi) {
  return make(CoordExpr{.kind = CoordKind::Row, .lhs = std::move(phi)});
}
CoordPtr col_of(CoordPtr phi) {
  return make(CoordExpr{.kind = CoordKind::Col, .lhs = std::move(phi)});
}

NavPtr eps() {
  static const NavPtr n = make(NavExpr{.kind = NavKind::Epsilon});
  return n;
}
NavPtr up() {
  static const NavPtr n = make(NavExpr{.kind = NavKind::Up});
  return n;
}
NavPtr down() {
  static const NavPtr n = make(NavExpr{.kind = NavKind::Down});
  return n;
}
NavPtr left() {
  static const NavPtr n = make(NavExpr{.kind = NavKind::Left});
  return n;
}
NavPtr right() {
  static const NavPtr n = make(NavExpr{.kind = NavKind::Right});
  return n;
}
NavPtr filter(CoordPtr phi) {
  return make(NavExpr{.kind = NavKind::Filter, .filter = std::move(phi)});
}
NavPtr concat(NavPtr a, NavPtr b) {
  return make(NavExpr{.kind = NavKind::Concat, .lhs = std::move(a), .rhs = std::move(b)});
}
NavPtr alt(NavPtr a, NavPtr b) {
  return make(NavExpr{.kind = NavKind::Union, .lhs = std::move(a), .rhs = std::move(b)});
}
NavPtr star(NavPtr a) {
  return make(NavExpr{.kind = NavKind::Star, .lhs = std::move(a)});
}
NavPtr plus(NavPtr a) {
  return make(NavExpr{.kind = NavKind::Plus, .lhs = std::move(a)});
}
NavPtr opt(NavPtr a) {
  return make(NavExpr{.kind = NavKind::Opt, .lhs = std::move(a)});
}

}  // namespace ast

// Printing ------------------------------------------------------------------

namespace {

// Coordinate precedence: or < and < not < primary.
// Navigational precedence: union < concat < postfix.
void print(const CoordExpr& e, int prec, std::string& out);
void print(const NavExpr& e, int prec, std::string& out);

void print(const CoordExpr& e, int prec, std::string& out) {
  auto wrap = [&](int mine, auto body) {
    if (mine < prec) out += '(';
    body();
    if (mine < prec) out += ')';
  };
  switch (e.kind) {
    case CoordKind::Token: out += e.name; break;
    case CoordKind::Root: out += "root"; break;
    case CoordKind::True: out += "true"; break;
    case CoordKind::Or:
      wrap(1, [&] {
        print(*e.lhs, 1, out);
        out += " or ";
        print(*e.rhs, 2, out);
      });
      break;
    case CoordKind::And:
      wrap(2, [&] {
        print(*e.lhs, 2, out);
        out += " and ";
        print(*e.rhs, 3, out);
      });
      break;
    case CoordKind::Not:
      wrap(3, [&] {
        out += "not ";
        print(*e.lhs, 3, out);
      });
      break;
    case CoordKind::Exists:
      out += '<';
      print(*e.nav, 1, out);
      out += '>';
      break;
    case CoordKind::Apply:
      print(*e.nav, 1, out);
      out += '(';
      print(*e.lhs, 1, out);
      out += ')';
      break;
    case CoordKind::Cell:
      out += '(' + std::to_string(e.row) + ',' + std::to_string(e.col) + ')';
      break;
    case CoordKind::RowIndex: out += "row(" + std::to_string(e.row) + ')'; break;
    case CoordKind::ColIndex: out += "col(" + std::to_string(e.col) + ')'; break;
    case CoordKind::Row:
    case CoordKind::Col:
      out += e.kind == CoordKind::Row ? "row(" : "col(";
      print(*e.lhs, 1, out);
      out += ')';
      break;
  }
}

void print(const NavExpr& e, int prec, std::string& out) {
  auto wrap = [&](int mine, auto body) {
    if (mine < prec) out += '(';
    body();
    if (mine < prec) out += ')';
  };
  switch (e.kind) {
    case NavKind::Epsilon: out += "eps"; break;
    case NavKind::Up: out += "up"; break;
    case NavKind::Down: out += "down"; break;
    case NavKind::Left: out += "left"; break;
    case NavKind::Right: out += "right"; break;
    case NavKind::Filter:
      out += '[';
      print(*e.filter, 1, out);
      out += ']';
      break;
    case NavKind::Concat:
      wrap(2, [&] {
        print(*e.lhs, 2, out);
        out += '.';
        print(*e.rhs, 3, out);
      });
      break;
    case NavKind::Union:
      wrap(1, [&] {
        print(*e.lhs, 1, out);
        out += '|';
        print(*e.rhs, 2, out);
      });
      break;
    case NavKind::Star:
    case NavKind::Plus:
    case NavKind::Opt:
      print(*e.lhs, 3, out);
      out += e.kind == NavKind::Star ? '*' : e.kind == NavKind::Plus ? '+' : '?';
      break;
  }
}

}  // namespace

std::string to_string(const CoordExpr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

std::string to_string(const NavExpr& e) {
  std::string out;
  print(e, 1, out);
  return out;
}

// Structure -----------------------------------------------------------------

namespace {

template <class T>
bool both_equal(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (!a || !b) return !a && !b;
  return a == b || equal(*a, *b);
}

}  // namespace

bool equal(const CoordExpr& a, const CoordExpr& b) {
  return a.kind == b.kind && a.name == b.name && a.row == b.row &&
         a.col == b.col && both_equal(a.lhs, b.lhs) && both_equal(a.rhs, b.rhs) &&
         both_equal(a.nav, b.nav);
}

bool equal(const NavExpr& a, const NavExpr& b) {
  return a.kind == b.kind && both_equal(a.lhs, b.lhs) &&
         both_equal(a.rhs, b.rhs) && both_equal(a.filter, b.filter);
}

std::size_t size(const CoordExpr& e) {
  std::size_t s = 1;
  if (e.lhs) s += size(*e.lhs);
  if (e.rhs) s += size(*e.rhs);
  if (e.nav) s += size(*e.nav);
  return s;
}

std::size_t size(const NavExpr& e) {
  std::size_t s = 1;
  if (e.lhs) s += size(*e.lhs);
  if (e.rhs) s += size(*e.rhs);
  if (e.filter) s += size(*e.filter);
  return s;
}

bool is_core(const CoordExpr& e) {
  switch (e.kind) {
    case CoordKind::Cell:
    case CoordKind::RowIndex:
    case CoordKind::ColIndex:
    case CoordKind::Row:
    case CoordKind::Col:
      return false;
    default:
      break;
  }
  return (!e.lhs || is_core(*e.lhs)) && (!e.rhs || is_core(*e.rhs)) &&
         (!e.nav || is_core(*e.nav));
}

bool is_core(const NavExpr& e) {
  if (e.kind == NavKind::Plus || e.kind == NavKind::Opt) return false;
  return (!e.lhs || is_core(*e.lhs)) && (!e.rhs || is_core(*e.rhs)) &&
         (!e.filter || is_core(*e.filter));
}

// Parsing -------------------------------------------------------------------

namespace {

using lex::Lexeme;

constexpr std::array<std::string_view, 12> kKeywords = {
    "root", "true", "or", "and", "not", "eps",
    "up",   "down", "left", "right", "row", "col"};

bool is_keyword(const Lexeme& l) {
  if (l.kind != Lexeme::Word) return false;
  for (auto k : kKeywords)
    if (l.text == k) return true;
  return false;
}

bool is_axis(const Lexeme& l) {
  return l.is_word("eps") || l.is_word("up") || l.is_word("down") ||
         l.is_word("left") || l.is_word("right");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex::tokenize(text)) {}

  CoordPtr whole_coord() {
    CoordPtr e = coord();
    expect_end();
    return e;
  }

  NavPtr whole_nav() {
    NavPtr e = nav();
    expect_end();
    return e;
  }

 private:
  const Lexeme& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Lexeme& l = peek();
    std::string got = l.kind == Lexeme::End ? "end of expression"
                                            : "'" + std::string(l.text) + "'";
    throw ParseError(msg + ", found " + got, l.pos);
  }

  void expect(char c) {
    if (!peek().is(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  void expect_end() {
    if (peek().kind != Lexeme::End) fail("unexpected input");
  }

  std::size_t parse_index() {
    const Lexeme& l = peek();
    std::size_t v = 0;
    for (char c : l.text) {
      v = v * 10 + static_cast<std::size_t>(c - '0');
      if (v > 1000000000) fail("index too large");
    }
    if (v == 0) fail("coordinates are 1-based");
    ++i_;
    return v;
  }

  CoordPtr coord() {
    CoordPtr e = conj();
    while (peek().is('|') || peek().is_word("or")) {
      ++i_;
      e = ast::lor(e, conj());
    }
    return e;
  }

  CoordPtr conj() {
    CoordPtr e = unary();
    while (peek().is('&') || peek().is_word("and")) {
      ++i_;
      e = ast::land(e, unary());
    }
    return e;
  }

  CoordPtr unary() {
    if (peek().is('!') || peek().is_word("not")) {
      ++i_;
      return ast::lnot(unary());
    }
    return primary();
  }

  // Applies a parsed navigational expression to a following argument, or
  // to root when no argument follows.
  CoordPtr applied(NavPtr a) {
    if (!peek().is('(')) return ast::apply(std::move(a), ast::root());
    ++i_;
    CoordPtr phi = coord();
    expect(')');
    return ast::apply(std::move(a), std::move(phi));
  }

  CoordPtr primary() {
    const Lexeme& l = peek();
    if (l.is('(')) {
      if (peek(1).is_int() && peek(2).is(',') && peek(3).is_int() &&
          peek(4).is(')')) {
        ++i_;
        std::size_t r = parse_index();
        ++i_;
        std::size_t c = parse_index();
        ++i_;
        return ast::cell(r, c);
      }
      std::size_t save = i_;
      try {
        NavPtr a = nav();
        return applied(std::move(a));
      } catch (const ParseError&) {
        i_ = save;
      }
      ++i_;
      CoordPtr e = coord();
      expect(')');
      return e;
    }
    if ((l.is_word("row") || l.is_word("col")) && peek(1).is('(')) {
      bool is_row = l.is_word("row");
      i_ += 2;
      if (peek().is_int() && peek(1).is(')')) {
        std::size_t v = parse_index();
        ++i_;
        return is_row ? ast::row_index(v) : ast::col_index(v);
      }
      CoordPtr phi = coord();
      expect(')');
      return is_row ? ast::row_of(phi) : ast::col_of(phi);
    }
    if (is_axis(l) || l.is('[')) return applied(nav());
    if (l.is('<')) {
      ++i_;
      NavPtr a = nav();
      expect('>');
      return ast::exists(std::move(a));
    }
    if (l.is_word("root")) {
      ++i_;
      return ast::root();
    }
    if (l.is_word("true")) {
      ++i_;
      return ast::truth();
    }
    if (l.kind == Lexeme::Word && !is_keyword(l)) {
      std::size_t from = i_;
      while (peek().kind == Lexeme::Word && !is_keyword(peek())) ++i_;
      return ast::token(lex::join_words(toks_, from, i_));
    }
    fail("expected a coordinate expression");
  }

  NavPtr nav() {
    NavPtr e = nav_concat();
    while (peek().is('|')) {
      ++i_;
      e = ast::alt(e, nav_concat());
    }
    return e;
  }

  NavPtr nav_concat() {
    NavPtr e = nav_postfix();
    for (;;) {
      if (peek().is('.')) {
        ++i_;
      } else if (!peek().is('[')) {
        break;
      }
      e = ast::concat(e, nav_postfix());
    }
    return e;
  }

  NavPtr nav_postfix() {
    NavPtr e = nav_atom();
    for (;;) {
      if (peek().is('*')) {
        e = ast::star(e);
      } else if (peek().is('+')) {
        e = ast::plus(e);
      } else if (peek().is('?')) {
        e = ast::opt(e);
      } else {
        break;
      }
      ++i_;
    }
    return e;
  }

  NavPtr nav_atom() {
    const Lexeme& l = peek();
    if (l.is_word("eps")) return ++i_, ast::eps();
    if (l.is_word("up")) return ++i_, ast::up();
    if (l.is_word("down")) return ++i_, ast::down();
    if (l.is_word("left")) return ++i_, ast::left();
    if (l.is_word("right")) return ++i_, ast::right();
    if (l.is('[')) {
      ++i_;
      CoordPtr phi = coord();
      expect(']');
      return ast::filter(std::move(phi));
    }
    if (l.is('(')) {
      ++i_;
      NavPtr e = nav();
      expect(')');
      return e;
    }
    fail("expected a navigational expression");
  }

  std::vector<Lexeme> toks_;
  std::size_t i_ = 0;
};

}  // namespace

CoordPtr parse_coord_expr(std::string_view text) {
  return Parser(text).whole_coord();
}

NavPtr parse_nav_expr(std::string_view text) {
  return Parser(text).whole_nav();
}

}  // namespace sculpt
