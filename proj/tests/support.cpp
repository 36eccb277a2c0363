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

#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sculpt::testing {

std::string data_path(const std::string& name) {
  return std::string(SCULPT_TEST_DATA) + "/" + name;
}

std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Fixture load_fixture(const std::string& schema, const std::string& table) {
  Fixture f;
  f.doc = parse_schema(read_data(schema));
  f.raw = parse_document(read_data(table), delimiters(f.doc));
  return f;
}

TokenizedTable tokenize(const SchemaDoc& doc, const RawTable& raw) {
  return Tokenizer(token_definitions(doc)).tokenize(raw);
}

std::vector<Coordinate> cells_of(const Region& r) { return r.cells(); }

std::vector<TokenDef> ab_tokens() {
  return {{"a", "a|ab"}, {"b", "b|ab"}};
}

RawTable make_raw(const std::vector<std::vector<std::string>>& rows) {
  return RawTable::from_rows(rows);
}

// Reference evaluator --------------------------------------------------------

NaiveOracle::NaiveOracle(const TokenizedTable& t)
    : t_(t), n_(t.rows() * t.cols()) {
  if (n_ > 64) throw std::invalid_argument("oracle tables hold at most 64 cells");
  all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
}

NaiveOracle::Relation NaiveOracle::shift(int dr, int dc) const {
  Relation r(n_, 0);
  long rows = static_cast<long>(t_.rows());
  long cols = static_cast<long>(t_.cols());
  for (long k = 0; k < rows; ++k) {
    for (long l = 0; l < cols; ++l) {
      long k2 = k + dr;
      long l2 = l + dc;
      if (k2 < 0 || l2 < 0 || k2 >= rows || l2 >= cols) continue;
      r[k * cols + l] |= std::uint64_t{1} << (k2 * cols + l2);
    }
  }
  return r;
}

const NaiveOracle::Relation& NaiveOracle::nav(const NavExpr& e) {
  auto it = navs_.find(&e);
  if (it != navs_.end()) return it->second;
  Relation r(n_, 0);
  switch (e.kind) {
    case NavKind::Epsilon:
      for (std::size_t c = 0; c < n_; ++c) r[c] = std::uint64_t{1} << c;
      break;
    case NavKind::Up: r = shift(-1, 0); break;
    case NavKind::Down: r = shift(1, 0); break;
    case NavKind::Left: r = shift(0, -1); break;
    case NavKind::Right: r = shift(0, 1); break;
    case NavKind::Filter: {
      std::uint64_t z = coord(*e.filter);
      for (std::size_t c = 0; c < n_; ++c)
        if ((z >> c) & 1U) r[c] = std::uint64_t{1} << c;
      break;
    }
    case NavKind::Concat: {
      Relation a = nav(*e.lhs);
      const Relation& b = nav(*e.rhs);
      for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t d = 0; d < n_; ++d)
          if ((a[c] >> d) & 1U) r[c] |= b[d];
      break;
    }
    case NavKind::Union: {
      Relation a = nav(*e.lhs);
      const Relation& b = nav(*e.rhs);
      for (std::size_t c = 0; c < n_; ++c) r[c] = a[c] | b[c];
      break;
    }
    case NavKind::Star: {
      Relation a = nav(*e.lhs);
      for (std::size_t c = 0; c < n_; ++c) r[c] = std::uint64_t{1} << c;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t c = 0; c < n_; ++c) {
          std::uint64_t next = r[c];
          for (std::size_t d = 0; d < n_; ++d)
            if ((r[c] >> d) & 1U) next |= a[d];
          if (next != r[c]) {
            r[c] = next;
            changed = true;
          }
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("oracle expects core expressions");
  }
  return navs_.emplace(&e, std::move(r)).first->second;
}

std::uint64_t NaiveOracle::coord(const CoordExpr& e) {
  auto it = coords_.find(&e);
  if (it != coords_.end()) return it->second;
  std::uint64_t z = 0;
  switch (e.kind) {
    case CoordKind::Token: {
      auto id = t_.alphabet().find(e.name);
      for (std::size_t k = 1; id && k <= t_.rows(); ++k)
        for (std::size_t l = 1; l <= t_.cols(); ++l)
          if (!t_.is_padding(k, l) && t_.cell(k, l).contains(*id))
            z |= std::uint64_t{1} << ((k - 1) * t_.cols() + (l - 1));
      break;
    }
    case CoordKind::Root: z = n_ ? 1 : 0; break;
    case CoordKind::True: z = all_; break;
    case CoordKind::Not: z = ~coord(*e.lhs) & all_; break;
    case CoordKind::And: z = coord(*e.lhs) & coord(*e.rhs); break;
    case CoordKind::Or: z = coord(*e.lhs) | coord(*e.rhs); break;
    case CoordKind::Exists: {
      const Relation& r = nav(*e.nav);
      for (std::size_t c = 0; c < n_; ++c)
        if (r[c]) z |= std::uint64_t{1} << c;
      break;
    }
    case CoordKind::Apply: {
      std::uint64_t from = coord(*e.lhs);
      const Relation& r = nav(*e.nav);
      for (std::size_t c = 0; c < n_; ++c)
        if ((from >> c) & 1U) z |= r[c];
      break;
    }
    default:
      throw std::invalid_argument("oracle expects core expressions");
  }
  coords_.emplace(&e, z);
  return z;
}

std::vector<Coordinate> NaiveOracle::cells(const CoordExpr& e) {
  std::uint64_t z = coord(e);
  std::vector<Coordinate> out;
  for (std::size_t c = 0; c < n_; ++c)
    if ((z >> c) & 1U) out.push_back({c / t_.cols() + 1, c % t_.cols() + 1});
  return out;
}

// Generators -----------------------------------------------------------------

CoordPtr Gen::coord(std::size_t budget, bool forward) {
  if (budget <= 1 || coin(0.3)) {
    switch (below(6)) {
      case 0:
      case 1: return ast::token("a");
      case 2:
      case 3: return ast::token("b");
      case 4: return ast::root();
      default: return ast::truth();
    }
  }
  std::size_t rest = budget - 1;
  switch (below(forward ? 5 : 6)) {
    case 0: return ast::lnot(coord(rest, forward));
    case 1:
    case 2: {
      if (rest < 2) return ast::lnot(coord(rest, forward));
      std::size_t left = 1 + below(rest - 1);
      auto a = coord(left, forward);
      auto b = coord(rest - left, forward);
      return below(2) ? ast::land(a, b) : ast::lor(a, b);
    }
    case 3:
    case 4: {
      if (rest < 2) return ast::apply(nav(1, forward), coord(1, forward));
      std::size_t left = 1 + below(rest - 1);
      return ast::apply(nav(left, forward), coord(rest - left, forward));
    }
    default: return ast::exists(nav(rest, forward));
  }
}

NavPtr Gen::nav(std::size_t budget, bool forward) {
  if (budget <= 1 || coin(0.3)) {
    std::size_t k = below(forward ? 3 : 5);
    switch (k) {
      case 0: return ast::eps();
      case 1: return ast::down();
      case 2: return ast::right();
      case 3: return ast::up();
      default: return ast::left();
    }
  }
  std::size_t rest = budget - 1;
  switch (below(4)) {
    case 0: return ast::filter(coord(rest, forward));
    case 1:
    case 2: {
      if (rest < 2) return ast::star(nav(rest, forward));
      std::size_t left = 1 + below(rest - 1);
      auto a = nav(left, forward);
      auto b = nav(rest - left, forward);
      return below(2) ? ast::concat(a, b) : ast::alt(a, b);
    }
    default: return ast::star(nav(rest, forward));
  }
}

ContentPtr Gen::content(std::size_t budget) {
  if (budget <= 1 || coin(0.3)) {
    switch (below(6)) {
      case 0:
      case 1: return content::symbol("a");
      case 2:
      case 3: return content::symbol("b");
      case 4: return content::null();
      default: return content::any();
    }
  }
  std::size_t rest = budget - 1;
  switch (below(5)) {
    case 0:
    case 1: {
      if (rest < 2) return content::star(content(rest));
      std::size_t left = 1 + below(rest - 1);
      auto a = content(left);
      auto b = content(rest - left);
      return below(2) ? content::concat(a, b) : content::alt(a, b);
    }
    case 2: return content::star(content(rest));
    case 3: return content::plus(content(rest));
    default: return content::opt(content(rest));
  }
}

std::vector<std::vector<std::string>> Gen::rows(std::size_t max_rows,
                                                std::size_t max_cols,
                                                bool unique_a) {
  static const std::vector<std::string> all = {"a", "b", "ab", "x", ""};
  static const std::vector<std::string> no_a = {"b", "x", ""};
  const auto& pool = unique_a ? no_a : all;
  std::size_t n = 1 + below(max_rows);
  std::vector<std::vector<std::string>> rows(n);
  for (auto& row : rows) {
    std::size_t w = 1 + below(max_cols);
    for (std::size_t l = 0; l < w; ++l) row.push_back(pool[below(pool.size())]);
  }
  if (unique_a && coin(0.7)) {
    auto& row = rows[below(n)];
    row[below(row.size())] = coin() ? "a" : "ab";
  }
  return rows;
}

// Enumeration ----------------------------------------------------------------

namespace {

struct Pools {
  std::vector<std::vector<CoordPtr>> coords{1};
  std::vector<std::vector<NavPtr>> navs{1};

  void grow(std::size_t size) {
    while (coords.size() <= size) {
      std::size_t s = coords.size();
      std::vector<CoordPtr> c;
      std::vector<NavPtr> n;
      if (s == 1) {
        c = {ast::token("a"), ast::token("b"), ast::root(), ast::truth()};
        n = {ast::eps(), ast::up(), ast::down(), ast::left(), ast::right()};
      } else {
        for (const auto& x : coords[s - 1]) c.push_back(ast::lnot(x));
        for (std::size_t i = 1; i + 1 < s; ++i) {
          for (const auto& x : coords[i]) {
            for (const auto& y : coords[s - 1 - i]) {
              c.push_back(ast::land(x, y));
              c.push_back(ast::lor(x, y));
            }
          }
        }
        for (const auto& a : navs[s - 1]) c.push_back(ast::exists(a));
        for (std::size_t i = 1; i + 1 < s; ++i)
          for (const auto& a : navs[i])
            for (const auto& x : coords[s - 1 - i]) c.push_back(ast::apply(a, x));

        for (const auto& x : coords[s - 1]) n.push_back(ast::filter(x));
        for (std::size_t i = 1; i + 1 < s; ++i) {
          for (const auto& a : navs[i]) {
            for (const auto& b : navs[s - 1 - i]) {
              n.push_back(ast::concat(a, b));
              n.push_back(ast::alt(a, b));
            }
          }
        }
        for (const auto& a : navs[s - 1]) n.push_back(ast::star(a));
      }
      coords.push_back(std::move(c));
      navs.push_back(std::move(n));
    }
  }
};

}  // namespace

void enumerate_coords(std::size_t size,
                      const std::function<void(const CoordPtr&)>& visit) {
  static Pools pools;
  pools.grow(size);
  for (const auto& e : pools.coords[size]) visit(e);
}

}  // namespace sculpt::testing
