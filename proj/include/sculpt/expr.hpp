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

// Region selection expressions: coordinate expressions (sets of cells) and
// navigational expressions (relations between cells). Nodes are immutable
// and shared.

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace sculpt {

struct CoordExpr;
struct NavExpr;
using CoordPtr = std::shared_ptr<const CoordExpr>;
using NavPtr = std::shared_ptr<const NavExpr>;

enum class CoordKind {
  Token, Root, True, Or, And, Not, Exists, Apply,
  // Surface forms, removed by desugaring.
  Cell, RowIndex, ColIndex, Row, Col,
};

enum class NavKind {
  Epsilon, Up, Down, Left, Right, Filter, Concat, Union, Star,
  // Surface forms, removed by desugaring.
  Plus, Opt,
};

struct CoordExpr {
  CoordKind kind;
  std::string name;       // Token
  std::size_t row = 0;    // Cell, RowIndex
  std::size_t col = 0;    // Cell, ColIndex
  CoordPtr lhs;           // Or, And, Not, Apply, Row, Col
  CoordPtr rhs;           // Or, And
  NavPtr nav;             // Exists, Apply
};

struct NavExpr {
  NavKind kind;
  NavPtr lhs;             // Concat, Union, Star, Plus, Opt
  NavPtr rhs;             // Concat, Union
  CoordPtr filter;        // Filter
};

namespace ast {

CoordPtr token(std::string name);
CoordPtr root();
CoordPtr truth();
CoordPtr lor(CoordPtr a, CoordPtr b);
CoordPtr land(CoordPtr a, CoordPtr b);
CoordPtr lnot(CoordPtr a);
CoordPtr exists(NavPtr a);
CoordPtr apply(NavPtr a, CoordPtr phi);
CoordPtr cell(std::size_t row, std::size_t col);
CoordPtr row_index(std::size_t row);
CoordPtr col_index(std::size_t col);
CoordPtr row_of(CoordPtr phi);
CoordPtr col_of(CoordPtr phi);

NavPtr eps();
NavPtr up();
NavPtr down();
NavPtr left();
NavPtr right();
NavPtr filter(CoordPtr phi);
NavPtr concat(NavPtr a, NavPtr b);
NavPtr alt(NavPtr a, NavPtr b);
NavPtr star(NavPtr a);
NavPtr plus(NavPtr a);
NavPtr opt(NavPtr a);

}  // namespace ast

/// Surface syntax accepted by parse_coord_expr / parse_nav_expr, with the
/// fewest parentheses that preserve the tree shape.
std::string to_string(const CoordExpr& e);
std::string to_string(const NavExpr& e);

bool equal(const CoordExpr& a, const CoordExpr& b);
bool equal(const NavExpr& a, const NavExpr& b);

/// Number of AST nodes of both sorts.
std::size_t size(const CoordExpr& e);
std::size_t size(const NavExpr& e);

/// True if no surface-only node occurs.
bool is_core(const CoordExpr& e);
bool is_core(const NavExpr& e);

/// Parses a coordinate expression. A navigational expression that is not
/// followed by an argument is read as applied to root. Throws ParseError
/// with the byte offset of the problem.
CoordPtr parse_coord_expr(std::string_view text);
NavPtr parse_nav_expr(std::string_view text);

}  // namespace sculpt
