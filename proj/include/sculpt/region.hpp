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

// In-memory evaluation of region selection expressions. Navigational
// expressions are compiled to epsilon-NFAs over the actions up, down, left,
// right and filter; applying one is reachability in the product of the
// automaton with the grid.

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sculpt/expr.hpp"
#include "sculpt/table.hpp"
#include "sculpt/tokens.hpp"

namespace sculpt {

/// A set of coordinates of an n x m table, stored as a dense bitset in
/// table order.
class Region {
 public:
  Region() = default;
  Region(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((rows * cols + 63) / 64, 0) {}
  static Region full(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t index) const {
    return (words_[index / 64] >> (index % 64)) & 1U;
  }
  void set(std::size_t index) {
    words_[index / 64] |= std::uint64_t{1} << (index % 64);
  }
  bool contains(std::size_t row, std::size_t col) const {
    return row >= 1 && col >= 1 && row <= rows_ && col <= cols_ &&
           test((row - 1) * cols_ + (col - 1));
  }
  void insert(std::size_t row, std::size_t col) {
    set((row - 1) * cols_ + (col - 1));
  }

  std::size_t count() const;
  bool empty() const;
  /// Members in table order.
  std::vector<Coordinate> cells() const;
  /// Columns of the members in one row, ascending.
  std::vector<std::size_t> columns_in_row(std::size_t row) const;

  Region& operator|=(const Region& o);
  Region& operator&=(const Region& o);
  void complement();
  void clear();
  /// Resizes to rows x cols and clears.
  void reset(std::size_t rows, std::size_t cols);

  friend bool operator==(const Region& a, const Region& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim_tail();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EvalStats {
  /// (automaton state, cell) pairs reached during navigation.
  std::uint64_t product_nodes = 0;
};

/// A coordinate expression compiled once and evaluated on many tables.
/// Not thread-safe: evaluation reuses internal buffers.
class Evaluator {
 public:
  /// `expr` must be core (desugared). Throws Error otherwise.
  explicit Evaluator(const CoordExpr& expr);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  /// The returned reference is valid until the next call.
  const Region& eval(const TokenizedTable& t, EvalStats* stats = nullptr);

  /// Total number of states of the compiled navigational automata.
  std::size_t automaton_states() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

Region eval_coord(const CoordExpr& phi, const TokenizedTable& t,
                  EvalStats* stats = nullptr);
Region eval_nav(const NavExpr& alpha, const Region& from,
                const TokenizedTable& t, EvalStats* stats = nullptr);
Region eval_exists(const NavExpr& alpha, const TokenizedTable& t,
                   EvalStats* stats = nullptr);

/// Number of states of the automaton compiled for a core navigational
/// expression.
std::size_t nav_automaton_states(const NavExpr& alpha);

}  // namespace sculpt
