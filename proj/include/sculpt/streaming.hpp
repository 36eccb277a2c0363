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

// Single-pass validation over table events.
//
// Weak mode simulates one coordinate automaton per rule (plus one child
// automaton per application used as an oracle). Moving down suspends a
// state until the same column of the next row, so the suspended set can
// grow with the table width.
//
// Strong mode handles guarded schemas. Every subexpression is evaluated
// cell by cell; what crosses a row boundary is, per subexpression that is
// moved down, a ColumnSet whose finite part is bounded independently of
// the table size.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sculpt/content.hpp"
#include "sculpt/expr.hpp"
#include "sculpt/guardedness.hpp"
#include "sculpt/region.hpp"
#include "sculpt/tokens.hpp"
#include "sculpt/validator.hpp"

namespace sculpt {

enum class CaLabel { Epsilon, Filter, Right, Down, NewRow };

struct CoordinateAutomaton {
  struct Edge {
    CaLabel label;
    int to;
    int oracle = -1;  // Filter: index into oracles
  };
  std::vector<std::vector<Edge>> edges;
  int initial = 0;
  std::vector<int> finals;
  std::vector<CoordPtr> oracles;  // structurally distinct

  std::size_t states() const { return edges.size(); }
  bool is_final(int q) const;
  /// Maximum level of the oracles.
  std::size_t level() const;
};

/// Thompson construction over the forward axes. Throws FragmentError on
/// up, left or exists.
CoordinateAutomaton compile_nav_to_ca(const NavExpr& alpha);

/// An automaton selecting the cells of a forward expression when started
/// at the first cell: a scan over the table, a filter for the argument,
/// then the navigation (for applications) or just a filter (otherwise).
CoordinateAutomaton compile_coord_to_ca(const CoordExpr& phi);

/// A set of columns: a finite part plus an optional interval [open_from, inf).
class ColumnSet {
 public:
  bool contains(std::size_t col) const;
  /// Columns must be added in increasing order.
  void add(std::size_t col);
  void open(std::size_t from);
  void clear();

  const std::vector<std::size_t>& finite() const { return finite_; }
  std::optional<std::size_t> open_from() const { return open_from_; }
  /// Stored columns, counting the interval as one.
  std::size_t size() const { return finite_.size() + (open_from_ ? 1 : 0); }

 private:
  std::vector<std::size_t> finite_;
  std::optional<std::size_t> open_from_;
};

struct MemoryTrace {
  /// Largest footprint seen in each row, in row order.
  std::vector<std::size_t> row_footprint;
  /// State carried from each row into the next.
  std::vector<std::size_t> row_carryover;
  std::size_t max_footprint = 0;
  std::size_t max_carryover = 0;
  /// Largest finite part of any column set (strong mode only).
  std::size_t max_finite = 0;
};

struct StreamOptions {
  PadMode pad = PadMode::Trim;
  GuardOptions guard;
};

struct StreamResult {
  ValidationReport report;
  MemoryTrace trace;
};

/// Throws FragmentError if a rule is not forward.
StreamResult run_weak(const CompiledSchema& schema, EventSource& events,
                      const StreamOptions& opts = {});

/// Throws FragmentError("schema not guarded") unless the schema is guarded.
/// Stops at the first violated unique or unique-per-row declaration.
StreamResult run_strong(const CompiledSchema& schema, EventSource& events,
                        const StreamOptions& opts = {});

/// The cells a forward expression selects, computed by the weak simulator
/// on the table's event stream.
Region select_weak(const CoordExpr& phi, const TokenizedTable& t,
                   MemoryTrace* trace = nullptr);

/// Same with the strong simulator. The expression need not be guarded;
/// finite parts are then only limited by `max_finite` when given.
Region select_strong(const CoordExpr& phi, const TokenizedTable& t,
                     MemoryTrace* trace = nullptr,
                     std::optional<std::size_t> max_finite = std::nullopt);

}  // namespace sculpt
