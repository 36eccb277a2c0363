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

// Helpers shared by the unit, property and acceptance tests: fixtures, a
// naive reference evaluator and random generators.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "sculpt/content.hpp"
#include "sculpt/expr.hpp"
#include "sculpt/region.hpp"
#include "sculpt/schema.hpp"
#include "sculpt/table.hpp"
#include "sculpt/tokens.hpp"
#include "sculpt/validator.hpp"

namespace sculpt::testing {

std::string data_path(const std::string& name);
std::string read_data(const std::string& name);

/// Schema file and table file, both under the test data directory.
struct Fixture {
  SchemaDoc doc;
  RawTable raw;
};
Fixture load_fixture(const std::string& schema, const std::string& table);

TokenizedTable tokenize(const SchemaDoc& doc, const RawTable& raw);

/// Reference semantics on tables of at most 64 cells: regions are bitmasks
/// and navigational expressions explicit relations, closed by iteration.
/// Results are memoized per node, so shared subtrees are computed once.
class NaiveOracle {
 public:
  explicit NaiveOracle(const TokenizedTable& t);

  std::uint64_t coord(const CoordExpr& e);
  std::vector<Coordinate> cells(const CoordExpr& e);

 private:
  using Relation = std::vector<std::uint64_t>;  // successors per cell
  const Relation& nav(const NavExpr& e);
  Relation shift(int dr, int dc) const;

  const TokenizedTable& t_;
  std::size_t n_;
  std::uint64_t all_;
  std::unordered_map<const CoordExpr*, std::uint64_t> coords_;
  std::unordered_map<const NavExpr*, Relation> navs_;
};

std::vector<Coordinate> cells_of(const Region& r);

/// Token definitions a = "a|ab", b = "b|ab" on top of the predefined ones.
std::vector<TokenDef> ab_tokens();

/// Ragged rows become a padded table.
RawTable make_raw(const std::vector<std::vector<std::string>>& rows);

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// A core coordinate expression of at most `budget` nodes.
  CoordPtr coord(std::size_t budget, bool forward);
  NavPtr nav(std::size_t budget, bool forward);
  ContentPtr content(std::size_t budget);

  /// Ragged rows over {a, b, ab, x, ""}, up to the given shape. With
  /// `unique_a`, at most one cell carries token a.
  std::vector<std::vector<std::string>> rows(std::size_t max_rows,
                                             std::size_t max_cols,
                                             bool unique_a = false);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Every core coordinate expression over tokens a and b with exactly
/// `size` nodes.
void enumerate_coords(std::size_t size,
                      const std::function<void(const CoordPtr&)>& visit);

}  // namespace sculpt::testing
