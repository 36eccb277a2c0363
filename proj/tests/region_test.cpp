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

#include <gtest/gtest.h>

#include "sculpt/region.hpp"
#include "sculpt/schema.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

using Cells = std::vector<Coordinate>;

Cells select(const std::string& expr, const SchemaDoc& doc, const RawTable& raw) {
  return eval_coord(*desugar(parse_coord_expr(expr), doc),
                    testing::tokenize(doc, raw))
      .cells();
}

TEST(Region, StatsExampleSelections) {
  auto f = testing::load_fixture("stats_corrected.sculpt", "stats.csv");
  EXPECT_EQ(select("GeoArea", f.doc, f.raw), (Cells{{8, 2}}));
  EXPECT_EQ(select("right(GeoArea)", f.doc, f.raw), (Cells{{8, 3}}));
  EXPECT_EQ(select("right+(GeoArea)", f.doc, f.raw), (Cells{{8, 3}, {8, 4}}));
  EXPECT_EQ(select("down(right+(GeoArea))", f.doc, f.raw), (Cells{{9, 3}, {9, 4}}));
  EXPECT_EQ(select("down+(right+(GeoArea))", f.doc, f.raw),
            (Cells{{9, 3}, {9, 4}, {10, 3}, {10, 4}}));
}

TEST(Region, BoundariesClip) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  RawTable raw = testing::make_raw({{"a", "b"}, {"b", "a"}});
  EXPECT_TRUE(select("left((1,1))", doc, raw).empty());
  EXPECT_TRUE(select("up((1,2))", doc, raw).empty());
  EXPECT_TRUE(select("down((2,1))", doc, raw).empty());
  EXPECT_TRUE(select("right((1,2))", doc, raw).empty());
  EXPECT_EQ(select("(2,2)", doc, raw), (Cells{{2, 2}}));
}

TEST(Region, PaddingCellsAreAddressable) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  RawTable raw = testing::make_raw({{"a", "b"}, {"b"}});
  EXPECT_EQ(select("down(b)", doc, raw), (Cells{{2, 2}}));
  EXPECT_EQ(select("not String", doc, raw), (Cells{{2, 2}}));
}

TEST(Region, ExistsAndFilters) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  RawTable raw = testing::make_raw({{"a", "b", "x"}, {"x", "a", "b"}});
  EXPECT_EQ(select("<right.[b]>", doc, raw), (Cells{{1, 1}, {2, 2}}));
  EXPECT_EQ(select("[a].down(a)", doc, raw), (Cells{{2, 1}}));
  EXPECT_EQ(select("([a].right | [b].down)(true)", doc, raw),
            (Cells{{1, 2}, {2, 2}, {2, 3}}));
}

TEST(Region, ClimateHeaderWithoutDummyColumn) {
  auto f = testing::load_fixture("climate.sculpt", "climate.csv");
  f.doc.tokens.push_back({"dummy", "-99\".\"00"});
  EXPECT_EQ(select("right+(root) and not up*(dummy)", f.doc, f.raw), (Cells{{1, 4}}));
}

TEST(Region, AgreesWithReferenceOnRandomInput) {
  testing::Gen g(3);
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  for (int i = 0; i < 1500; ++i) {
    TokenizedTable t = testing::tokenize(doc, testing::make_raw(g.rows(5, 5)));
    auto e = g.coord(1 + g.below(12), false);
    testing::NaiveOracle o(t);
    ASSERT_EQ(eval_coord(*e, t).cells(), o.cells(*e)) << to_string(*e);
  }
}

TEST(Region, EvaluatorIsReusableAcrossTables) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  Evaluator ev(*desugar(parse_coord_expr("col(a)"), doc));
  testing::Gen g(9);
  for (int i = 0; i < 100; ++i) {
    TokenizedTable t = testing::tokenize(doc, testing::make_raw(g.rows(4, 4)));
    testing::NaiveOracle o(t);
    ASSERT_EQ(ev.eval(t).cells(),
              o.cells(*desugar(parse_coord_expr("col(a)"), doc)));
  }
}

TEST(Region, ProductNodesScaleWithCells) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  auto e = desugar(parse_coord_expr("down+(right+(a))"), doc);
  auto count = [&](std::size_t n) {
    std::vector<std::vector<std::string>> rows(n, {"a", "b", "b"});
    EvalStats s;
    eval_coord(*e, testing::tokenize(doc, testing::make_raw(rows)), &s);
    return s.product_nodes;
  };
  EXPECT_EQ(count(300) - count(200), count(200) - count(100));
}

}  // namespace
}  // namespace sculpt
