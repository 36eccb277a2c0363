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

#include "sculpt/guardedness.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

SchemaDoc with_uniques(std::vector<std::string> u, std::vector<std::string> per_row = {}) {
  SchemaDoc d;
  d.uniques = std::move(u);
  d.uniques_per_row = std::move(per_row);
  return d;
}

Verdict v(const std::string& e, const SchemaDoc& d, GuardOptions o = {}) {
  return verdict(*desugar(parse_coord_expr(e), d), d, o);
}

bool guarded(const std::string& e, const SchemaDoc& d, GuardOptions o = {}) {
  return is_guarded_selector(*desugar(parse_coord_expr(e), d), d, o);
}

TEST(Guardedness, Levels) {
  EXPECT_EQ(level(*parse_nav_expr("down.right*")), 0u);
  EXPECT_EQ(level(*parse_nav_expr("[a].right")), 1u);
  EXPECT_EQ(level(*parse_coord_expr("right(a and b)")), 1u);
  EXPECT_EQ(level(*parse_coord_expr("down([right(a)].down(b))")), 4u);
}

TEST(Guardedness, Forward) {
  EXPECT_TRUE(is_forward(*parse_coord_expr("down*(right(a) or b)")));
  EXPECT_FALSE(is_forward(*parse_coord_expr("up(a)")));
  EXPECT_FALSE(is_forward(*parse_coord_expr("down.[left(a)](b)")));
  EXPECT_FALSE(is_forward(*parse_coord_expr("<down>")));
}

TEST(Guardedness, TokenVerdicts) {
  SchemaDoc d = with_uniques({"h"}, {"k"});
  EXPECT_TRUE(v("h", d).guarded);
  EXPECT_FALSE(v("k", d).guarded);
  EXPECT_TRUE(v("k", d).row_guarded);
  EXPECT_FALSE(v("x", d).row_guarded);
  EXPECT_TRUE(v("root", d).guarded);
  EXPECT_FALSE(v("not h", d).row_guarded);
  EXPECT_TRUE(v("h and root", d).guarded);
  EXPECT_FALSE(v("h or x", d).row_guarded);
}

TEST(Guardedness, NavigationVerdicts) {
  SchemaDoc d = with_uniques({"h"}, {"k"});
  EXPECT_TRUE(v("down*(h)", d).guarded);
  EXPECT_FALSE(v("down*(k)", d).row_guarded);
  EXPECT_TRUE(v("right*(x)", d).guarded);
  EXPECT_TRUE(v("right*(down(h))", d).guarded);
  EXPECT_FALSE(v("right*(down(h))", d, {true}).guarded);
  EXPECT_TRUE(v("right*(down(h))", d, {true}).row_guarded);
  EXPECT_FALSE(v("up(h)", d).row_guarded);
}

TEST(Guardedness, Selectors) {
  SchemaDoc d = with_uniques({"h"}, {"k"});
  EXPECT_TRUE(guarded("col(h)", d));
  EXPECT_FALSE(guarded("col(x)", d));
  EXPECT_TRUE(guarded("down(k)", d));
  EXPECT_FALSE(guarded("down*(k)", d));
  EXPECT_TRUE(guarded("row(1)", d));
  EXPECT_TRUE(guarded("col(1)", d));
  EXPECT_TRUE(guarded("down+(right+(h))", d));
  EXPECT_FALSE(guarded("down.[col(x)](h)", d));
  EXPECT_FALSE(guarded("up(h)", d));
}

TEST(Guardedness, FactsSchemaNeedsUniques) {
  SchemaDoc d = desugar(parse_schema(testing::read_data("facts_corrected.sculpt")));
  FragmentReport r = analyze(d);
  EXPECT_EQ(r.fragment, Fragment::Forward);
  d.uniques = {"subject", "predicate", "object", "provenance"};
  EXPECT_EQ(analyze(d).fragment, Fragment::GuardedForward);
  EXPECT_EQ(format_analysis(analyze(d)).substr(0, 38),
            "rule 1: forward=y guarded=y level=1\nru");
}

TEST(Guardedness, NonForwardSchemasAreFull) {
  for (std::string e : {"up(a)", "left(a)", "<down>", "down.[up(a)](b)"}) {
    SchemaDoc d = desugar(parse_schema(e + " -> True\n"));
    EXPECT_EQ(analyze(d).fragment, Fragment::Full) << e;
  }
}

}  // namespace
}  // namespace sculpt
