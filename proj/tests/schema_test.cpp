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

#include "sculpt/errors.hpp"
#include "sculpt/schema.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

std::string core(const std::string& expr, const SchemaDoc& doc = {}) {
  return to_string(*desugar(parse_coord_expr(expr), doc));
}

TEST(Schema, ParsesClimateSchema) {
  SchemaDoc d = parse_schema(testing::read_data("climate.sculpt"));
  EXPECT_EQ(d.column_delim, U',');
  EXPECT_EQ(d.row_delim, U'\n');
  ASSERT_EQ(d.tokens.size(), 5u);
  EXPECT_EQ(d.tokens[4].name, "ENTEBBE AIR");
  ASSERT_EQ(d.rules.size(), 5u);
  EXPECT_EQ(d.rules[0].line, 12u);
  EXPECT_EQ(to_string(*d.rules[4].selector), "col(ENTEBBE AIR)");
  EXPECT_EQ(to_string(*d.rules[1].content), "Empty | Timestamp");
}

TEST(Schema, ContinuationLinesJoinTheRule) {
  SchemaDoc d = parse_schema(testing::read_data("facts.sculpt"));
  ASSERT_EQ(d.rules.size(), 5u);
  EXPECT_EQ(to_string(*d.rules[4].selector), "down+(right*(provenance))");
  EXPECT_EQ(to_string(*d.rules[4].content), "(prov-book, prov-pos*, prov-node?)*");
}

TEST(Schema, UndefinedNamesBecomeLiterals) {
  SchemaDoc d = parse_schema(testing::read_data("stats.sculpt"));
  std::vector<std::string> want = {"Count", "Person", "Activity", "GeoID", "GeoArea"};
  EXPECT_EQ(d.literal_tokens, want);
  EXPECT_THROW(parse_schema("row(1) -> Foo", {true}), SchemaError);
}

TEST(Schema, Desugaring) {
  EXPECT_EQ(core("(1,1)"), "root");
  EXPECT_EQ(core("(3,2)"), "down.down.right(root)");
  EXPECT_EQ(core("row(1)"), "right*(root)");
  EXPECT_EQ(core("row(2)"), "right*(down(root))");
  EXPECT_EQ(core("col(2)"), "down*(right(root))");
  EXPECT_EQ(core("col(a)"), "down.down*(a)");
  EXPECT_EQ(core("row(a)"), "right.right*(a)");
  EXPECT_EQ(core("down+(a)"), "down.down*(a)");
  EXPECT_EQ(core("right?(a)"), "right|eps(a)");
  EXPECT_THROW(core("(0,1)"), ParseError);
}

TEST(Schema, TokenTypesAreInlined) {
  SchemaDoc d = parse_schema("Header <= row(1)\ncol(Header) -> Number\n");
  ASSERT_EQ(d.token_types.size(), 1u);
  EXPECT_EQ(to_string(*desugar(d).rules[0].selector), "down.down*(right*(root))");
  EXPECT_THROW(desugar(parse_schema("A <= down(B)\nB <= down(A)\nA -> x\n")), SchemaError);
}

TEST(Schema, RegionRulesUseDoubleArrow) {
  SchemaDoc d = parse_schema("col(1) => Number*\n");
  EXPECT_EQ(d.rules[0].semantics, Semantics::RegionBased);
  EXPECT_NE(print_schema(d).find(" => "), std::string::npos);
}

TEST(Schema, UniqueDeclarations) {
  SchemaDoc d = parse_schema("unique(h)\nunique-per-row(k)\nunique(h)\nh -> True\n");
  EXPECT_EQ(d.uniques, std::vector<std::string>{"h"});
  EXPECT_EQ(d.uniques_per_row, std::vector<std::string>{"k"});
}

TEST(Schema, ErrorsNameTheLine) {
  try {
    parse_schema("a = x\n\nrow(1 -> a\n");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_schema("a = x\na = y\n"), SchemaError);
  EXPECT_THROW(parse_schema("a = (x\n"), SchemaError);
  EXPECT_THROW(parse_schema("List Delim = ;\n"), SchemaError);
  EXPECT_THROW(parse_schema("Col Delim = ;\nRow Delim = ;\n"), SchemaError);
  EXPECT_THROW(parse_schema("just words\n"), SchemaError);
}

TEST(Schema, PrintParseRoundTripsFixtures) {
  for (std::string f : {"climate.sculpt", "stats.sculpt", "stats_corrected.sculpt",
                        "facts.sculpt", "facts_corrected.sculpt"}) {
    SchemaDoc d = parse_schema(testing::read_data(f));
    SchemaDoc back = parse_schema(print_schema(d));
    EXPECT_TRUE(equal(d, back)) << f << "\n" << print_schema(d);
    SchemaDoc c = desugar(d);
    EXPECT_TRUE(equal(c, parse_schema(print_schema(c)))) << f;
  }
}

TEST(Schema, PrintParseRoundTripsRandomSchemas) {
  testing::Gen g(5);
  for (int i = 0; i < 300; ++i) {
    SchemaDoc d;
    d.tokens = testing::ab_tokens();
    if (g.coin()) d.uniques.push_back("a");
    for (std::size_t r = 0; r < 1 + g.below(3); ++r)
      d.rules.push_back({g.coord(8, g.coin()), g.content(6),
                         g.coin() ? Semantics::RowBased : Semantics::RegionBased});
    std::string text = print_schema(d);
    EXPECT_TRUE(equal(d, parse_schema(text))) << text;
  }
}

TEST(Schema, DelimitersOverrideDefaults) {
  SchemaDoc d = parse_schema("Col Delim = \\t\n");
  DelimiterConfig c = delimiters(d, {U';', U'|'});
  EXPECT_EQ(c.column, U'\t');
  EXPECT_EQ(c.row, U'|');
}

}  // namespace
}  // namespace sculpt
