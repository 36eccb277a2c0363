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

#include "sculpt/content.hpp"
#include "sculpt/errors.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

class ContentTest : public ::testing::Test {
 protected:
  ContentTest() {
    SchemaDoc doc;
    doc.tokens = testing::ab_tokens();
    t_ = testing::tokenize(doc, testing::make_raw({{"a", "b", "ab", "x"}, {"a"}}));
  }

  // Row 1 of the table restricted to the given columns.
  bool row_matches(const std::string& rho, std::vector<std::size_t> cols,
                   PadMode pad = PadMode::Trim, std::size_t row = 1) {
    Region z(t_.rows(), t_.cols());
    for (auto l : cols) z.insert(row, l);
    auto nfa = ContentNfa::compile(*parse_content(rho), t_.alphabet());
    return nfa.match_sequence(matched_sequence(t_, z, row, pad));
  }

  TokenizedTable t_;
};

TEST_F(ContentTest, Sequences) {
  EXPECT_TRUE(row_matches("a, b", {1, 2}));
  EXPECT_FALSE(row_matches("b, a", {1, 2}));
  EXPECT_TRUE(row_matches("a, b, a", {1, 2, 3}));
  EXPECT_TRUE(row_matches("a, b, b", {1, 2, 3}));
  EXPECT_TRUE(row_matches("(a | b)*, String", {1, 2, 3, 4}));
  EXPECT_FALSE(row_matches("(a | b)*", {1, 2, 3, 4}));
  EXPECT_TRUE(row_matches("a+, b?", {1}));
  EXPECT_TRUE(row_matches("True*", {1, 2, 3, 4}));
}

TEST_F(ContentTest, TrailingPaddingIsTrimmed) {
  EXPECT_TRUE(row_matches("a", {1, 2, 3, 4}, PadMode::Trim, 2));
  EXPECT_FALSE(row_matches("a", {1, 2, 3, 4}, PadMode::Literal, 2));
  EXPECT_TRUE(row_matches("a, Null*", {1, 2, 3, 4}, PadMode::Literal, 2));
  EXPECT_TRUE(row_matches("a, True, True, True", {1, 2, 3, 4}, PadMode::Literal, 2));
}

TEST_F(ContentTest, PrintParseRoundTrip) {
  testing::Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    auto c = g.content(1 + g.below(12));
    auto back = parse_content(to_string(*c));
    ASSERT_TRUE(equal(*c, *back)) << to_string(*c);
  }
}

TEST_F(ContentTest, UnknownSymbolsAreSchemaErrors) {
  EXPECT_THROW(ContentNfa::compile(*parse_content("nope"), t_.alphabet()), SchemaError);
  EXPECT_THROW(parse_content("a,"), ParseError);
}

TEST_F(ContentTest, StepwiseMatchesWholeSequence) {
  testing::Gen g(17);
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  for (int i = 0; i < 500; ++i) {
    TokenizedTable t = testing::tokenize(doc, testing::make_raw(g.rows(1, 6)));
    auto nfa = ContentNfa::compile(*g.content(8), t.alphabet());
    std::vector<TokenSetView> seq;
    auto s = nfa.initial();
    ContentNfa::StateSet next;
    for (std::size_t l = 1; l <= t.cols(); ++l) {
      seq.push_back(t.cell(1, l));
      nfa.step(s, t.cell(1, l), next);
      s.swap(next);
    }
    EXPECT_EQ(nfa.accepts(s), nfa.match_sequence(seq));
  }
}

}  // namespace
}  // namespace sculpt
