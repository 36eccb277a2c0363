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

#include "sculpt/text_regex.hpp"
#include "sculpt/tokens.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

bool matches(const std::string& pattern, const std::string& text) {
  return TextRegex::compile(pattern).full_match(text);
}

TEST(TextRegex, QuotedRunsAreLiteral) {
  EXPECT_TRUE(matches("[0-9]{4}\".\"[0-9]{2}", "1935.04"));
  EXPECT_FALSE(matches("[0-9]{4}\".\"[0-9]{2}", "1935x04"));
  EXPECT_TRUE(matches("\"a*b\"", "a*b"));
  EXPECT_FALSE(matches("\"a*b\"", "aab"));
}

TEST(TextRegex, EscapedQuoteIsACharacter) {
  EXPECT_TRUE(matches("\\\"[a-zA-Z0-9]*\\\"", "\"Bart\""));
  EXPECT_FALSE(matches("\\\"[a-zA-Z0-9]*\\\"", "Bart"));
}

TEST(TextRegex, BoundedRepetitionAndOptional) {
  EXPECT_TRUE(matches("(-)?[0-9]{2}\".\"[0-9]{2}", "-99.00"));
  EXPECT_TRUE(matches("(-)?[0-9]{2}\".\"[0-9]{2}", "27.83"));
  EXPECT_FALSE(matches("(-)?[0-9]{2}\".\"[0-9]{2}", "127.83"));
  EXPECT_TRUE(matches("a{2,3}", "aaa"));
  EXPECT_FALSE(matches("a{2,3}", "aaaa"));
}

TEST(TextRegex, DotMatchesAnyScalar) {
  EXPECT_TRUE(matches("[0-9].[0.9]", "0.9"));
  EXPECT_TRUE(matches("a.c", "a\xc3\xa9" "c"));
}

TEST(TextRegex, LiteralPatternRoundTrips) {
  for (std::string s : {"ENTEBBE AIR", "a\"b", "x*y", "", "[z]"})
    EXPECT_TRUE(matches(TextRegex::literal_pattern(s), s)) << s;
  EXPECT_FALSE(matches(TextRegex::literal_pattern("x*y"), "xxy"));
}

TEST(TextRegex, MalformedPatternsThrow) {
  EXPECT_THROW(TextRegex::compile("(ab"), RegexError);
  EXPECT_THROW(TextRegex::compile("[a-"), RegexError);
  EXPECT_THROW(TextRegex::compile("\"open"), RegexError);
}

TEST(Tokenizer, PredefinedTokens) {
  Tokenizer tz(predefined_tokens());
  const Alphabet& a = *tz.alphabet();
  TokenSet s(a.size());
  auto has = [&](const std::string& text, const std::string& tok) {
    s.clear();
    tz.tokenize_cell(text, s);
    return s.view().contains(*a.find(tok));
  };
  EXPECT_TRUE(has("", "Empty"));
  EXPECT_TRUE(has("   ", "Empty"));
  EXPECT_TRUE(has("-99.00", "Number"));
  EXPECT_TRUE(has("1935.04", "Number"));
  EXPECT_TRUE(has("38881374", "Number"));
  EXPECT_FALSE(has("1.4M", "Number"));
  EXPECT_TRUE(has("27/03/2011", "Date"));
  EXPECT_TRUE(has("England", "String"));
}

TEST(Tokenizer, CellsCarryEveryMatchingToken) {
  SchemaDoc doc;
  doc.tokens = testing::ab_tokens();
  TokenizedTable t = testing::tokenize(doc, testing::make_raw({{"ab", "a"}, {"b"}}));
  EXPECT_EQ(format_token_set(t.cell(1, 1), t.alphabet()), "{String,a,b}");
  EXPECT_EQ(format_token_set(t.cell(1, 2), t.alphabet()), "{String,a}");
  EXPECT_EQ(format_token_set(t.cell(2, 2), t.alphabet()), "Null");
}

TEST(Tokenizer, EventStreamIsTableOrder) {
  SchemaDoc doc;
  TokenizedTable t = testing::tokenize(doc, testing::make_raw({{"1", "2"}, {"x"}}));
  auto ev = event_stream(t);
  ASSERT_EQ(ev.size(), 5u);
  EXPECT_EQ(ev[0].kind, TableEvent::Kind::Cell);
  EXPECT_EQ(ev[2].kind, TableEvent::Kind::NewRow);
  EXPECT_TRUE(ev[4].tokens.padding());

  TableEventSource src(t);
  TableEvent e;
  std::size_t n = 0;
  while (src.next(e)) ++n;
  EXPECT_EQ(n, 5u);
  EXPECT_EQ(src.served(), 5u);
}

}  // namespace
}  // namespace sculpt
