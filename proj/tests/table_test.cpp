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
#include "sculpt/table.hpp"
#include "support.hpp"

namespace sculpt {
namespace {

TEST(Table, PadsShortRows) {
  RawTable t = parse_document("a,b,c\nd\n,e");
  ASSERT_EQ(t.rows(), 3u);
  ASSERT_EQ(t.cols(), 3u);
  EXPECT_EQ(*t.cell(1, 3), "c");
  EXPECT_EQ(*t.cell(2, 1), "d");
  EXPECT_TRUE(t.is_padding(2, 2));
  EXPECT_TRUE(t.is_padding(2, 3));
  EXPECT_EQ(*t.cell(3, 1), "");
  EXPECT_TRUE(t.is_padding(3, 3));
  EXPECT_EQ(t.row_width(2), 1u);
}

TEST(Table, TrailingRowDelimiterClosesLastRow) {
  RawTable t = parse_document("a\nb\n");
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_TRUE(t.trailing_row_delimiter());
  EXPECT_EQ(serialize_document(t), "a\nb\n");
}

TEST(Table, BlankLineIsOneEmptyCell) {
  RawTable t = parse_document("x,y\n\nz");
  ASSERT_EQ(t.rows(), 3u);
  EXPECT_EQ(*t.cell(2, 1), "");
  EXPECT_TRUE(t.is_padding(2, 2));
}

TEST(Table, CustomDelimiters) {
  RawTable t = parse_document("a\tb;c\td", {U'\t', U';'});
  ASSERT_EQ(t.rows(), 2u);
  EXPECT_EQ(*t.cell(2, 2), "d");
}

TEST(Table, RejectsInvalidUtf8) {
  try {
    parse_document("ab,\xff");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.byte_offset(), 3u);
  }
}

TEST(Table, RejectsEqualDelimiters) {
  EXPECT_THROW(parse_document("a", {U',', U','}), ParseError);
}

TEST(Table, TrimKeepsInnerBlanks) {
  EXPECT_EQ(trim_cell(" \tENTEBBE AIR \r"), "ENTEBBE AIR");
  EXPECT_EQ(trim_cell("   "), "");
}

TEST(Table, DumpJsonMarksPadding) {
  RawTable t = parse_document("a,\"q\"\nb");
  EXPECT_EQ(dump_json(t), "[[\"a\",\"\\\"q\\\"\"],[\"b\",null]]");
}

TEST(Table, SerializeRoundTripsRandomDocuments) {
  testing::Gen g(7);
  for (int i = 0; i < 300; ++i) {
    auto rows = g.rows(6, 6);
    // A final row holding one empty cell only survives with a trailing
    // row delimiter.
    RawTable t = RawTable::from_rows(rows, true);
    std::string text = serialize_document(t);
    RawTable back = parse_document(text);
    ASSERT_EQ(back.rows(), t.rows()) << text;
    ASSERT_EQ(back.cols(), t.cols()) << text;
    for (std::size_t k = 1; k <= t.rows(); ++k)
      for (std::size_t l = 1; l <= t.cols(); ++l)
        ASSERT_EQ(back.cell(k, l), t.cell(k, l)) << text;
    EXPECT_EQ(serialize_document(back), text);
  }
}

}  // namespace
}  // namespace sculpt
