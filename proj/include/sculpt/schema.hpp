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

// Schema documents: parsing, printing and desugaring.
//
// Statements, one per line (indented lines continue the previous one, lines
// starting with % are comments):
//
//   Col Delim = ,            Row Delim = \n
//   <Name> = <regex>         token definition
//   <Name> <= <expr>         token type
//   unique(<Name>)           unique-per-row(<Name>)
//   <selector> -> <content>  row-based rule
//   <selector> => <content>  region-based rule

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sculpt/content.hpp"
#include "sculpt/expr.hpp"
#include "sculpt/table.hpp"
#include "sculpt/tokens.hpp"

namespace sculpt {

struct TokenType {
  std::string name;
  CoordPtr definition;
};

struct Rule {
  CoordPtr selector;
  ContentPtr content;
  Semantics semantics = Semantics::RowBased;
  std::size_t line = 0;  // source line, 0 if synthesized
};

struct SchemaDoc {
  std::optional<char32_t> column_delim;
  std::optional<char32_t> row_delim;
  std::vector<TokenDef> tokens;
  /// Names referenced but never defined; each matches its own text.
  std::vector<std::string> literal_tokens;
  std::vector<TokenType> token_types;
  std::vector<std::string> uniques;
  std::vector<std::string> uniques_per_row;
  std::vector<Rule> rules;
};

struct SchemaOptions {
  /// Reject references to undefined tokens instead of defining them as
  /// literals.
  bool strict_tokens = false;
};

/// Throws SchemaError with line and column.
SchemaDoc parse_schema(std::string_view text, const SchemaOptions& opts = {});

/// Replaces every surface form and token type by its core equivalent.
/// Throws SchemaError on recursive token types.
SchemaDoc desugar(const SchemaDoc& doc);

/// Desugars one expression in the context of a schema's token types.
CoordPtr desugar(const CoordPtr& e, const SchemaDoc& doc);
NavPtr desugar(const NavPtr& e, const SchemaDoc& doc);

/// Schema text that parse_schema reads back into an equal document.
std::string print_schema(const SchemaDoc& doc);

bool equal(const SchemaDoc& a, const SchemaDoc& b);

/// Predefined tokens, then user tokens in definition order, then literal
/// tokens in order of first reference.
std::vector<TokenDef> token_definitions(const SchemaDoc& doc);

/// The schema's delimiters, falling back to `defaults` where undeclared.
DelimiterConfig delimiters(const SchemaDoc& doc, DelimiterConfig defaults = {});

/// Token names referenced by a coordinate expression, in order of first
/// occurrence.
std::vector<std::string> referenced_tokens(const CoordExpr& e);

}  // namespace sculpt
