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

// Whole-table validation and the reports shared by all engines.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sculpt/content.hpp"
#include "sculpt/region.hpp"
#include "sculpt/schema.hpp"
#include "sculpt/tokens.hpp"

namespace sculpt {

/// A desugared schema with its alphabet and content automata.
class CompiledSchema {
 public:
  /// Desugars `doc` and compiles every rule. Throws SchemaError.
  explicit CompiledSchema(const SchemaDoc& doc);

  const SchemaDoc& doc() const { return doc_; }
  const std::vector<TokenDef>& token_defs() const { return defs_; }
  const std::shared_ptr<const Alphabet>& alphabet() const { return alphabet_; }
  const ContentNfa& content(std::size_t rule) const { return contents_[rule]; }
  std::size_t rule_count() const { return doc_.rules.size(); }

  /// Ids of the tokens declared unique / unique-per-row.
  const std::vector<TokenId>& unique_ids() const { return unique_; }
  const std::vector<TokenId>& unique_per_row_ids() const { return unique_row_; }

  /// A tokenizer whose alphabet is alphabet().
  Tokenizer tokenizer() const;

 private:
  SchemaDoc doc_;
  std::vector<TokenDef> defs_;
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<ContentNfa> contents_;
  std::vector<TokenId> unique_;
  std::vector<TokenId> unique_row_;
};

struct RuleViolation {
  std::size_t rule = 0;            // 1-based
  std::optional<std::size_t> row;  // nullopt for region-based rules
  std::vector<Coordinate> sample;  // leading selected cells of the row/region
  std::string message;
};

struct UniqueViolation {
  std::string token;
  bool per_row = false;
  std::vector<Coordinate> cells;
};

struct ValidationReport {
  std::vector<RuleViolation> violations;
  std::vector<UniqueViolation> unique_violations;
  EvalStats stats;

  bool valid() const { return violations.empty() && unique_violations.empty(); }
};

struct ValidatorOptions {
  PadMode pad = PadMode::Trim;
};

/// Number of selected cells listed in a violation.
inline constexpr std::size_t kSampleCells = 8;

/// Evaluates every rule on the whole table and checks the uniqueness
/// declarations. Lists all failures.
ValidationReport validate(const CompiledSchema& schema, const TokenizedTable& t,
                          const ValidatorOptions& opts = {});

/// Row-by-row comparison key for reports of different engines.
bool same_verdicts(const ValidationReport& a, const ValidationReport& b);

enum class OutputFormat { Text, Machine };

std::string format_report(const ValidationReport& r, const CompiledSchema& s,
                          OutputFormat f);

std::string violation_message(const CompiledSchema& s, std::size_t rule);

}  // namespace sculpt
