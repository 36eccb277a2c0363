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

// Static classification of selectors: the forward fragment, nesting level,
// and (row-)guardedness with respect to declared uniqueness predicates.

#pragma once

#include <string>
#include <vector>

#include "sculpt/expr.hpp"
#include "sculpt/schema.hpp"

namespace sculpt {

/// No exists, up or left anywhere, filters included.
bool is_forward(const CoordExpr& e);
bool is_forward(const NavExpr& e);

/// Nesting depth of applications and filters. Exists counts like a filter;
/// that value only serves diagnostics.
std::size_t level(const CoordExpr& e);
std::size_t level(const NavExpr& e);

struct GuardOptions {
  /// Read the right*-composition case as row-guarded rather than guarded.
  bool strict_text = false;
};

struct Verdict {
  bool guarded = false;
  bool row_guarded = false;
};

/// Verdict of a desugared expression under the schema's unique and
/// unique-per-row declarations.
Verdict verdict(const CoordExpr& e, const SchemaDoc& doc,
                const GuardOptions& opts = {});

/// Every application whose navigation uses down has a row-guarded result,
/// and every one using a star over down has a guarded result.
bool is_guarded_selector(const CoordExpr& e, const SchemaDoc& doc,
                         const GuardOptions& opts = {});

enum class Fragment { GuardedForward, Forward, Full };

struct RuleAnalysis {
  bool forward = false;
  bool guarded = false;
  std::size_t level = 0;
};

struct FragmentReport {
  std::vector<RuleAnalysis> rules;
  Fragment fragment = Fragment::GuardedForward;

  bool forward() const { return fragment != Fragment::Full; }
  bool guarded() const { return fragment == Fragment::GuardedForward; }
};

/// `doc` must be desugared.
FragmentReport analyze(const SchemaDoc& doc, const GuardOptions& opts = {});

std::string to_string(Fragment f);
std::string format_analysis(const FragmentReport& r);

}  // namespace sculpt
