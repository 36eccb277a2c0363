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

#include "sculpt/validator.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sculpt/errors.hpp"

namespace sculpt {

CompiledSchema::CompiledSchema(const SchemaDoc& doc)
    : doc_(desugar(doc)), defs_(token_definitions(doc_)) {
  alphabet_ = Tokenizer(defs_).alphabet();
  for (const Rule& r : doc_.rules) {
    try {
      contents_.push_back(ContentNfa::compile(*r.content, *alphabet_));
    } catch (const SchemaError& e) {
      if (e.line() != 0) throw;
      throw SchemaError(e.what(), r.line, 1);
    }
  }
  auto ids = [&](const std::vector<std::string>& names) {
    std::vector<TokenId> out;
    for (const auto& n : names) {
      auto id = alphabet_->find(n);
      if (!id) throw SchemaError("unique declaration of unknown token '" + n + "'");
      out.push_back(*id);
    }
    return out;
  };
  unique_ = ids(doc_.uniques);
  unique_row_ = ids(doc_.uniques_per_row);
}

Tokenizer CompiledSchema::tokenizer() const { return Tokenizer(defs_); }

std::string violation_message(const CompiledSchema& s, std::size_t rule) {
  return "selected cells do not match " +
         to_string(*s.doc().rules[rule - 1].content);
}

namespace {

std::vector<Coordinate> sample_of(const Region& z, std::size_t row) {
  std::vector<Coordinate> out;
  std::size_t from = row == 0 ? 1 : row;
  std::size_t to = row == 0 ? z.rows() : row;
  for (std::size_t k = from; k <= to && out.size() < kSampleCells; ++k)
    for (std::size_t l = 1; l <= z.cols() && out.size() < kSampleCells; ++l)
      if (z.contains(k, l)) out.push_back({k, l});
  return out;
}

void check_uniques(const CompiledSchema& s, const TokenizedTable& t,
                   ValidationReport& r) {
  const Alphabet& a = *s.alphabet();
  for (TokenId id : s.unique_ids()) {
    std::vector<Coordinate> cells;
    for (std::size_t k = 1; k <= t.rows(); ++k)
      for (std::size_t l = 1; l <= t.cols(); ++l)
        if (!t.is_padding(k, l) && t.cell(k, l).contains(id))
          cells.push_back({k, l});
    if (cells.size() > 1) r.unique_violations.push_back({a.name(id), false, cells});
  }
  for (TokenId id : s.unique_per_row_ids()) {
    for (std::size_t k = 1; k <= t.rows(); ++k) {
      std::vector<Coordinate> cells;
      for (std::size_t l = 1; l <= t.cols(); ++l)
        if (!t.is_padding(k, l) && t.cell(k, l).contains(id))
          cells.push_back({k, l});
      if (cells.size() > 1)
        r.unique_violations.push_back({a.name(id), true, cells});
    }
  }
}

}  // namespace

ValidationReport validate(const CompiledSchema& s, const TokenizedTable& t,
                          const ValidatorOptions& opts) {
  ValidationReport report;
  for (std::size_t i = 0; i < s.rule_count(); ++i) {
    const Rule& rule = s.doc().rules[i];
    Evaluator ev(*rule.selector);
    const Region& z = ev.eval(t, &report.stats);
    const ContentNfa& nfa = s.content(i);
    if (rule.semantics == Semantics::RegionBased) {
      if (!nfa.match_sequence(matched_sequence(t, z, 0, opts.pad)))
        report.violations.push_back(
            {i + 1, std::nullopt, sample_of(z, 0), violation_message(s, i + 1)});
      continue;
    }
    for (std::size_t k = 1; k <= t.rows(); ++k) {
      if (z.columns_in_row(k).empty()) continue;
      if (!nfa.match_sequence(matched_sequence(t, z, k, opts.pad)))
        report.violations.push_back(
            {i + 1, k, sample_of(z, k), violation_message(s, i + 1)});
    }
  }
  check_uniques(s, t, report);
  return report;
}

bool same_verdicts(const ValidationReport& a, const ValidationReport& b) {
  if (a.valid() != b.valid()) return false;
  auto keys = [](const ValidationReport& r) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& v : r.violations) out.insert({v.rule, v.row.value_or(0)});
    return out;
  };
  return keys(a) == keys(b);
}

namespace {

std::string coords(const std::vector<Coordinate>& cs) {
  std::string out;
  for (const auto& c : cs) {
    if (!out.empty()) out += ' ';
    out += to_string(c);
  }
  return out;
}

}  // namespace

std::string format_report(const ValidationReport& r, const CompiledSchema& s,
                          OutputFormat f) {
  std::string out;
  if (f == OutputFormat::Machine) {
    for (const auto& v : r.violations) {
      out += "RULE " + std::to_string(v.rule);
      out += v.row ? " ROW " + std::to_string(*v.row) : std::string(" REGION");
      out += ": " + v.message + "\n";
    }
    for (const auto& u : r.unique_violations) {
      out += u.per_row ? "UNIQUE-PER-ROW " : "UNIQUE ";
      out += u.token + ": " + coords(u.cells) + "\n";
    }
    out += r.valid() ? "RESULT valid\n" : "RESULT invalid\n";
    return out;
  }
  for (const auto& v : r.violations) {
    const Rule& rule = s.doc().rules[v.rule - 1];
    out += "rule " + std::to_string(v.rule);
    if (rule.line) out += " (line " + std::to_string(rule.line) + ")";
    out += v.row ? ", row " + std::to_string(*v.row) : std::string(", region");
    out += ": " + v.message;
    if (!v.sample.empty()) out += "; cells " + coords(v.sample);
    out += "\n";
  }
  for (const auto& u : r.unique_violations) {
    out += "token " + u.token + " occurs more than once";
    out += u.per_row ? " in a row: " : ": ";
    out += coords(u.cells) + "\n";
  }
  if (r.valid()) {
    out += "valid\n";
  } else {
    std::size_t n = r.violations.size() + r.unique_violations.size();
    out += "invalid (" + std::to_string(n) +
           (n == 1 ? " violation)\n" : " violations)\n");
  }
  return out;
}

}  // namespace sculpt
