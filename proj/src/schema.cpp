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

#include "sculpt/schema.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sculpt/errors.hpp"
#include "sculpt/text_regex.hpp"
#include "sculpt/utf8.hpp"

namespace sculpt {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

// Collapses runs of blanks to single spaces.
std::string normalize_name(std::string_view s) {
  std::string out;
  for (char c : trim(s)) {
    if (is_blank(c)) {
      if (out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// One logical statement: its physical lines joined by '\n', with enough
// bookkeeping to map offsets back to source positions.
struct Statement {
  std::string text;
  struct Segment {
    std::size_t offset;  // in text
    std::size_t line;
  };
  std::vector<Segment> segments;

  std::pair<std::size_t, std::size_t> position(std::size_t off) const {
    auto it = std::upper_bound(
        segments.begin(), segments.end(), off,
        [](std::size_t o, const Segment& s) { return o < s.offset; });
    const Segment& s = *(it - 1);
    return {s.line, off - s.offset + 1};
  }
  std::size_t line() const { return segments.front().line; }
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    ++line_no;
    std::string_view t = trim(line);
    bool continuation = !line.empty() && is_blank(line.front());
    if (!t.empty() && t.front() != '%') {
      if (continuation && !out.empty()) {
        Statement& s = out.back();
        s.text.push_back('\n');
        s.segments.push_back({s.text.size(), line_no});
        s.text.append(line);
      } else {
        Statement s;
        s.segments.push_back({0, line_no});
        s.text.assign(line);
        out.push_back(std::move(s));
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

enum class Kind { TokenDef, TokenType, RowRule, RegionRule, None };

// The earliest operator decides the kind of statement.
std::pair<Kind, std::size_t> classify(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 2, "->") == 0) return {Kind::RowRule, i};
    if (s.compare(i, 2, "=>") == 0) return {Kind::RegionRule, i};
    if (s.compare(i, 2, "<=") == 0) return {Kind::TokenType, i};
    if (s[i] == '=') return {Kind::TokenDef, i};
  }
  return {Kind::None, s.size()};
}

std::optional<char32_t> parse_delim(std::string_view v) {
  if (v == "\\n") return U'\n';
  if (v == "\\t") return U'\t';
  if (v == "\\r") return U'\r';
  if (v == "\\s") return U' ';
  if (v == "\\\\") return U'\\';
  if (v.empty() || utf8::find_invalid(v))
    return std::nullopt;
  std::u32string u = utf8::to_u32(v);
  if (u.size() != 1) return std::nullopt;
  return u[0];
}

std::string print_delim(char32_t c) {
  switch (c) {
    case U'\n': return "\\n";
    case U'\t': return "\\t";
    case U'\r': return "\\r";
    case U' ': return "\\s";
    case U'\\': return "\\\\";
    default: {
      std::string out;
      utf8::append(out, c);
      return out;
    }
  }
}

void collect(const CoordExpr& e, std::vector<std::string>& out);

void collect(const NavExpr& e, std::vector<std::string>& out) {
  if (e.filter) collect(*e.filter, out);
  if (e.lhs) collect(*e.lhs, out);
  if (e.rhs) collect(*e.rhs, out);
}

void collect(const CoordExpr& e, std::vector<std::string>& out) {
  if (e.kind == CoordKind::Token &&
      std::find(out.begin(), out.end(), e.name) == out.end())
    out.push_back(e.name);
  if (e.nav) collect(*e.nav, out);
  if (e.lhs) collect(*e.lhs, out);
  if (e.rhs) collect(*e.rhs, out);
}

void collect(const ContentExpr& e, std::vector<std::string>& out) {
  if (e.kind == ContentKind::Symbol &&
      std::find(out.begin(), out.end(), e.name) == out.end())
    out.push_back(e.name);
  if (e.lhs) collect(*e.lhs, out);
  if (e.rhs) collect(*e.rhs, out);
}

// A name is usable if it reads back as a single token in both expression
// languages.
bool writable_name(const std::string& name) {
  try {
    CoordPtr c = parse_coord_expr(name);
    ContentPtr r = parse_content(name);
    return c->kind == CoordKind::Token && c->name == name &&
           r->kind == ContentKind::Symbol && r->name == name;
  } catch (const ParseError&) {
    return false;
  }
}

class SchemaParser {
 public:
  explicit SchemaParser(const SchemaOptions& opts) : opts_(opts) {}

  SchemaDoc run(std::string_view text) {
    for (const Statement& s : split_statements(text)) statement(s);
    resolve();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const Statement& s, std::size_t off,
                         const std::string& msg) {
    auto [line, col] = s.position(off);
    throw SchemaError(msg, line, col);
  }

  // Offset of the first non-blank character at or after `from`.
  static std::size_t skip_blanks(const std::string& t, std::size_t from) {
    while (from < t.size() && is_blank(t[from])) ++from;
    return from;
  }

  void statement(const Statement& s) {
    const std::string& t = s.text;
    auto [kind, at] = classify(t);
    std::size_t start = skip_blanks(t, 0);
    if (kind == Kind::None) {
      unique_statement(s, start);
      return;
    }
    std::string_view lhs = std::string_view(t).substr(0, at);
    std::size_t rhs_at = at + (kind == Kind::TokenDef ? 1 : 2);
    std::string_view rhs = std::string_view(t).substr(rhs_at);
    switch (kind) {
      case Kind::TokenDef:
        token_def(s, start, normalize_name(lhs), rhs_at, rhs);
        break;
      case Kind::TokenType: {
        std::string name = normalize_name(lhs);
        check_new_name(s, start, name);
        CoordPtr def = coord(s, rhs_at, rhs);
        doc_.token_types.push_back({name, def});
        type_lines_[name] = s.line();
        break;
      }
      case Kind::RowRule:
      case Kind::RegionRule: {
        Rule r;
        r.selector = coord(s, 0, lhs);
        try {
          r.content = parse_content(rhs);
        } catch (const ParseError& e) {
          fail(s, rhs_at + e.byte_offset(), e.detail());
        }
        r.semantics = kind == Kind::RowRule ? Semantics::RowBased
                                            : Semantics::RegionBased;
        r.line = s.line();
        content_cols_.push_back(s.position(skip_blanks(t, rhs_at)));
        doc_.rules.push_back(std::move(r));
        break;
      }
      case Kind::None:
        break;
    }
  }

  CoordPtr coord(const Statement& s, std::size_t base, std::string_view text) {
    try {
      return parse_coord_expr(text);
    } catch (const ParseError& e) {
      fail(s, base + e.byte_offset(), e.detail());
    }
  }

  void unique_statement(const Statement& s, std::size_t start) {
    std::string_view t = trim(std::string_view(s.text).substr(start));
    bool per_row = false;
    if (t.starts_with("unique-per-row")) {
      per_row = true;
      t.remove_prefix(14);
    } else if (t.starts_with("unique")) {
      t.remove_prefix(6);
    } else {
      fail(s, start, "expected a definition, a rule or a unique declaration");
    }
    t = trim(t);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      fail(s, start, "expected unique(<Name>)");
    std::string name = normalize_name(t.substr(1, t.size() - 2));
    if (name.empty()) fail(s, start, "expected a token name");
    auto& list = per_row ? doc_.uniques_per_row : doc_.uniques;
    if (std::find(list.begin(), list.end(), name) == list.end())
      list.push_back(name);
    unique_lines_.emplace(name, s.line());
  }

  void token_def(const Statement& s, std::size_t start, const std::string& name,
                 std::size_t rhs_at, std::string_view rhs) {
    if (name == "Col Delim" || name == "Row Delim" || name == "List Delim") {
      if (name == "List Delim") fail(s, start, "unsupported feature: List Delim");
      auto c = parse_delim(trim(rhs));
      if (!c)
        fail(s, skip_blanks(s.text, rhs_at),
             "a delimiter is a single character or one of \\n \\t \\r \\s \\\\");
      (name == "Col Delim" ? doc_.column_delim : doc_.row_delim) = *c;
      if (doc_.column_delim && doc_.column_delim == doc_.row_delim)
        fail(s, start, "column and row delimiters must differ");
      return;
    }
    check_new_name(s, start, name);
    std::string pattern(trim(rhs));
    try {
      TextRegex::compile(pattern);
    } catch (const RegexError& e) {
      fail(s, skip_blanks(s.text, rhs_at),
           "token '" + name + "': invalid pattern: " + e.what());
    }
    doc_.tokens.push_back({name, pattern});
  }

  void check_new_name(const Statement& s, std::size_t start,
                      const std::string& name) {
    if (name.empty()) fail(s, start, "expected a name before '='");
    if (!writable_name(name))
      fail(s, start, "'" + name + "' cannot be used as a token name");
    if (!names_.insert(name).second)
      fail(s, start, "duplicate token name '" + name + "'");
  }

  // Classifies every reference once all definitions are known.
  void resolve() {
    std::unordered_set<std::string> types;
    for (const auto& t : doc_.token_types) types.insert(t.name);

    auto note = [&](const std::string& name, std::size_t line) {
      if (names_.count(name)) return;
      if (std::find(doc_.literal_tokens.begin(), doc_.literal_tokens.end(),
                    name) != doc_.literal_tokens.end())
        return;
      if (opts_.strict_tokens)
        throw SchemaError("undefined token '" + name + "'", line, 1);
      doc_.literal_tokens.push_back(name);
    };

    for (const auto& t : doc_.token_types) {
      std::vector<std::string> refs;
      collect(*t.definition, refs);
      for (const auto& n : refs) note(n, type_lines_[t.name]);
    }
    for (const auto* list : {&doc_.uniques, &doc_.uniques_per_row}) {
      for (const auto& n : *list) {
        std::size_t line = unique_lines_.find(n)->second;
        if (types.count(n))
          throw SchemaError("'" + n + "' is a token type, not a token", line, 1);
        note(n, line);
      }
    }
    for (std::size_t i = 0; i < doc_.rules.size(); ++i) {
      const Rule& r = doc_.rules[i];
      std::vector<std::string> refs;
      collect(*r.selector, refs);
      for (const auto& n : refs) note(n, r.line);
      refs.clear();
      collect(*r.content, refs);
      for (const auto& n : refs) {
        if (types.count(n)) {
          auto [line, col] = content_cols_[i];
          throw SchemaError("token type '" + n +
                                "' cannot be used in a content expression",
                            line, col);
        }
        note(n, r.line);
      }
    }
  }

  const SchemaOptions& opts_;
  SchemaDoc doc_;
  std::unordered_set<std::string> names_ = [] {
    std::unordered_set<std::string> s;
    for (const auto& d : predefined_tokens()) s.insert(d.name);
    return s;
  }();
  std::unordered_map<std::string, std::size_t> type_lines_;
  std::unordered_multimap<std::string, std::size_t> unique_lines_;
  std::vector<std::pair<std::size_t, std::size_t>> content_cols_;
};

// Desugaring -----------------------------------------------------------------

class Desugarer {
 public:
  explicit Desugarer(const SchemaDoc& doc) {
    for (const auto& t : doc.token_types) types_[t.name] = t.definition;
  }

  CoordPtr coord(const CoordPtr& e) {
    switch (e->kind) {
      case CoordKind::Token: {
        auto it = types_.find(e->name);
        if (it == types_.end()) return e;
        if (std::find(active_.begin(), active_.end(), e->name) != active_.end())
          throw SchemaError("recursive token type '" + e->name + "'");
        active_.push_back(e->name);
        CoordPtr r = coord(it->second);
        active_.pop_back();
        return r;
      }
      case CoordKind::Root:
      case CoordKind::True:
        return e;
      case CoordKind::Or: return ast::lor(coord(e->lhs), coord(e->rhs));
      case CoordKind::And: return ast::land(coord(e->lhs), coord(e->rhs));
      case CoordKind::Not: return ast::lnot(coord(e->lhs));
      case CoordKind::Exists: return ast::exists(nav(e->nav));
      case CoordKind::Apply: return ast::apply(nav(e->nav), coord(e->lhs));
      case CoordKind::Cell: return cell(e->row, e->col);
      case CoordKind::RowIndex:
        return ast::apply(ast::star(ast::right()), cell(e->row, 1));
      case CoordKind::ColIndex:
        return ast::apply(ast::star(ast::down()), cell(1, e->col));
      case CoordKind::Row:
        return ast::apply(ast::concat(ast::right(), ast::star(ast::right())),
                          coord(e->lhs));
      case CoordKind::Col:
        return ast::apply(ast::concat(ast::down(), ast::star(ast::down())),
                          coord(e->lhs));
    }
    return e;
  }

  NavPtr nav(const NavPtr& e) {
    switch (e->kind) {
      case NavKind::Epsilon:
      case NavKind::Up:
      case NavKind::Down:
      case NavKind::Left:
      case NavKind::Right:
        return e;
      case NavKind::Filter: return ast::filter(coord(e->filter));
      case NavKind::Concat: return ast::concat(nav(e->lhs), nav(e->rhs));
      case NavKind::Union: return ast::alt(nav(e->lhs), nav(e->rhs));
      case NavKind::Star: return ast::star(nav(e->lhs));
      case NavKind::Plus: {
        NavPtr a = nav(e->lhs);
        return ast::concat(a, ast::star(a));
      }
      case NavKind::Opt: return ast::alt(nav(e->lhs), ast::eps());
    }
    return e;
  }

 private:
  static CoordPtr cell(std::size_t k, std::size_t l) {
    if (k == 0 || l == 0)
      throw SchemaError("cell coordinates start at (1,1)");
    NavPtr path;
    auto step = [&](NavPtr a) { path = path ? ast::concat(path, a) : a; };
    for (std::size_t i = 1; i < k; ++i) step(ast::down());
    for (std::size_t i = 1; i < l; ++i) step(ast::right());
    if (!path) return ast::root();
    return ast::apply(path, ast::root());
  }

  std::unordered_map<std::string, CoordPtr> types_;
  std::vector<std::string> active_;
};

}  // namespace

SchemaDoc parse_schema(std::string_view text, const SchemaOptions& opts) {
  return SchemaParser(opts).run(text);
}

SchemaDoc desugar(const SchemaDoc& doc) {
  Desugarer d(doc);
  SchemaDoc out = doc;
  for (auto& t : out.token_types) t.definition = d.coord(t.definition);
  for (std::size_t i = 0; i < out.rules.size(); ++i) {
    try {
      out.rules[i].selector = d.coord(out.rules[i].selector);
    } catch (const SchemaError& e) {
      if (e.line() != 0) throw;
      throw SchemaError(e.what(), out.rules[i].line, 1);
    }
  }
  return out;
}

CoordPtr desugar(const CoordPtr& e, const SchemaDoc& doc) {
  return Desugarer(doc).coord(e);
}

NavPtr desugar(const NavPtr& e, const SchemaDoc& doc) {
  return Desugarer(doc).nav(e);
}

std::string print_schema(const SchemaDoc& doc) {
  std::string out;
  if (doc.column_delim)
    out += "Col Delim = " + print_delim(*doc.column_delim) + "\n";
  if (doc.row_delim) out += "Row Delim = " + print_delim(*doc.row_delim) + "\n";
  for (const auto& t : doc.tokens) out += t.name + " = " + t.pattern + "\n";
  for (const auto& t : doc.token_types)
    out += t.name + " <= " + to_string(*t.definition) + "\n";
  for (const auto& u : doc.uniques) out += "unique(" + u + ")\n";
  for (const auto& u : doc.uniques_per_row) out += "unique-per-row(" + u + ")\n";
  for (const auto& r : doc.rules) {
    out += to_string(*r.selector);
    out += r.semantics == Semantics::RowBased ? " -> " : " => ";
    out += to_string(*r.content);
    out += "\n";
  }
  return out;
}

bool equal(const SchemaDoc& a, const SchemaDoc& b) {
  if (a.column_delim != b.column_delim || a.row_delim != b.row_delim ||
      a.literal_tokens != b.literal_tokens || a.uniques != b.uniques ||
      a.uniques_per_row != b.uniques_per_row ||
      a.tokens.size() != b.tokens.size() ||
      a.token_types.size() != b.token_types.size() ||
      a.rules.size() != b.rules.size())
    return false;
  for (std::size_t i = 0; i < a.tokens.size(); ++i)
    if (a.tokens[i].name != b.tokens[i].name ||
        a.tokens[i].pattern != b.tokens[i].pattern)
      return false;
  for (std::size_t i = 0; i < a.token_types.size(); ++i)
    if (a.token_types[i].name != b.token_types[i].name ||
        !equal(*a.token_types[i].definition, *b.token_types[i].definition))
      return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (a.rules[i].semantics != b.rules[i].semantics ||
        !equal(*a.rules[i].selector, *b.rules[i].selector) ||
        !equal(*a.rules[i].content, *b.rules[i].content))
      return false;
  return true;
}

std::vector<TokenDef> token_definitions(const SchemaDoc& doc) {
  std::vector<TokenDef> out = predefined_tokens();
  out.insert(out.end(), doc.tokens.begin(), doc.tokens.end());
  for (const auto& n : doc.literal_tokens)
    out.push_back({n, TextRegex::literal_pattern(n)});
  return out;
}

DelimiterConfig delimiters(const SchemaDoc& doc, DelimiterConfig defaults) {
  if (doc.column_delim) defaults.column = *doc.column_delim;
  if (doc.row_delim) defaults.row = *doc.row_delim;
  return defaults;
}

std::vector<std::string> referenced_tokens(const CoordExpr& e) {
  std::vector<std::string> out;
  collect(e, out);
  return out;
}

}  // namespace sculpt
