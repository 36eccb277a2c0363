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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sculpt/errors.hpp"
#include "sculpt/guardedness.hpp"
#include "sculpt/region.hpp"
#include "sculpt/schema.hpp"
#include "sculpt/streaming.hpp"
#include "sculpt/table.hpp"
#include "sculpt/tokens.hpp"
#include "sculpt/utf8.hpp"
#include "sculpt/validator.hpp"

namespace {

using namespace sculpt;

constexpr int kValid = 0;
constexpr int kInvalid = 1;
constexpr int kError = 2;

enum class Mode { Memory, StreamWeak, StreamStrong };

struct Config {
  std::string schema_path;
  std::string table_path;
  std::string expr;
  Mode mode = Mode::Memory;
  PadMode pad = PadMode::Trim;
  OutputFormat output = OutputFormat::Text;
  std::string trace_memory;
  std::string col_delim = ",";
  std::string row_delim = "\\n";
  bool strict_guard_text = false;
  bool strict_tokens = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

char32_t parse_delim(const std::string& s) {
  static const std::map<std::string, char32_t> escapes = {
      {"\\n", U'\n'}, {"\\t", U'\t'}, {"\\r", U'\r'}, {"\\s", U' '},
      {"\\\\", U'\\'}};
  auto it = escapes.find(s);
  if (it != escapes.end()) return it->second;
  std::u32string u = utf8::to_u32(s);
  if (u.size() != 1) throw Error("delimiter must be a single character: " + s);
  return u[0];
}

SchemaDoc load_schema(const Config& c) {
  if (c.schema_path.empty()) return {};
  return parse_schema(read_file(c.schema_path), {c.strict_tokens});
}

RawTable load_table(const Config& c, const SchemaDoc& doc) {
  DelimiterConfig defaults{parse_delim(c.col_delim), parse_delim(c.row_delim)};
  return parse_document(read_file(c.table_path), delimiters(doc, defaults));
}

void write_trace(const Config& c, const MemoryTrace& trace) {
  if (c.trace_memory.empty()) return;
  std::ofstream out(c.trace_memory);
  if (!out) throw Error("cannot write " + c.trace_memory);
  for (std::size_t k = 0; k < trace.row_footprint.size(); ++k)
    out << "row " << k + 1 << " footprint " << trace.row_footprint[k] << "\n";
}

int cmd_validate(const Config& c) {
  SchemaDoc doc = load_schema(c);
  CompiledSchema schema(doc);
  RawTable raw = load_table(c, doc);
  TokenizedTable t = schema.tokenizer().tokenize(raw);
  ValidationReport report;
  if (c.mode == Mode::Memory) {
    report = validate(schema, t, {c.pad});
  } else {
    // The table is materialized first: padding depends on the widest row.
    TableEventSource events(t);
    StreamOptions opts{c.pad, {c.strict_guard_text}};
    StreamResult r = c.mode == Mode::StreamWeak
                         ? run_weak(schema, events, opts)
                         : run_strong(schema, events, opts);
    write_trace(c, r.trace);
    report = std::move(r.report);
  }
  std::cout << format_report(report, schema, c.output);
  return report.valid() ? kValid : kInvalid;
}

int cmd_analyze(const Config& c) {
  SchemaDoc doc = desugar(load_schema(c));
  std::cout << format_analysis(analyze(doc, {c.strict_guard_text}));
  return kValid;
}

int cmd_desugar(const Config& c) {
  std::cout << print_schema(desugar(load_schema(c)));
  return kValid;
}

int cmd_select(const Config& c) {
  SchemaDoc doc = load_schema(c);
  CoordPtr expr = parse_coord_expr(c.expr);
  // Names the schema does not define denote their literal text.
  auto known = [&](const std::string& n) {
    auto has = [&](const auto& v, auto name_of) {
      return std::any_of(v.begin(), v.end(),
                         [&](const auto& x) { return name_of(x) == n; });
    };
    auto def_name = [](const TokenDef& d) { return d.name; };
    return has(predefined_tokens(), def_name) || has(doc.tokens, def_name) ||
           has(doc.token_types, [](const TokenType& t) { return t.name; }) ||
           has(doc.literal_tokens, [](const std::string& s) { return s; });
  };
  for (const auto& n : referenced_tokens(*expr))
    if (!known(n)) doc.literal_tokens.push_back(n);
  CoordPtr core = desugar(expr, doc);
  RawTable raw = load_table(c, doc);
  TokenizedTable t = Tokenizer(token_definitions(doc)).tokenize(raw);
  Region z;
  MemoryTrace trace;
  switch (c.mode) {
    case Mode::Memory: z = eval_coord(*core, t); break;
    case Mode::StreamWeak: z = select_weak(*core, t, &trace); break;
    case Mode::StreamStrong: z = select_strong(*core, t, &trace); break;
  }
  if (c.mode != Mode::Memory) write_trace(c, trace);
  for (const auto& cell : z.cells()) std::cout << to_string(cell) << "\n";
  return kValid;
}

int cmd_events(const Config& c) {
  SchemaDoc doc = load_schema(c);
  CompiledSchema schema(doc);
  TokenizedTable t = schema.tokenizer().tokenize(load_table(c, doc));
  TableEventSource events(t);
  TableEvent ev;
  std::size_t k = 1, l = 0;
  while (events.next(ev)) {
    if (ev.kind == TableEvent::Kind::NewRow) {
      std::cout << "newrow\n";
      ++k;
      l = 0;
      continue;
    }
    ++l;
    std::cout << "cell " << to_string(Coordinate{k, l}) << " "
              << format_token_set(ev.tokens, t.alphabet()) << "\n";
  }
  return kValid;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Validate tabular documents against sculpt schemas."};
  app.require_subcommand(1);

  const std::map<std::string, Mode> modes = {{"memory", Mode::Memory},
                                             {"stream-weak", Mode::StreamWeak},
                                             {"stream-strong", Mode::StreamStrong}};
  const std::map<std::string, PadMode> pads = {{"trim", PadMode::Trim},
                                               {"literal", PadMode::Literal}};
  const std::map<std::string, OutputFormat> outputs = {
      {"text", OutputFormat::Text}, {"machine", OutputFormat::Machine}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--mode", c.mode, "memory, stream-weak or stream-strong")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    sub->add_option("--pad", c.pad, "trim or literal")
        ->transform(CLI::CheckedTransformer(pads, CLI::ignore_case));
    sub->add_option("--col-delim", c.col_delim, "column delimiter unless the schema sets one");
    sub->add_option("--row-delim", c.row_delim, "row delimiter unless the schema sets one");
    sub->add_option("--trace-memory", c.trace_memory, "write per-row footprints of a stream mode");
    sub->add_flag("--strict-guard-text", c.strict_guard_text,
                  "treat right* over a navigating argument as row-guarded only");
    sub->add_flag("--strict-tokens", c.strict_tokens, "reject undefined token names");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a table against a schema");
  common(validate_cmd);
  validate_cmd->add_option("--output", c.output, "text or machine")
      ->transform(CLI::CheckedTransformer(outputs, CLI::ignore_case));
  validate_cmd->add_option("schema", c.schema_path)->required();
  validate_cmd->add_option("table", c.table_path, "table file, - for stdin")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "classify the rules of a schema");
  common(analyze_cmd);
  analyze_cmd->add_option("schema", c.schema_path)->required();

  auto* desugar_cmd = app.add_subcommand("desugar", "print the core form of a schema");
  common(desugar_cmd);
  desugar_cmd->add_option("schema", c.schema_path)->required();

  auto* select_cmd = app.add_subcommand("select", "print the cells an expression selects");
  common(select_cmd);
  select_cmd->add_option("-e,--expr", c.expr, "coordinate expression")->required();
  select_cmd->add_option("--schema", c.schema_path, "schema defining the tokens");
  select_cmd->add_option("table", c.table_path, "table file, - for stdin")->required();

  auto* events_cmd = app.add_subcommand("events", "dump the token event stream");
  common(events_cmd);
  events_cmd->add_option("schema", c.schema_path)->required();
  events_cmd->add_option("table", c.table_path, "table file, - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*validate_cmd) return cmd_validate(c);
    if (*analyze_cmd) return cmd_analyze(c);
    if (*desugar_cmd) return cmd_desugar(c);
    if (*select_cmd) return cmd_select(c);
    if (*events_cmd) return cmd_events(c);
  } catch (const FragmentError& e) {
    std::cerr << "sculpt: " << e.what() << "\n";
  } catch (const SchemaError& e) {
    std::cerr << "sculpt: schema: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "sculpt: " << e.what() << "\n";
  }
  return kError;
}
