// Copyright 2026 The Wikigraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wikigraph/dump_parser.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <streambuf>

#include <nlohmann/json.hpp>

#include "wikigraph/time_util.h"

namespace wikigraph {

namespace {

constexpr int kEof = std::char_traits<char>::eof();

struct Field {
  std::string text;
  bool quoted = false;
};

enum class TupleStatus { kOk, kMalformed, kTruncated };

bool is_space(int c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\v'; }

bool is_word_char(int c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '$';
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::span<const std::string_view> required_columns(DumpTable table) {
  static constexpr std::array<std::string_view, 4> kPage{"page_id", "page_namespace", "page_title",
                                                         "page_is_redirect"};
  static constexpr std::array<std::string_view, 3> kRedirect{"rd_from", "rd_namespace", "rd_title"};
  static constexpr std::array<std::string_view, 3> kLinks{"pl_from", "pl_namespace", "pl_title"};
  static constexpr std::array<std::string_view, 2> kCatLinks{"cl_from", "cl_to"};
  switch (table) {
    case DumpTable::kPage:
      return kPage;
    case DumpTable::kRedirect:
      return kRedirect;
    case DumpTable::kPageLinks:
      return kLinks;
    case DumpTable::kCategoryLinks:
      return kCatLinks;
  }
  return {};
}

std::optional<std::int64_t> to_int(const Field& f) {
  if (f.quoted || f.text.empty()) return std::nullopt;
  std::int64_t v = 0;
  const char* first = f.text.data();
  const char* last = first + f.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

std::optional<std::string> to_title(Field& f) {
  if (!f.quoted || f.text.empty()) return std::nullopt;
  return std::move(f.text);
}

bool wanted_namespace(std::int64_t ns) { return ns == kArticleNamespace || ns == kCategoryNamespace; }

}  // namespace

std::string_view table_name(DumpTable table) {
  switch (table) {
    case DumpTable::kPage:
      return "page";
    case DumpTable::kRedirect:
      return "redirect";
    case DumpTable::kPageLinks:
      return "pagelinks";
    case DumpTable::kCategoryLinks:
      return "categorylinks";
  }
  return "";
}

std::optional<DumpTable> parse_table_name(std::string_view name) {
  for (auto t : {DumpTable::kPage, DumpTable::kRedirect, DumpTable::kPageLinks, DumpTable::kCategoryLinks}) {
    if (table_name(t) == name) return t;
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const ParseSummary& s) {
  j = nlohmann::json{{"emitted", s.emitted},
                     {"skipped_namespace", s.skipped_namespace},
                     {"skipped_malformed", s.skipped_malformed},
                     {"skipped_project", s.skipped_project}};
}

struct SqlDumpParser::State {
  std::streambuf* buf;
  DumpTable table;
  ParseOptions options;
  ParseSummary summary;
  bool in_values = false;
  std::vector<std::size_t> columns;
  std::vector<Field> fields;
  std::uint64_t tuple_index = 0;

  State(std::istream& in, DumpTable t, ParseOptions o) : buf(in.rdbuf()), table(t), options(o) {
    if (buf == nullptr || !in.good()) throw ParseError("dump stream is not readable");
    const auto req = required_columns(table);
    for (std::size_t i = 0; i < req.size(); ++i) columns.push_back(i);
  }

  int peek() { return buf->sgetc(); }
  int get() { return buf->sbumpc(); }

  void skip_ws() {
    while (is_space(peek())) get();
  }

  void skip_line() {
    for (int c = get(); c != kEof && c != '\n'; c = get()) {
    }
  }

  void skip_block_comment() {
    int prev = 0;
    for (int c = get(); c != kEof; c = get()) {
      if (prev == '*' && c == '/') return;
      prev = c;
    }
  }

  // Consumes a quoted literal whose opening quote was already read.
  bool skip_quoted(int quote) {
    for (int c = get(); c != kEof; c = get()) {
      if (c == '\\' && quote != '`') {
        if (get() == kEof) return false;
      } else if (c == quote) {
        if (peek() == quote) {
          get();
          continue;
        }
        return true;
      }
    }
    return false;
  }

  void skip_statement() {
    for (int c = get(); c != kEof; c = get()) {
      if (c == ';') return;
      if (c == '\'' || c == '"' || c == '`') {
        if (!skip_quoted(c)) return;
      }
    }
  }

  std::string read_word() {
    std::string w;
    while (is_word_char(peek())) w.push_back(static_cast<char>(get()));
    return w;
  }

  // Bare or backticked identifier.
  std::string read_name() {
    skip_ws();
    if (peek() == '`') {
      get();
      std::string n;
      for (int c = get(); c != kEof && c != '`'; c = get()) n.push_back(static_cast<char>(c));
      return n;
    }
    return read_word();
  }

  void apply_column_list(const std::vector<std::string>& names) {
    const auto req = required_columns(table);
    std::vector<std::size_t> positions;
    for (auto want : req) {
      auto it = std::find(names.begin(), names.end(), want);
      if (it == names.end()) {
        throw ParseError("table `" + std::string(table_name(table)) + "` declares no column " + std::string(want));
      }
      positions.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    columns = std::move(positions);
  }

  // After `CREATE`: learns the column order when the table is ours.
  void parse_create() {
    skip_ws();
    if (!iequals(read_word(), "TABLE")) return skip_statement();
    skip_ws();
    std::string name = read_name();
    if (iequals(name, "IF")) {
      skip_ws();
      read_word();  // NOT
      skip_ws();
      read_word();  // EXISTS
      name = read_name();
    }
    skip_ws();
    if (name != table_name(table) || peek() != '(') return skip_statement();
    get();
    std::vector<std::string> items(1);
    int depth = 0;
    for (int c = get(); c != kEof; c = get()) {
      if (c == '\'' || c == '"') {
        if (!skip_quoted(c)) break;
        items.back().push_back('?');
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) {
        items.emplace_back();
        continue;
      }
      items.back().push_back(static_cast<char>(c));
    }
    std::vector<std::string> names;
    for (const auto& item : items) {
      std::size_t i = 0;
      while (i < item.size() && is_space(item[i])) ++i;
      if (i == item.size()) continue;
      std::string col;
      if (item[i] == '`') {
        const auto end = item.find('`', i + 1);
        col = item.substr(i + 1, end == std::string::npos ? std::string::npos : end - i - 1);
      } else {
        while (i < item.size() && is_word_char(item[i])) col.push_back(item[i++]);
        static constexpr std::array<std::string_view, 8> kNotColumns{
            "PRIMARY", "KEY", "UNIQUE", "INDEX", "CONSTRAINT", "FULLTEXT", "FOREIGN", "SPATIAL"};
        if (std::any_of(kNotColumns.begin(), kNotColumns.end(), [&](auto k) { return iequals(col, k); })) continue;
      }
      names.push_back(std::move(col));
    }
    apply_column_list(names);
    skip_statement();
  }

  // After `INSERT`: true when positioned just past VALUES of our table.
  bool parse_insert_head() {
    skip_ws();
    std::string w = read_word();
    if (iequals(w, "IGNORE")) {
      skip_ws();
      w = read_word();
    }
    if (!iequals(w, "INTO")) {
      skip_statement();
      return false;
    }
    const std::string name = read_name();
    skip_ws();
    const bool ours = name == table_name(table);
    if (peek() == '(') {
      get();
      std::vector<std::string> names;
      for (;;) {
        names.push_back(read_name());
        skip_ws();
        const int c = get();
        if (c == ',') continue;
        if (c != ')') {
          skip_statement();
          return false;
        }
        break;
      }
      if (ours) apply_column_list(names);
      skip_ws();
    }
    if (!iequals(read_word(), "VALUES") || !ours) {
      skip_statement();
      return false;
    }
    return true;
  }

  bool seek_values() {
    for (;;) {
      skip_ws();
      const int c = peek();
      if (c == kEof) return false;
      if (c == ';') {
        get();
        continue;
      }
      if (c == '#') {
        skip_line();
        continue;
      }
      if (c == '-' || c == '/') {
        get();
        if (c == '-' && peek() == '-') {
          skip_line();
        } else if (c == '/' && peek() == '*') {
          get();
          skip_block_comment();
        } else {
          skip_statement();
        }
        continue;
      }
      if (is_word_char(c)) {
        const std::string word = read_word();
        if (iequals(word, "INSERT")) {
          if (parse_insert_head()) return true;
        } else if (iequals(word, "CREATE")) {
          parse_create();
        } else {
          skip_statement();
        }
        continue;
      }
      skip_statement();
    }
  }

  bool read_quoted(int quote, std::string& out) {
    for (int c = get(); c != kEof; c = get()) {
      if (c == '\\') {
        const int e = get();
        switch (e) {
          case kEof:
            return false;
          case '0':
            out.push_back('\0');
            break;
          case 'n':
            out.push_back('\n');
            break;
          case 'r':
            out.push_back('\r');
            break;
          case 't':
            out.push_back('\t');
            break;
          case 'b':
            out.push_back('\b');
            break;
          case 'Z':
            out.push_back('\x1a');
            break;
          case '%':
          case '_':
            out.push_back('\\');
            out.push_back(static_cast<char>(e));
            break;
          default:
            out.push_back(static_cast<char>(e));
        }
      } else if (c == quote) {
        if (peek() == quote) {
          out.push_back(static_cast<char>(get()));
          continue;
        }
        return true;
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
    return false;
  }

  // Consumes up to and including the `)` that closes the current tuple.
  void skip_tuple_rest() {
    int depth = 0;
    for (int c = get(); c != kEof; c = get()) {
      if (c == '\'' || c == '"') {
        if (!skip_quoted(c)) return;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth-- == 0) return;
      } else if (c == ';' && depth == 0) {
        return;
      }
    }
  }

  TupleStatus read_tuple() {
    fields.clear();
    for (;;) {
      skip_ws();
      int c = peek();
      if (c == ')' && fields.empty()) {
        get();
        return TupleStatus::kOk;
      }
      Field f;
      if (c == '\'' || c == '"') {
        get();
        if (!read_quoted(c, f.text)) return TupleStatus::kTruncated;
        f.quoted = true;
      } else {
        while ((c = peek()) != kEof && c != ',' && c != ')' && !is_space(c)) {
          if (c == '(' || c == '\'' || c == '"' || c == ';') {
            skip_tuple_rest();
            return TupleStatus::kMalformed;
          }
          f.text.push_back(static_cast<char>(get()));
        }
      }
      fields.push_back(std::move(f));
      skip_ws();
      c = get();
      if (c == ',') continue;
      if (c == ')') return TupleStatus::kOk;
      if (c == kEof) return TupleStatus::kTruncated;
      skip_tuple_rest();
      return TupleStatus::kMalformed;
    }
  }

  void malformed(std::string_view why) {
    ++summary.skipped_malformed;
    if (options.strict) {
      throw ParseError("malformed tuple #" + std::to_string(tuple_index) + " in table `" +
                       std::string(table_name(table)) + "`: " + std::string(why));
    }
  }

  std::optional<DumpRow> convert() {
    const std::size_t arity = *std::max_element(columns.begin(), columns.end()) + 1;
    if (fields.size() < arity) {
      malformed("expected at least " + std::to_string(arity) + " values, got " + std::to_string(fields.size()));
      return std::nullopt;
    }
    auto col = [&](std::size_t i) -> Field& { return fields[columns[i]]; };
    const auto id = to_int(col(0));
    if (!id || *id <= 0) {
      malformed("source id is not a positive integer");
      return std::nullopt;
    }
    const auto page_id = static_cast<PageId>(*id);
    switch (table) {
      case DumpTable::kPage: {
        const auto ns = to_int(col(1));
        auto title = to_title(col(2));
        const auto redirect = to_int(col(3));
        if (!ns || !title || !redirect || (*redirect != 0 && *redirect != 1)) {
          malformed("bad page fields");
          return std::nullopt;
        }
        if (!wanted_namespace(*ns)) {
          ++summary.skipped_namespace;
          return std::nullopt;
        }
        return PageRow{page_id, static_cast<std::int32_t>(*ns), std::move(*title), *redirect == 1};
      }
      case DumpTable::kRedirect:
      case DumpTable::kPageLinks: {
        const auto ns = to_int(col(1));
        auto title = to_title(col(2));
        if (!ns || !title) {
          malformed("bad link target");
          return std::nullopt;
        }
        if (!wanted_namespace(*ns)) {
          ++summary.skipped_namespace;
          return std::nullopt;
        }
        if (table == DumpTable::kRedirect) {
          return RedirectRow{page_id, static_cast<std::int32_t>(*ns), std::move(*title)};
        }
        return LinkRow{page_id, static_cast<std::int32_t>(*ns), std::move(*title)};
      }
      case DumpTable::kCategoryLinks: {
        auto title = to_title(col(1));
        if (!title) {
          malformed("bad category title");
          return std::nullopt;
        }
        return CategoryLinkRow{page_id, std::move(*title)};
      }
    }
    return std::nullopt;
  }

  std::optional<DumpRow> next() {
    for (;;) {
      if (!in_values) {
        if (!seek_values()) return std::nullopt;
        in_values = true;
      }
      skip_ws();
      const int c = peek();
      if (c == kEof) {
        in_values = false;
        return std::nullopt;
      }
      if (c == ';') {
        get();
        in_values = false;
        continue;
      }
      if (c == ',') {
        get();
        continue;
      }
      ++tuple_index;
      if (c != '(') {
        skip_tuple_rest();
        malformed("tuple does not start with '('");
        continue;
      }
      get();
      switch (read_tuple()) {
        case TupleStatus::kOk:
          break;
        case TupleStatus::kMalformed:
          malformed("unparseable value");
          continue;
        case TupleStatus::kTruncated:
          malformed("stream ends inside a tuple");
          in_values = false;
          return std::nullopt;
      }
      if (auto row = convert()) {
        ++summary.emitted;
        return row;
      }
    }
  }
};

SqlDumpParser::SqlDumpParser(std::istream& in, DumpTable table, ParseOptions options)
    : state_(std::make_unique<State>(in, table, options)) {}
SqlDumpParser::~SqlDumpParser() = default;
SqlDumpParser::SqlDumpParser(SqlDumpParser&&) noexcept = default;
SqlDumpParser& SqlDumpParser::operator=(SqlDumpParser&&) noexcept = default;

std::optional<DumpRow> SqlDumpParser::next() { return state_->next(); }

const ParseSummary& SqlDumpParser::summary() const { return state_->summary; }

ParseSummary parse_sql_table(std::istream& in, DumpTable table, const std::function<void(DumpRow&&)>& sink,
                             ParseOptions options) {
  SqlDumpParser parser(in, table, options);
  while (auto row = parser.next()) sink(std::move(*row));
  if (in.bad()) throw ParseError("I/O error while reading dump");
  return parser.summary();
}

namespace {

template <typename Row>
std::vector<Row> read_rows(std::istream& in, DumpTable table, ParseSummary* summary, ParseOptions options) {
  std::vector<Row> rows;
  auto s = parse_sql_table(in, table, [&](DumpRow&& r) { rows.push_back(std::get<Row>(std::move(r))); }, options);
  if (summary != nullptr) *summary = s;
  return rows;
}

}  // namespace

std::vector<PageRow> read_page_rows(std::istream& in, ParseSummary* summary, ParseOptions options) {
  return read_rows<PageRow>(in, DumpTable::kPage, summary, options);
}

std::vector<RedirectRow> read_redirect_rows(std::istream& in, ParseSummary* summary, ParseOptions options) {
  return read_rows<RedirectRow>(in, DumpTable::kRedirect, summary, options);
}

std::vector<LinkRow> read_link_rows(std::istream& in, ParseSummary* summary, ParseOptions options) {
  return read_rows<LinkRow>(in, DumpTable::kPageLinks, summary, options);
}

std::vector<CategoryLinkRow> read_category_link_rows(std::istream& in, ParseSummary* summary,
                                                     ParseOptions options) {
  return read_rows<CategoryLinkRow>(in, DumpTable::kCategoryLinks, summary, options);
}

ParseSummary parse_pagecounts(std::istream& in, Timestamp hour, const std::function<void(RawCount&&)>& sink,
                              const PagecountOptions& options) {
  require_hour_aligned(hour, "pagecount hour");
  ParseSummary summary;
  std::string line;
  std::uint64_t line_no = 0;
  auto malformed = [&](std::string_view why) {
    ++summary.skipped_malformed;
    if (options.strict) {
      throw ParseError("pagecounts line " + std::to_string(line_no) + ": " + std::string(why));
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string_view, 4> parts;
    std::size_t n = 0;
    std::string_view rest(line);
    for (;;) {
      const auto sp = rest.find(' ');
      if (n < parts.size()) parts[n] = rest.substr(0, sp);
      ++n;
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    if (n != 4 || parts[0].empty() || parts[1].empty()) {
      malformed("expected `project title count bytes`");
      continue;
    }
    if (parts[0] != options.project) {
      ++summary.skipped_project;
      continue;
    }
    std::uint64_t count = 0;
    const auto cnt = parts[2];
    auto [ptr, ec] = std::from_chars(cnt.data(), cnt.data() + cnt.size(), count);
    if (cnt.empty() || ec != std::errc{} || ptr != cnt.data() + cnt.size()) {
      malformed("count is not a non-negative integer");
      continue;
    }
    ++summary.emitted;
    sink(RawCount{std::string(parts[0]), std::string(parts[1]), hour, count});
  }
  if (in.bad()) throw ParseError("I/O error while reading pagecounts");
  return summary;
}

std::vector<RawCount> read_pagecounts(std::istream& in, Timestamp hour, ParseSummary* summary,
                                      const PagecountOptions& options) {
  std::vector<RawCount> out;
  auto s = parse_pagecounts(in, hour, [&](RawCount&& r) { out.push_back(std::move(r)); }, options);
  if (summary != nullptr) *summary = s;
  return out;
}

std::string sql_quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('\'');
  for (char c : text) {
    switch (c) {
      case '\0':
        out += "\\0";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\x1a':
        out += "\\Z";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\'':
        out += "\\'";
        break;
      case '"':
        out += "\\\"";
        break;
      default:
        out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

void write_insert_statement(std::ostream& out, DumpTable table, std::span<const DumpRow> rows) {
  if (rows.empty()) return;
  out << "INSERT INTO `" << table_name(table) << "` VALUES ";
  bool first = true;
  for (const auto& row : rows) {
    if (!first) out << ',';
    first = false;
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, PageRow>) {
            if (table != DumpTable::kPage) throw std::invalid_argument("row does not belong to table");
            out << '(' << r.page_id << ',' << r.namespace_id << ',' << sql_quote(r.title) << ','
                << (r.is_redirect ? 1 : 0) << ')';
          } else if constexpr (std::is_same_v<R, RedirectRow>) {
            if (table != DumpTable::kRedirect) throw std::invalid_argument("row does not belong to table");
            out << '(' << r.source_page_id << ',' << r.target_namespace << ',' << sql_quote(r.target_title) << ')';
          } else if constexpr (std::is_same_v<R, LinkRow>) {
            if (table != DumpTable::kPageLinks) throw std::invalid_argument("row does not belong to table");
            out << '(' << r.source_page_id << ',' << r.target_namespace << ',' << sql_quote(r.target_title) << ')';
          } else {
            if (table != DumpTable::kCategoryLinks) throw std::invalid_argument("row does not belong to table");
            out << '(' << r.source_page_id << ',' << sql_quote(r.target_category_title) << ')';
          }
        },
        row);
  }
  out << ";\n";
}

}  // namespace wikigraph
