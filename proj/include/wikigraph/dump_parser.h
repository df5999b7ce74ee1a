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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/types.h"

namespace wikigraph {

struct PageRow {
  PageId page_id = 0;
  std::int32_t namespace_id = 0;
  std::string title;
  bool is_redirect = false;

  friend bool operator==(const PageRow&, const PageRow&) = default;
};

struct RedirectRow {
  PageId source_page_id = 0;
  std::int32_t target_namespace = 0;
  std::string target_title;

  friend bool operator==(const RedirectRow&, const RedirectRow&) = default;
};

struct LinkRow {
  PageId source_page_id = 0;
  std::int32_t target_namespace = 0;
  std::string target_title;

  friend bool operator==(const LinkRow&, const LinkRow&) = default;
};

/// Target is always a title in the category namespace.
struct CategoryLinkRow {
  PageId source_page_id = 0;
  std::string target_category_title;

  friend bool operator==(const CategoryLinkRow&, const CategoryLinkRow&) = default;
};

struct RawCount {
  std::string project;
  std::string title;
  Timestamp hour{};
  std::uint64_t count = 0;

  friend bool operator==(const RawCount&, const RawCount&) = default;
};

enum class DumpTable { kPage, kRedirect, kPageLinks, kCategoryLinks };

std::string_view table_name(DumpTable table);
std::optional<DumpTable> parse_table_name(std::string_view name);

using DumpRow = std::variant<PageRow, RedirectRow, LinkRow, CategoryLinkRow>;

struct ParseSummary {
  std::uint64_t emitted = 0;
  std::uint64_t skipped_namespace = 0;
  std::uint64_t skipped_malformed = 0;
  std::uint64_t skipped_project = 0;

  std::uint64_t total() const { return emitted + skipped_namespace + skipped_malformed + skipped_project; }
  friend bool operator==(const ParseSummary&, const ParseSummary&) = default;
};

void to_json(nlohmann::json& j, const ParseSummary& s);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOptions {
  /// Any malformed tuple or line becomes a fatal ParseError.
  bool strict = false;
};

/// Pull parser over `INSERT INTO <table> VALUES (...),(...);` statements.
///
/// Reads one character at a time from the stream and never holds more than
/// the tuple being decoded, so memory does not grow with file size.
/// Statements for other tables, DDL, and comments are skipped. When the
/// stream carries a `CREATE TABLE` for the target table (as real dumps do),
/// column positions are taken from it; otherwise the positional layout
/// page(page_id, page_namespace, page_title, page_is_redirect),
/// redirect(rd_from, rd_namespace, rd_title), pagelinks(pl_from,
/// pl_namespace, pl_title), categorylinks(cl_from, cl_to) is assumed.
class SqlDumpParser {
 public:
  SqlDumpParser(std::istream& in, DumpTable table, ParseOptions options = {});
  ~SqlDumpParser();
  SqlDumpParser(SqlDumpParser&&) noexcept;
  SqlDumpParser& operator=(SqlDumpParser&&) noexcept;

  /// Next typed row in file order, or nullopt at end of stream.
  std::optional<DumpRow> next();

  const ParseSummary& summary() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Drives an SqlDumpParser to completion, handing each row to `sink`.
ParseSummary parse_sql_table(std::istream& in, DumpTable table, const std::function<void(DumpRow&&)>& sink,
                             ParseOptions options = {});

std::vector<PageRow> read_page_rows(std::istream& in, ParseSummary* summary = nullptr, ParseOptions options = {});
std::vector<RedirectRow> read_redirect_rows(std::istream& in, ParseSummary* summary = nullptr,
                                            ParseOptions options = {});
std::vector<LinkRow> read_link_rows(std::istream& in, ParseSummary* summary = nullptr, ParseOptions options = {});
std::vector<CategoryLinkRow> read_category_link_rows(std::istream& in, ParseSummary* summary = nullptr,
                                                     ParseOptions options = {});

struct PagecountOptions {
  std::string project = "en";
  bool strict = false;
};

/// Parses `<project> <title> <count> <bytes>` lines for one hour. `hour`
/// must be hour-aligned (ContractViolation otherwise). The bytes column is
/// discarded; lines for other projects are counted as skipped_project.
ParseSummary parse_pagecounts(std::istream& in, Timestamp hour, const std::function<void(RawCount&&)>& sink,
                              const PagecountOptions& options = {});

std::vector<RawCount> read_pagecounts(std::istream& in, Timestamp hour, ParseSummary* summary = nullptr,
                                      const PagecountOptions& options = {});

/// Single-quoted SQL literal with MySQL backslash escaping.
std::string sql_quote(std::string_view text);

/// Writes rows as one `INSERT INTO \`table\` VALUES ...;` statement in the
/// positional layout above. Every row must match `table`. Writes nothing
/// for an empty span.
void write_insert_statement(std::ostream& out, DumpTable table, std::span<const DumpRow> rows);

}  // namespace wikigraph
