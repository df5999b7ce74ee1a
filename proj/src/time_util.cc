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

#include "wikigraph/time_util.h"

#include <charconv>
#include <cstdio>
#include <filesystem>

namespace wikigraph {

namespace {

using std::chrono::days;
using std::chrono::floor;
using std::chrono::seconds;

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > text.size()) return false;
  const char* first = text.data() + pos;
  const char* last = first + len;
  for (const char* p = first; p != last; ++p) {
    if (*p < '0' || *p > '9') return false;
  }
  return std::from_chars(first, last, out).ec == std::errc{};
}

std::optional<Timestamp> make_time(int y, int mo, int d, int h, int mi, int s) {
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
  return Timestamp{std::chrono::sys_days{ymd}} + std::chrono::hours{h} + std::chrono::minutes{mi} + seconds{s};
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::kCategory ? "category" : "article";
}

std::string_view to_string(EdgeKind kind) {
  return kind == EdgeKind::kBelongsTo ? "belongs_to" : "links_to";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "article") return NodeKind::kArticle;
  if (text == "category") return NodeKind::kCategory;
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "links_to") return EdgeKind::kLinksTo;
  if (text == "belongs_to") return EdgeKind::kBelongsTo;
  return std::nullopt;
}

std::optional<NodeKind> kind_from_namespace(std::int32_t ns) {
  if (ns == kArticleNamespace) return NodeKind::kArticle;
  if (ns == kCategoryNamespace) return NodeKind::kCategory;
  return std::nullopt;
}

std::int32_t namespace_of(NodeKind kind) {
  return kind == NodeKind::kCategory ? kCategoryNamespace : kArticleNamespace;
}

bool is_hour_aligned(Timestamp t) { return t.time_since_epoch() % kHour == seconds{0}; }

Day day_of(Timestamp t) { return floor<days>(t); }

Timestamp start_of(Day d) { return Timestamp{d}; }

void require_hour_aligned(Timestamp t, std::string_view what) {
  if (!is_hour_aligned(t)) {
    throw ContractViolation(std::string(what) + " is not hour-aligned: " + format_iso8601(t));
  }
}

Timestamp from_epoch_seconds(std::int64_t s) { return Timestamp{seconds{s}}; }

std::int64_t to_epoch_seconds(Timestamp t) { return t.time_since_epoch().count(); }

std::int64_t to_epoch_days(Day d) { return d.time_since_epoch().count(); }

Day from_epoch_days(std::int64_t n) { return Day{days{n}}; }

std::string format_iso8601(Timestamp t) {
  const auto d = floor<days>(t);
  const std::chrono::year_month_day ymd{d};
  const std::chrono::hh_mm_ss hms{t - d};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

std::string format_date(Day d) {
  const std::chrono::year_month_day ymd{d};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!parse_fixed(text, 0, 4, y) || !parse_fixed(text, 5, 2, mo) || !parse_fixed(text, 8, 2, d)) return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1) return std::nullopt;
  if (text.size() == 10) return make_time(y, mo, d, 0, 0, 0);
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
  if (text.size() != 16 && text.size() != 19) return std::nullopt;
  if (text[13] != ':' || !parse_fixed(text, 11, 2, h) || !parse_fixed(text, 14, 2, mi)) return std::nullopt;
  if (text.size() == 19 && (text[16] != ':' || !parse_fixed(text, 17, 2, s))) return std::nullopt;
  return make_time(y, mo, d, h, mi, s);
}

std::optional<Day> parse_date(std::string_view text) {
  if (text.size() != 10) return std::nullopt;
  auto t = parse_iso8601(text);
  if (!t) return std::nullopt;
  return day_of(*t);
}

std::optional<Timestamp> parse_pagecount_filename(std::string_view path) {
  std::string name = std::filesystem::path(path).filename().string();
  std::string_view rest(name);
  for (std::string_view prefix : {"pagecounts-", "pageviews-"}) {
    if (rest.starts_with(prefix)) {
      rest.remove_prefix(prefix.size());
      break;
    }
  }
  if (rest.size() == name.size()) return std::nullopt;
  // YYYYMMDD-HHMMSS
  if (rest.size() < 15 || rest[8] != '-') return std::nullopt;
  std::string_view suffix = rest.substr(15);
  if (!suffix.empty() && suffix != ".gz") return std::nullopt;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!parse_fixed(rest, 0, 4, y) || !parse_fixed(rest, 4, 2, mo) || !parse_fixed(rest, 6, 2, d) ||
      !parse_fixed(rest, 9, 2, h) || !parse_fixed(rest, 11, 2, mi) || !parse_fixed(rest, 13, 2, s)) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1) return std::nullopt;
  auto t = make_time(y, mo, d, h, mi, s);
  if (!t) return std::nullopt;
  return floor<std::chrono::hours>(*t);
}

bool is_month_label(std::string_view label) {
  int y = 0, m = 0;
  return label.size() == 7 && label[4] == '-' && parse_fixed(label, 0, 4, y) && parse_fixed(label, 5, 2, m) &&
         m >= 1 && m <= 12;
}

}  // namespace wikigraph
