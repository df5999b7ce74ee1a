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

#include <optional>
#include <string>
#include <string_view>

#include "wikigraph/types.h"

namespace wikigraph {

inline constexpr std::chrono::seconds kHour{3600};

bool is_hour_aligned(Timestamp t);
Day day_of(Timestamp t);
Timestamp start_of(Day d);

/// Throws ContractViolation unless `t` sits exactly on an hour boundary.
void require_hour_aligned(Timestamp t, std::string_view what);

Timestamp from_epoch_seconds(std::int64_t seconds);
std::int64_t to_epoch_seconds(Timestamp t);
std::int64_t to_epoch_days(Day d);
Day from_epoch_days(std::int64_t days);

/// "2018-08-01T13:00:00Z"
std::string format_iso8601(Timestamp t);
/// "2018-08-01"
std::string format_date(Day d);

/// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS]Z" (trailing Z optional).
std::optional<Timestamp> parse_iso8601(std::string_view text);
std::optional<Day> parse_date(std::string_view text);

/// Hour encoded in a `pagecounts-YYYYMMDD-HHMMSS[.gz]` (or `pageviews-`)
/// file name; any directory prefix is ignored. The time is floored to the
/// hour because the raw dumps occasionally carry a few seconds of skew.
std::optional<Timestamp> parse_pagecount_filename(std::string_view path);

/// True for "YYYY-MM" with a month in 1..12.
bool is_month_label(std::string_view label);

}  // namespace wikigraph
