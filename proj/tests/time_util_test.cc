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

#include <gtest/gtest.h>

namespace wikigraph {
namespace {

TEST(TimeUtil, FormatsAndParsesIso8601) {
  const auto t = parse_iso8601("2018-08-01T13:00:00Z");
  ASSERT_TRUE(t);
  EXPECT_EQ(format_iso8601(*t), "2018-08-01T13:00:00Z");
  EXPECT_EQ(parse_iso8601("2018-08-01T13:00"), t);
  EXPECT_EQ(parse_iso8601("2018-08-01T13:00:00"), t);
  EXPECT_EQ(format_iso8601(*parse_iso8601("2018-08-01")), "2018-08-01T00:00:00Z");
  EXPECT_FALSE(parse_iso8601("2018-13-01"));
  EXPECT_FALSE(parse_iso8601("2018-02-30"));
  EXPECT_FALSE(parse_iso8601("2018-08-01T25:00Z"));
  EXPECT_FALSE(parse_iso8601("yesterday"));
}

TEST(TimeUtil, HourAlignment) {
  const auto t = *parse_iso8601("2018-08-01T13:00:00Z");
  EXPECT_TRUE(is_hour_aligned(t));
  EXPECT_FALSE(is_hour_aligned(t + std::chrono::seconds(1)));
  EXPECT_NO_THROW(require_hour_aligned(t, "hour"));
  EXPECT_THROW(require_hour_aligned(t + std::chrono::minutes(30), "hour"), ContractViolation);
}

TEST(TimeUtil, DayHelpers) {
  const auto t = *parse_iso8601("2018-08-01T23:00:00Z");
  EXPECT_EQ(format_date(day_of(t)), "2018-08-01");
  EXPECT_EQ(format_iso8601(start_of(day_of(t))), "2018-08-01T00:00:00Z");
  EXPECT_EQ(parse_date("2018-08-01"), day_of(t));
  EXPECT_FALSE(parse_date("2018-08-01T00:00"));
  EXPECT_EQ(from_epoch_days(to_epoch_days(day_of(t))), day_of(t));
  EXPECT_EQ(from_epoch_seconds(to_epoch_seconds(t)), t);
}

TEST(TimeUtil, PagecountFilenames) {
  EXPECT_EQ(parse_pagecount_filename("pagecounts-20180801-130000"), parse_iso8601("2018-08-01T13:00Z"));
  EXPECT_EQ(parse_pagecount_filename("/data/pagecounts-20180801-130000.gz"), parse_iso8601("2018-08-01T13:00Z"));
  EXPECT_EQ(parse_pagecount_filename("pageviews-20180801-000000"), parse_iso8601("2018-08-01T00:00Z"));
  // skewed seconds floor to the hour
  EXPECT_EQ(parse_pagecount_filename("pagecounts-20180801-130012"), parse_iso8601("2018-08-01T13:00Z"));
  EXPECT_FALSE(parse_pagecount_filename("pagecounts-2018081-130000"));
  EXPECT_FALSE(parse_pagecount_filename("counts-20180801-130000"));
  EXPECT_FALSE(parse_pagecount_filename("pagecounts-20180801-130000.bz2"));
}

TEST(TimeUtil, MonthLabels) {
  EXPECT_TRUE(is_month_label("2018-08"));
  EXPECT_FALSE(is_month_label("2018-13"));
  EXPECT_FALSE(is_month_label("2018-8"));
  EXPECT_FALSE(is_month_label("2018-08-01"));
}

TEST(Types, KindStrings) {
  EXPECT_EQ(to_string(NodeKind::kArticle), "article");
  EXPECT_EQ(to_string(EdgeKind::kBelongsTo), "belongs_to");
  EXPECT_EQ(parse_edge_kind("links_to"), EdgeKind::kLinksTo);
  EXPECT_EQ(parse_node_kind("category"), NodeKind::kCategory);
  EXPECT_FALSE(parse_node_kind("talk"));
  EXPECT_EQ(kind_from_namespace(14), NodeKind::kCategory);
  EXPECT_FALSE(kind_from_namespace(2));
}

}  // namespace
}  // namespace wikigraph
