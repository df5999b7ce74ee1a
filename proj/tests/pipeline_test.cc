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

#include "wikigraph/pipeline.h"

#include <gtest/gtest.h>

#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "synthetic.h"
#include "wikigraph/time_util.h"

namespace wikigraph {
namespace {

const std::filesystem::path kTiny = std::filesystem::path(WIKIGRAPH_FIXTURES) / "tinywiki";

DumpPaths tiny_paths() {
  return {kTiny / "page.sql", kTiny / "redirect.sql", kTiny / "pagelinks.sql", kTiny / "categorylinks.sql"};
}

std::vector<std::filesystem::path> tiny_counts() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(kTiny / "pagecounts")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

TEST(Pipeline, TinyWikiGraph) {
  const auto r = ingest_graph_files(tiny_paths());
  EXPECT_EQ(r.graph.counts(), (GraphCounts{3, 2, 5, 3}));
  EXPECT_EQ(r.report.counts, r.graph.counts());
  EXPECT_EQ(r.report.redirects_resolved, 1u);
  const std::vector<Edge> expect{{1, 3, EdgeKind::kLinksTo}, {1, 5, EdgeKind::kLinksTo}, {1, 6, EdgeKind::kBelongsTo},
                                 {3, 1, EdgeKind::kLinksTo}, {3, 2, EdgeKind::kBelongsTo}, {5, 1, EdgeKind::kLinksTo},
                                 {5, 3, EdgeKind::kLinksTo}, {6, 2, EdgeKind::kBelongsTo}};
  EXPECT_EQ(r.graph.edges(), expect);
  const nlohmann::json j = r.report;
  for (const char* key : {"parse", "duplicate_pages", "redirects", "discarded", "graph"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Pipeline, GzipInputMatchesPlain) {
  testing::TempDir dir;
  auto gz = [&](const std::filesystem::path& src) {
    const auto dst = dir / (src.filename().string() + ".gz");
    std::ofstream file(dst, std::ios::binary);
    boost::iostreams::filtering_ostream out;
    out.push(boost::iostreams::gzip_compressor());
    out.push(file);
    out << testing::read_text(src);
    return dst;
  };
  const auto p = tiny_paths();
  DumpPaths zipped{gz(p.page), gz(p.redirect), gz(p.pagelinks), gz(p.categorylinks)};
  EXPECT_EQ(ingest_graph_files(zipped).graph.id(), ingest_graph_files(p).graph.id());
}

TEST(Pipeline, MissingFile) {
  auto p = tiny_paths();
  p.page = kTiny / "nope.sql";
  EXPECT_THROW(ingest_graph_files(p), std::runtime_error);
}

TEST(Pipeline, EmptyDumpsGiveEmptyGraph) {
  std::istringstream a(""), b(""), c(""), d("");
  const auto r = ingest_graph(a, b, c, d);
  EXPECT_EQ(r.graph.node_count(), 0u);
}

TEST(Pipeline, TinyWikiCounts) {
  const auto graph = ingest_graph_files(tiny_paths()).graph;
  auto store = TimeSeriesStore::in_memory();
  const auto reports = ingest_pagecount_files(store, graph, tiny_counts());
  ASSERT_EQ(reports.size(), 1u);
  const auto& r = reports[0];
  EXPECT_EQ(r.day, *parse_date("2018-08-01"));
  EXPECT_EQ(r.files, 24u);
  EXPECT_EQ(r.parse.skipped_project, 24u);
  // Einstein 240, Physics 120, Quantum_mechanics 100 kept; Relativity 96 not
  EXPECT_EQ(r.ingest.pages_kept, 3u);
  EXPECT_EQ(r.ingest.records_stored, 24u + 24u + 2u);
  EXPECT_EQ(r.ingest.unresolved_titles, 1u);
  EXPECT_TRUE(store.query_range(3, start_of(r.day), start_of(r.day) + std::chrono::hours(24)).empty());
  const nlohmann::json j = r;
  EXPECT_EQ(j["day"], "2018-08-01");
}

TEST(Pipeline, BadCountFilename) {
  const auto graph = ingest_graph_files(tiny_paths()).graph;
  auto store = TimeSeriesStore::in_memory();
  EXPECT_THROW(ingest_pagecount_files(store, graph, {kTiny / "page.sql"}), ContractViolation);
}

}  // namespace
}  // namespace wikigraph
