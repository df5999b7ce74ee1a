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

#include <fstream>

#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <nlohmann/json.hpp>

#include "wikigraph/time_util.h"

namespace fs = std::filesystem;
namespace io = boost::iostreams;

namespace wikigraph {
namespace {

// Owns the file so the filtering stream never outlives it.
class GzipInput : public io::filtering_istream {
 public:
  explicit GzipInput(const fs::path& path) : file_(path, std::ios::binary) {
    if (!file_) throw NotFoundError("cannot open " + path.string());
    push(io::gzip_decompressor());
    push(file_);
  }
  ~GzipInput() override { reset(); }

 private:
  std::ifstream file_;
};

}  // namespace

std::unique_ptr<std::istream> open_input(const fs::path& path) {
  if (path.extension() == ".gz") return std::make_unique<GzipInput>(path);
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw NotFoundError("cannot open " + path.string());
  return in;
}

void to_json(nlohmann::json& j, const GraphIngestReport& r) {
  j = nlohmann::json{{"parse",
                      {{"page", r.page},
                       {"redirect", r.redirect},
                       {"pagelinks", r.pagelinks},
                       {"categorylinks", r.categorylinks}}},
                     {"duplicate_pages", r.duplicate_pages},
                     {"redirects", {{"resolved", r.redirects_resolved},
                                    {"dropped", r.redirects_dropped},
                                    {"orphan_rows", r.orphan_redirect_rows}}},
                     {"discarded", r.discards},
                     {"graph", r.counts}};
}

GraphIngestResult ingest_graph(std::istream& page, std::istream& redirect, std::istream& pagelinks,
                               std::istream& categorylinks, const GraphIngestOptions& options) {
  GraphIngestReport report;
  PageIndex index(read_page_rows(page, &report.page, options.parse));
  const auto redirects = read_redirect_rows(redirect, &report.redirect, options.parse);
  const auto links = read_link_rows(pagelinks, &report.pagelinks, options.parse);
  const auto catlinks = read_category_link_rows(categorylinks, &report.categorylinks, options.parse);

  const auto map = build_redirect_map(index, redirects, options.redirects);
  auto resolved = resolve_links(links, catlinks, index, map);
  auto graph = GraphSnapshot::build(resolved_nodes(index), std::move(resolved.edges), options.label);

  report.duplicate_pages = index.duplicates();
  report.redirects_resolved = map.targets.size();
  report.redirects_dropped = map.dropped.size();
  report.orphan_redirect_rows = map.orphan_rows;
  report.discards = resolved.report;
  report.counts = graph.counts();
  return GraphIngestResult{std::move(graph), report};
}

GraphIngestResult ingest_graph_files(const DumpPaths& paths, const GraphIngestOptions& options) {
  auto page = open_input(paths.page);
  auto redirect = open_input(paths.redirect);
  auto pagelinks = open_input(paths.pagelinks);
  auto categorylinks = open_input(paths.categorylinks);
  return ingest_graph(*page, *redirect, *pagelinks, *categorylinks, options);
}

void to_json(nlohmann::json& j, const DayIngestReport& r) {
  j = nlohmann::json{{"day", format_date(r.day)}, {"files", r.files}, {"parse", r.parse}, {"ingest", r.ingest}};
}

std::vector<DayIngestReport> ingest_pagecount_files(TimeSeriesStore& store, const GraphSnapshot& graph,
                                                    const std::vector<fs::path>& files,
                                                    const CountIngestOptions& options) {
  std::map<Day, std::vector<std::pair<Timestamp, fs::path>>> by_day;
  for (const auto& f : files) {
    const auto hour = parse_pagecount_filename(f.filename().string());
    if (!hour) throw ContractViolation("not a pagecount file name: " + f.filename().string());
    by_day[day_of(*hour)].emplace_back(*hour, f);
  }
  std::vector<DayIngestReport> reports;
  for (auto& [day, hour_files] : by_day) {
    std::sort(hour_files.begin(), hour_files.end());
    DayIngestReport r;
    r.day = day;
    r.files = hour_files.size();
    std::vector<RawCount> counts;
    for (const auto& [hour, path] : hour_files) {
      auto in = open_input(path);
      ParseSummary s;
      auto rows = read_pagecounts(*in, hour, &s, options.parse);
      counts.insert(counts.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
      r.parse.emitted += s.emitted;
      r.parse.skipped_namespace += s.skipped_namespace;
      r.parse.skipped_malformed += s.skipped_malformed;
      r.parse.skipped_project += s.skipped_project;
    }
    r.ingest = store.ingest_day(day, counts, graph, options.policy);
    reports.push_back(r);
  }
  return reports;
}

}  // namespace wikigraph
