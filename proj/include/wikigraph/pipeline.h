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

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/dump_parser.h"
#include "wikigraph/graph_store.h"
#include "wikigraph/redirect_resolver.h"
#include "wikigraph/timeseries_store.h"

namespace wikigraph {

/// Opens a file for reading, decompressing it when the name ends in ".gz".
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

struct GraphIngestOptions {
  ParseOptions parse;
  RedirectOptions redirects;
  std::string label;
};

struct GraphIngestReport {
  ParseSummary page;
  ParseSummary redirect;
  ParseSummary pagelinks;
  ParseSummary categorylinks;
  std::uint64_t duplicate_pages = 0;
  std::uint64_t redirects_resolved = 0;
  std::uint64_t redirects_dropped = 0;
  std::uint64_t orphan_redirect_rows = 0;
  DiscardReport discards;
  GraphCounts counts;
};

void to_json(nlohmann::json& j, const GraphIngestReport& r);

struct GraphIngestResult {
  GraphSnapshot graph;
  GraphIngestReport report;
};

/// Parses the four dump tables, resolves redirects and builds the graph.
GraphIngestResult ingest_graph(std::istream& page, std::istream& redirect, std::istream& pagelinks,
                               std::istream& categorylinks, const GraphIngestOptions& options = {});

struct DumpPaths {
  std::filesystem::path page;
  std::filesystem::path redirect;
  std::filesystem::path pagelinks;
  std::filesystem::path categorylinks;
};

GraphIngestResult ingest_graph_files(const DumpPaths& paths, const GraphIngestOptions& options = {});

struct CountIngestOptions {
  PagecountOptions parse;
  DailyThresholdPolicy policy;
};

struct DayIngestReport {
  Day day{};
  std::uint64_t files = 0;
  ParseSummary parse;
  IngestSummary ingest;
};

void to_json(nlohmann::json& j, const DayIngestReport& r);

/// Groups hourly pagecount files by the UTC day in their names and ingests
/// each day into `store`. Every day present must have all its files in
/// `files`; a day is replaced as a whole per page.
std::vector<DayIngestReport> ingest_pagecount_files(TimeSeriesStore& store, const GraphSnapshot& graph,
                                                    const std::vector<std::filesystem::path>& files,
                                                    const CountIngestOptions& options = {});

}  // namespace wikigraph
