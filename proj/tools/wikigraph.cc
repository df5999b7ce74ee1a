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

// wikigraph: ingest Wikipedia dumps and pagecounts, query the graph.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wikigraph/binary_io.h"
#include "wikigraph/export.h"
#include "wikigraph/pipeline.h"
#include "wikigraph/query_engine.h"
#include "wikigraph/time_util.h"
#include "wikigraph/updater.h"

namespace fs = std::filesystem;
using namespace wikigraph;

namespace {

constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string data_dir = "wikigraph-data";
  std::string project = "en";
  std::uint64_t daily_threshold = 100;
  std::uint64_t node_ceiling = 1'000'000;
  bool strict = false;
};

struct DumpArgs {
  std::string page, redirect, pagelinks, categorylinks;
  unsigned hop_bound = 16;
};

void add_dump_options(CLI::App* cmd, DumpArgs& a) {
  cmd->add_option("--page", a.page, "page table dump (.sql or .sql.gz)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--redirect", a.redirect, "redirect table dump")->required()->check(CLI::ExistingFile);
  cmd->add_option("--pagelinks", a.pagelinks, "pagelinks table dump")->required()->check(CLI::ExistingFile);
  cmd->add_option("--categorylinks", a.categorylinks, "categorylinks table dump")->required()->check(CLI::ExistingFile);
  cmd->add_option("--hop-bound", a.hop_bound, "maximum redirect chain length")->capture_default_str();
}

GraphIngestResult build_from(const DumpArgs& a, const Globals& g, std::string label = {}) {
  GraphIngestOptions opts;
  opts.parse.strict = g.strict;
  opts.redirects.hop_bound = a.hop_bound;
  opts.label = std::move(label);
  return ingest_graph_files(DumpPaths{a.page, a.redirect, a.pagelinks, a.categorylinks}, opts);
}

void print_json(const nlohmann::json& j, std::ostream& out = std::cout) { out << j.dump(2) << '\n'; }

Timestamp parse_hour(const std::string& text, const char* flag) {
  auto t = parse_iso8601(text);
  if (!t) throw UsageError(std::string(flag) + ": not an ISO-8601 time: " + text);
  if (!is_hour_aligned(*t)) throw UsageError(std::string(flag) + ": must be on an hour boundary: " + text);
  return *t;
}

// Resolves a user-supplied title ("Albert Einstein", "Category:Physics") to
// a node of the wanted kind.
PageId resolve_root(const GraphSnapshot& graph, std::string title, NodeKind want) {
  std::replace(title.begin(), title.end(), ' ', '_');
  constexpr std::string_view kPrefix = "Category:";
  if (title.starts_with(kPrefix)) title.erase(0, kPrefix.size());
  if (auto n = graph.lookup(want, title)) return n->id;
  const NodeKind other = want == NodeKind::kArticle ? NodeKind::kCategory : NodeKind::kArticle;
  std::string msg = "no " + std::string(to_string(want)) + " titled '" + title + "'";
  if (graph.lookup(other, title)) {
    msg += "; there is a " + std::string(to_string(other)) + " with that title (" +
           (want == NodeKind::kCategory ? "neighborhood queries take articles" : "category queries take categories") +
           ")";
  }
  throw NotFoundError(msg);
}

struct QueryArgs {
  std::string kind;
  std::string root;
  std::string depth;
  std::optional<std::uint64_t> max_out_degree;
  std::optional<std::uint64_t> visits_threshold;
  std::string from, to;
  std::string format = "json";
  std::string out;
  std::string label;
};

int run_query(const QueryArgs& q, const Globals& g) {
  auto format = parse_export_format(q.format);
  if (!format) throw UsageError("unsupported --format " + q.format + " (csv, json, graphml)");
  const bool timed = !q.from.empty() || !q.to.empty();
  if (timed && (q.from.empty() || q.to.empty())) throw UsageError("--from and --to go together");
  if (q.visits_threshold && !timed) throw UsageError("--visits-threshold needs --from and --to");

  const auto started = std::chrono::steady_clock::now();
  Workspace ws(g.data_dir);
  std::optional<GraphSnapshot> graph;
  std::optional<TimeSeriesStore> series;
  if (!q.label.empty()) {
    auto bundle = ws.registry().open(q.label);
    graph.emplace(std::move(bundle.graph));
    series.emplace(std::move(bundle.series));
  } else {
    graph.emplace(ws.load_graph());
    if (ws.has_timeseries()) series.emplace(ws.open_timeseries());
  }
  if (timed && !series) throw UsageError("--from/--to need ingested pagecounts; run ingest-counts first");

  QueryEngine engine(*graph, series ? &*series : nullptr, QueryLimits{g.node_ceiling});
  Subgraph sub;
  if (q.kind == "category") {
    DepthSpec depth = DepthSpec::unlimited();
    if (!q.depth.empty() && q.depth != "unlimited") {
      try {
        depth = DepthSpec::of(static_cast<std::uint32_t>(std::stoul(q.depth)));
      } catch (const std::logic_error&) {
        throw UsageError("--depth must be a number or 'unlimited'");
      }
    }
    sub = engine.category_closure(resolve_root(*graph, q.root, NodeKind::kCategory), depth);
  } else {
    std::uint32_t depth = 1;
    if (!q.depth.empty()) {
      try {
        depth = static_cast<std::uint32_t>(std::stoul(q.depth));
      } catch (const std::logic_error&) {
        throw UsageError("neighborhood --depth must be a positive number");
      }
    }
    sub = engine.neighborhood(resolve_root(*graph, q.root, NodeKind::kArticle), depth, q.max_out_degree);
  }
  if (timed) {
    const auto from = parse_hour(q.from, "--from");
    const auto to = parse_hour(q.to, "--to");
    if (to < from) throw UsageError("--to is before --from");
    if (q.visits_threshold) sub = engine.filter_by_visits(sub, *q.visits_threshold, from, to);
    sub = engine.attach_series(sub, from, to);
  }

  auto stats = stats_to_json(sub);
  stats["depth"] = q.depth.empty() ? (q.kind == "category" ? "unlimited" : "1") : q.depth;
  stats["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  if (!q.out.empty()) {
    write_file_atomic(q.out, export_subgraph(sub, *format));
    print_json(stats);
  } else {
    export_subgraph(sub, *format, std::cout);
    print_json(stats, std::cerr);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wikipedia link/category graph with hourly visit counts"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir, "workspace directory")->envname("WIKIGRAPH_DATA_DIR")->capture_default_str();
  app.add_option("--project", g.project, "pagecount project code to keep")->envname("WIKIGRAPH_PROJECT")->capture_default_str();
  app.add_option("--daily-threshold", g.daily_threshold, "minimum daily visits for a page's hours to be kept")
      ->envname("WIKIGRAPH_DAILY_THRESHOLD")
      ->capture_default_str();
  app.add_option("--node-ceiling", g.node_ceiling, "abort queries that collect more nodes")
      ->envname("WIKIGRAPH_NODE_CEILING")
      ->capture_default_str();
  app.add_flag("--strict", g.strict, "treat malformed input rows as fatal")->envname("WIKIGRAPH_STRICT");

  DumpArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest-graph", "parse dumps and build the current graph");
  add_dump_options(ingest, ingest_args);

  std::vector<std::string> count_files;
  auto* counts = app.add_subcommand("ingest-counts", "ingest hourly pagecount files");
  counts->add_option("files", count_files, "pagecounts-YYYYMMDD-HHMMSS[.gz] files")->required()->check(CLI::ExistingFile);

  QueryArgs q;
  auto* query = app.add_subcommand("query", "extract a subgraph");
  query->add_option("kind", q.kind, "category or neighborhood")->required()->check(CLI::IsMember({"category", "neighborhood"}));
  query->add_option("title", q.root, "root title")->required();
  query->add_option("--depth", q.depth, "hop bound; category default unlimited, neighborhood default 1");
  query->add_option("--max-out-degree", q.max_out_degree, "do not expand nodes with more out-links");
  query->add_option("--visits-threshold", q.visits_threshold, "keep nodes with more visits in [from, to)");
  query->add_option("--from", q.from, "start hour, ISO-8601 UTC");
  query->add_option("--to", q.to, "end hour (exclusive)");
  query->add_option("--format", q.format, "csv, json or graphml")->capture_default_str();
  query->add_option("--out", q.out, "write the export here instead of stdout");
  query->add_option("--label", q.label, "query a frozen snapshot");

  DumpArgs update_args;
  std::string delta_out;
  auto* update = app.add_subcommand("update", "replace the current graph with newer dumps via a delta");
  add_dump_options(update, update_args);
  update->add_option("--delta-out", delta_out, "write the full delta as JSON");

  std::string freeze_label;
  auto* freeze = app.add_subcommand("freeze", "freeze the current graph and time series under a label");
  freeze->add_option("--label", freeze_label, "YYYY-MM")->required();

  std::string stats_label;
  auto* stats = app.add_subcommand("stats", "summarise the workspace");
  stats->add_option("--label", stats_label, "describe a frozen snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Workspace ws(g.data_dir);
    if (*ingest) {
      auto result = build_from(ingest_args, g);
      ws.save_graph(result.graph);
      nlohmann::json j = result.report;
      j["snapshot"] = result.graph.id();
      print_json(j);
    } else if (*counts) {
      auto graph = ws.load_graph();
      auto store = ws.open_timeseries();
      CountIngestOptions opts;
      opts.parse.project = g.project;
      opts.parse.strict = g.strict;
      opts.policy.threshold = g.daily_threshold;
      std::vector<fs::path> files(count_files.begin(), count_files.end());
      print_json(nlohmann::json{{"days", ingest_pagecount_files(store, graph, files, opts)},
                                {"records", store.record_count()}});
    } else if (*query) {
      return run_query(q, g);
    } else if (*update) {
      auto old_graph = ws.load_graph();
      auto fresh = build_from(update_args, g);
      const auto delta = diff_graphs(old_graph, fresh.graph);
      auto next = apply_delta(old_graph, delta, old_graph.id().label);
      ws.save_graph(next);
      if (!delta_out.empty()) write_file_atomic(delta_out, nlohmann::json(delta).dump(2) + "\n");
      print_json(nlohmann::json{{"delta", delta_summary(delta)}, {"snapshot", next.id()}, {"ingest", fresh.report}});
    } else if (*freeze) {
      auto graph = ws.load_graph();
      auto store = ws.open_timeseries();
      print_json(ws.registry().freeze(graph, store, freeze_label));
    } else if (*stats) {
      nlohmann::json j;
      if (!stats_label.empty()) {
        auto entry = ws.registry().find(stats_label);
        if (!entry) throw NotFoundError("no frozen snapshot labelled " + stats_label);
        j = *entry;
      } else {
        if (ws.has_graph()) {
          auto graph = ws.load_graph();
          j["graph"] = {{"snapshot", graph.id()}, {"counts", graph.counts()}};
        }
        if (ws.has_timeseries()) {
          auto store = ws.open_timeseries();
          auto days = nlohmann::json::array();
          for (Day d : store.days()) days.push_back(format_date(d));
          j["timeseries"] = {{"days", days}, {"records", store.record_count()}};
        }
        auto frozen = nlohmann::json::array();
        for (const auto& e : ws.registry().list()) frozen.push_back(e.label);
        j["frozen"] = frozen;
      }
      print_json(j);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
