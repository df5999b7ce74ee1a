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

#include "wikigraph/updater.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "wikigraph/binary_io.h"
#include "wikigraph/time_util.h"

namespace fs = std::filesystem;

namespace wikigraph {
namespace {

constexpr const char* kIndexFile = "index.json";
constexpr const char* kGraphFile = "graph.wgs";
constexpr const char* kSeriesFile = "timeseries.json";

nlohmann::json node_json(const Node& n) {
  return nlohmann::json{{"id", n.id}, {"title", n.title}, {"kind", to_string(n.kind)}};
}

Node node_from_json(const nlohmann::json& j) {
  auto kind = parse_node_kind(j.at("kind").get<std::string>());
  if (!kind) throw FormatError("delta: unknown node kind");
  return Node{j.at("id").get<PageId>(), j.at("title").get<std::string>(), *kind};
}

nlohmann::json edges_json(const std::vector<Edge>& edges) {
  auto arr = nlohmann::json::array();
  for (const auto& e : edges) arr.push_back(nlohmann::json::array({e.source, e.target, to_string(e.kind)}));
  return arr;
}

std::vector<Edge> edges_from_json(const nlohmann::json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) {
    auto kind = parse_edge_kind(e.at(2).get<std::string>());
    if (!kind) throw FormatError("delta: unknown edge kind");
    out.push_back(Edge{e.at(0).get<PageId>(), e.at(1).get<PageId>(), *kind});
  }
  return out;
}

std::string describe(const Edge& e) {
  return std::to_string(e.source) + "->" + std::to_string(e.target) + " (" + std::string(to_string(e.kind)) + ")";
}

std::string now_iso8601() {
  return format_iso8601(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::string bundle_hash(const GraphSnapshot& graph, const TimeSeriesManifest& manifest) {
  Sha256 h;
  h.update(std::string_view("wikigraph-bundle-v1"));
  h.update(std::string_view(graph.id().content_hash));
  h.update(std::string_view(manifest.content_hash()));
  return h.hex_digest();
}

}  // namespace

void to_json(nlohmann::json& j, const GraphDelta& d) {
  auto added = nlohmann::json::array();
  for (const auto& n : d.nodes_added) added.push_back(node_json(n));
  j = nlohmann::json{{"nodes_added", added},
                     {"nodes_removed", d.nodes_removed},
                     {"edges_added", edges_json(d.edges_added)},
                     {"edges_removed", edges_json(d.edges_removed)}};
}

void from_json(const nlohmann::json& j, GraphDelta& d) {
  d = GraphDelta{};
  for (const auto& n : j.at("nodes_added")) d.nodes_added.push_back(node_from_json(n));
  d.nodes_removed = j.at("nodes_removed").get<std::vector<PageId>>();
  d.edges_added = edges_from_json(j.at("edges_added"));
  d.edges_removed = edges_from_json(j.at("edges_removed"));
}

nlohmann::json delta_summary(const GraphDelta& d) {
  return nlohmann::json{{"nodes_added", d.nodes_added.size()},
                        {"nodes_removed", d.nodes_removed.size()},
                        {"edges_added", d.edges_added.size()},
                        {"edges_removed", d.edges_removed.size()}};
}

GraphDelta diff_graphs(const GraphSnapshot& old_graph, const GraphSnapshot& new_graph) {
  GraphDelta d;
  const auto old_nodes = old_graph.nodes();
  const auto new_nodes = new_graph.nodes();
  // both ascending by id: merge
  std::size_t i = 0, j = 0;
  while (i < old_nodes.size() || j < new_nodes.size()) {
    if (j == new_nodes.size() || (i < old_nodes.size() && old_nodes[i].id < new_nodes[j].id)) {
      d.nodes_removed.push_back(old_nodes[i++].id);
    } else if (i == old_nodes.size() || new_nodes[j].id < old_nodes[i].id) {
      d.nodes_added.push_back(new_nodes[j++]);
    } else {
      if (!(old_nodes[i] == new_nodes[j])) {
        d.nodes_removed.push_back(old_nodes[i].id);
        d.nodes_added.push_back(new_nodes[j]);
      }
      ++i;
      ++j;
    }
  }
  const auto old_edges = old_graph.edges();
  const auto new_edges = new_graph.edges();
  std::set_difference(new_edges.begin(), new_edges.end(), old_edges.begin(), old_edges.end(),
                      std::back_inserter(d.edges_added));
  std::set_difference(old_edges.begin(), old_edges.end(), new_edges.begin(), new_edges.end(),
                      std::back_inserter(d.edges_removed));
  return d;
}

DeltaValidationError::DeltaValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string msg = "delta rejected (" + std::to_string(violations.size()) + " violation" +
                          (violations.size() == 1 ? "" : "s") + ")";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

GraphSnapshot apply_delta(const GraphSnapshot& old_graph, const GraphDelta& delta, std::string label) {
  std::vector<std::string> violations;

  std::unordered_set<PageId> removed;
  for (PageId id : delta.nodes_removed) {
    if (!removed.insert(id).second) violations.push_back("node " + std::to_string(id) + " removed twice");
    if (!old_graph.contains(id)) violations.push_back("removed node " + std::to_string(id) + " is not present");
  }
  std::unordered_set<PageId> added;
  for (const auto& n : delta.nodes_added) {
    if (!added.insert(n.id).second) violations.push_back("node " + std::to_string(n.id) + " added twice");
    if (old_graph.contains(n.id) && !removed.contains(n.id)) {
      violations.push_back("added node " + std::to_string(n.id) + " is already present");
    }
  }

  std::set<Edge> edges_removed;
  for (const auto& e : delta.edges_removed) {
    if (!edges_removed.insert(e).second) violations.push_back("edge " + describe(e) + " removed twice");
    const auto s = old_graph.index_of(e.source);
    bool present = false;
    if (s && old_graph.contains(e.target)) {
      const auto nb = old_graph.adjacent(*s, e.kind, Direction::kOut);
      present = std::binary_search(nb.begin(), nb.end(), *old_graph.index_of(e.target));
    }
    if (!present) violations.push_back("removed edge " + describe(e) + " is not present");
  }

  std::vector<Node> nodes;
  for (auto& n : old_graph.nodes()) {
    if (!removed.contains(n.id)) nodes.push_back(std::move(n));
  }
  nodes.insert(nodes.end(), delta.nodes_added.begin(), delta.nodes_added.end());
  std::unordered_map<PageId, NodeKind> kinds;
  for (const auto& n : nodes) kinds.emplace(n.id, n.kind);

  std::vector<Edge> edges;
  old_graph.for_each_edge(EdgeKind::kLinksTo, [&](PageId s, PageId t) {
    if (!edges_removed.contains(Edge{s, t, EdgeKind::kLinksTo})) edges.push_back(Edge{s, t, EdgeKind::kLinksTo});
  });
  old_graph.for_each_edge(EdgeKind::kBelongsTo, [&](PageId s, PageId t) {
    if (!edges_removed.contains(Edge{s, t, EdgeKind::kBelongsTo})) edges.push_back(Edge{s, t, EdgeKind::kBelongsTo});
  });
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    if (!kinds.contains(e.source) || !kinds.contains(e.target)) {
      violations.push_back("edge " + describe(e) + " would dangle after node removal");
    }
  }
  std::set<Edge> seen_added;
  const std::size_t kept = edges.size();
  for (const auto& e : delta.edges_added) {
    if (!seen_added.insert(e).second) {
      violations.push_back("edge " + describe(e) + " added twice");
      continue;
    }
    if (std::binary_search(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(kept), e)) {
      violations.push_back("added edge " + describe(e) + " is already present");
    }
    const auto sk = kinds.find(e.source);
    const auto tk = kinds.find(e.target);
    if (sk == kinds.end() || tk == kinds.end()) {
      violations.push_back("added edge " + describe(e) + " has a missing endpoint");
      continue;
    }
    const bool ok = e.kind == EdgeKind::kLinksTo
                        ? sk->second == NodeKind::kArticle && tk->second == NodeKind::kArticle
                        : tk->second == NodeKind::kCategory;
    if (!ok) violations.push_back("added edge " + describe(e) + " violates edge-kind rules");
    edges.push_back(e);
  }
  if (!violations.empty()) throw DeltaValidationError(std::move(violations));

  try {
    return GraphSnapshot::build(std::move(nodes), std::move(edges), std::move(label));
  } catch (const GraphBuildError& e) {
    throw DeltaValidationError({e.what()});
  }
}

IngestSummary append_day(TimeSeriesStore& store, Day day, std::span<const HourlyVisit> visits,
                         DailyThresholdPolicy policy) {
  return store.ingest_day(day, visits, policy);
}

void to_json(nlohmann::json& j, const FrozenEntry& e) {
  auto days = nlohmann::json::array();
  for (Day d : e.ts_day_coverage) days.push_back(format_date(d));
  j = nlohmann::json{{"label", e.label},
                     {"content_hash", e.content_hash},
                     {"created_at", e.created_at},
                     {"graph_counts", e.graph_counts},
                     {"ts_day_coverage", days}};
}

void from_json(const nlohmann::json& j, FrozenEntry& e) {
  e.label = j.at("label").get<std::string>();
  e.content_hash = j.at("content_hash").get<std::string>();
  e.created_at = j.at("created_at").get<std::string>();
  const auto& c = j.at("graph_counts");
  e.graph_counts = GraphCounts{c.at("articles").get<std::uint64_t>(), c.at("categories").get<std::uint64_t>(),
                               c.at("links_to").get<std::uint64_t>(), c.at("belongs_to").get<std::uint64_t>()};
  e.ts_day_coverage.clear();
  for (const auto& d : j.at("ts_day_coverage")) {
    auto day = parse_date(d.get<std::string>());
    if (!day) throw FormatError("snapshot index: bad day " + d.get<std::string>());
    e.ts_day_coverage.push_back(*day);
  }
}

SnapshotRegistry::SnapshotRegistry(fs::path dir) : dir_(std::move(dir)) {}

std::vector<FrozenEntry> SnapshotRegistry::list() const {
  const auto path = dir_ / kIndexFile;
  if (!fs::exists(path)) return {};
  const auto bytes = read_file_bytes(path);
  try {
    return nlohmann::json::parse(bytes.begin(), bytes.end()).at("snapshots").get<std::vector<FrozenEntry>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("snapshot index is unreadable: ") + e.what());
  }
}

std::optional<FrozenEntry> SnapshotRegistry::find(std::string_view label) const {
  for (auto& e : list()) {
    if (e.label == label) return std::move(e);
  }
  return std::nullopt;
}

void SnapshotRegistry::write_index(const std::vector<FrozenEntry>& entries) const {
  nlohmann::json j{{"format", 1}, {"snapshots", entries}};
  write_file_atomic(dir_ / kIndexFile, j.dump(2) + "\n");
}

FrozenEntry SnapshotRegistry::freeze(const GraphSnapshot& graph, const TimeSeriesStore& store, std::string_view label) {
  if (!is_month_label(label)) throw ContractViolation("snapshot label must look like YYYY-MM, got '" + std::string(label) + "'");
  if (!store.directory()) throw ContractViolation("only a directory-backed time-series store can be frozen");
  auto entries = list();
  const fs::path final_dir = dir_ / std::string(label);
  for (const auto& e : entries) {
    if (e.label == label) throw DuplicateLabelError("snapshot label " + std::string(label) + " is already frozen");
  }
  if (fs::exists(final_dir)) throw DuplicateLabelError("snapshot directory " + final_dir.string() + " already exists");

  fs::create_directories(dir_);
  const auto frozen_graph = graph.relabeled(std::string(label));
  const auto manifest = store.manifest();
  const fs::path tmp_dir = dir_ / (std::string(label) + ".partial");
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);
  save_snapshot(frozen_graph, tmp_dir / kGraphFile);
  const auto store_dir = fs::relative(fs::absolute(*store.directory()), fs::absolute(final_dir));
  nlohmann::json series{{"store", store_dir.generic_string()}, {"manifest", manifest}};
  write_file_atomic(tmp_dir / kSeriesFile, series.dump(2) + "\n");
  fs::rename(tmp_dir, final_dir);

  FrozenEntry entry;
  entry.label = std::string(label);
  entry.content_hash = bundle_hash(frozen_graph, manifest);
  entry.created_at = now_iso8601();
  entry.graph_counts = frozen_graph.counts();
  entry.ts_day_coverage = manifest.days();
  entries.push_back(entry);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  write_index(entries);
  return entry;
}

FrozenBundle SnapshotRegistry::open(std::string_view label) const {
  auto entry = find(label);
  if (!entry) throw NotFoundError("no frozen snapshot labelled " + std::string(label));
  const fs::path bundle_dir = dir_ / entry->label;
  auto graph = load_snapshot(bundle_dir / kGraphFile);
  const auto bytes = read_file_bytes(bundle_dir / kSeriesFile);
  nlohmann::json series;
  TimeSeriesManifest manifest;
  try {
    series = nlohmann::json::parse(bytes.begin(), bytes.end());
    manifest = series.at("manifest").get<TimeSeriesManifest>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("frozen time-series reference is unreadable: ") + e.what());
  }
  if (bundle_hash(graph, manifest) != entry->content_hash) {
    throw ChecksumError("frozen snapshot " + entry->label + " does not match its registered hash");
  }
  auto store = TimeSeriesStore::open_frozen(bundle_dir / series.at("store").get<std::string>(), manifest);
  return FrozenBundle{std::move(*entry), std::move(graph), std::move(store)};
}

Workspace::Workspace(fs::path data_dir) : root_(std::move(data_dir)) {}

bool Workspace::has_graph() const { return fs::exists(graph_path()); }

GraphSnapshot Workspace::load_graph() const {
  if (!has_graph()) throw NotFoundError("no graph in " + root_.string() + "; run ingest-graph first");
  return load_snapshot(graph_path());
}

void Workspace::save_graph(const GraphSnapshot& graph) const {
  fs::create_directories(graph_path().parent_path());
  save_snapshot(graph, graph_path());
}

bool Workspace::has_timeseries() const { return fs::exists(timeseries_dir() / "manifest.json"); }

TimeSeriesStore Workspace::open_timeseries() const { return TimeSeriesStore::open(timeseries_dir()); }

}  // namespace wikigraph
