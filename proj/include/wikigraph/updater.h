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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/graph_store.h"
#include "wikigraph/timeseries_store.h"
#include "wikigraph/types.h"

namespace wikigraph {

/// Difference between two graph snapshots. A node whose title or kind
/// changed appears in both nodes_removed (old version) and nodes_added
/// (new version); its unchanged edges are not listed.
struct GraphDelta {
  std::vector<Node> nodes_added;     // ascending id
  std::vector<PageId> nodes_removed;  // ascending
  std::vector<Edge> edges_added;     // Edge order
  std::vector<Edge> edges_removed;   // Edge order

  bool empty() const {
    return nodes_added.empty() && nodes_removed.empty() && edges_added.empty() && edges_removed.empty();
  }
  friend bool operator==(const GraphDelta&, const GraphDelta&) = default;
};

void to_json(nlohmann::json& j, const GraphDelta& d);
void from_json(const nlohmann::json& j, GraphDelta& d);
/// Counts only.
nlohmann::json delta_summary(const GraphDelta& d);

/// Minimal delta taking `old_graph` to `new_graph`.
GraphDelta diff_graphs(const GraphSnapshot& old_graph, const GraphSnapshot& new_graph);

class DeltaValidationError : public std::runtime_error {
 public:
  explicit DeltaValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// New snapshot labelled `label`; `old_graph` is untouched. Every problem
/// found is listed in the thrown DeltaValidationError: removing an absent
/// node or edge, adding a present one, or leaving an edge whose endpoint
/// is gone.
GraphSnapshot apply_delta(const GraphSnapshot& old_graph, const GraphDelta& delta, std::string label);

/// Ingests one day into `store`; the store manifest records the day.
IngestSummary append_day(TimeSeriesStore& store, Day day, std::span<const HourlyVisit> visits,
                         DailyThresholdPolicy policy = {});

class DuplicateLabelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FrozenEntry {
  std::string label;
  /// SHA-256 over the graph hash and the time-series manifest hash.
  std::string content_hash;
  std::string created_at;
  GraphCounts graph_counts;
  std::vector<Day> ts_day_coverage;

  SnapshotId id() const { return SnapshotId{label, content_hash}; }
};

void to_json(nlohmann::json& j, const FrozenEntry& e);
void from_json(const nlohmann::json& j, FrozenEntry& e);

struct FrozenBundle {
  FrozenEntry entry;
  GraphSnapshot graph;
  TimeSeriesStore series;
};

/// Named, immutable (graph, time-series) pairs under one directory:
/// <dir>/<label>/graph.wgs, <dir>/<label>/timeseries.json, and index.json.
/// A bundle directory is written completely before it is renamed into
/// place and registered, so a failed freeze leaves no entry.
class SnapshotRegistry {
 public:
  explicit SnapshotRegistry(std::filesystem::path dir);

  /// `label` must be YYYY-MM and unused. The store must be directory
  /// backed; the bundle references its current segment generation.
  FrozenEntry freeze(const GraphSnapshot& graph, const TimeSeriesStore& store, std::string_view label);

  std::vector<FrozenEntry> list() const;
  std::optional<FrozenEntry> find(std::string_view label) const;
  /// Throws NotFoundError for an unknown label.
  FrozenBundle open(std::string_view label) const;

  const std::filesystem::path& directory() const { return dir_; }

 private:
  void write_index(const std::vector<FrozenEntry>& entries) const;

  std::filesystem::path dir_;
};

/// Data directory layout: graph/current.wgs, timeseries/, snapshots/.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path data_dir);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path graph_path() const { return root_ / "graph" / "current.wgs"; }
  std::filesystem::path timeseries_dir() const { return root_ / "timeseries"; }
  std::filesystem::path snapshots_dir() const { return root_ / "snapshots"; }

  bool has_graph() const;
  /// Throws NotFoundError when no graph was ingested yet.
  GraphSnapshot load_graph() const;
  void save_graph(const GraphSnapshot& graph) const;

  bool has_timeseries() const;
  TimeSeriesStore open_timeseries() const;
  SnapshotRegistry registry() const { return SnapshotRegistry(snapshots_dir()); }

 private:
  std::filesystem::path root_;
};

}  // namespace wikigraph
