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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wikigraph/graph_store.h"
#include "wikigraph/timeseries_store.h"
#include "wikigraph/types.h"

namespace wikigraph {

/// Hop bound for a traversal; nullopt means unlimited.
struct DepthSpec {
  std::optional<std::uint32_t> hops;

  static DepthSpec unlimited() { return DepthSpec{std::nullopt}; }
  static DepthSpec of(std::uint32_t n) { return DepthSpec{n}; }
  bool allows(std::uint32_t level) const { return !hops || level <= *hops; }
  std::string to_string() const { return hops ? std::to_string(*hops) : std::string("unlimited"); }
};

enum class QueryKind : std::uint8_t { kCategoryClosure, kNeighborhood };

struct SubgraphStats {
  std::uint64_t articles = 0;
  /// Category closure: included categories other than the root.
  /// Neighbourhood: distinct categories directly containing an included
  /// article.
  std::uint64_t subcategories = 0;
  /// links_to edges in the subgraph.
  std::uint64_t hyperlinks = 0;
  std::uint64_t memberships = 0;

  friend bool operator==(const SubgraphStats&, const SubgraphStats&) = default;
};

struct Provenance {
  std::string query;
  SnapshotId snapshot;
  std::vector<std::pair<std::string, std::string>> parameters;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

using SeriesMap = std::map<PageId, std::vector<HourCount>>;

struct Subgraph {
  QueryKind kind = QueryKind::kCategoryClosure;
  PageId root = 0;
  std::vector<Node> nodes;  // ascending id
  std::vector<Edge> edges;  // Edge ordering, induced on nodes
  SubgraphStats stats;
  Provenance provenance;
  std::optional<SeriesMap> series;

  std::vector<PageId> node_ids() const;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

struct QueryLimits {
  /// Traversals that would collect more nodes than this abort.
  std::uint64_t node_ceiling = 1'000'000;
};

class QueryBudgetExceeded : public std::runtime_error {
 public:
  QueryBudgetExceeded(std::uint64_t ceiling, std::uint64_t collected);
  std::uint64_t ceiling() const { return ceiling_; }
  /// Nodes collected when the traversal stopped.
  std::uint64_t collected() const { return collected_; }

 private:
  std::uint64_t ceiling_;
  std::uint64_t collected_;
};

/// Root has the wrong node kind for the query.
class QueryKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Read-only queries over one graph snapshot and, optionally, the
/// time-series store of the same lineage. Any number of threads may query
/// one engine.
class QueryEngine {
 public:
  explicit QueryEngine(GraphSnapshot graph, const TimeSeriesStore* series = nullptr, QueryLimits limits = {});

  const GraphSnapshot& graph() const { return graph_; }
  bool has_series() const { return series_ != nullptr; }

  /// Breadth-first over reverse belongs_to edges from `root`. Categories at
  /// hop distance <= depth are included, with every article that belongs to
  /// any of them; depth 0 is the root and its direct articles. Edges are
  /// the induced links_to and belongs_to edges. Terminates on cyclic
  /// category graphs.
  Subgraph category_closure(PageId root, DepthSpec depth) const;

  /// Breadth-first over links_to from `root` for `depth` hops. A non-root
  /// node whose out-degree exceeds `max_out_degree` is included but not
  /// expanded. Edges are the induced links_to edges.
  Subgraph neighborhood(PageId root, std::uint32_t depth, std::optional<std::uint64_t> max_out_degree = {}) const;

  /// Keeps nodes whose stored visits in [start, end) sum to more than
  /// `total_threshold` (categories included), restricting edges and any
  /// attached series to the survivors.
  Subgraph filter_by_visits(const Subgraph& sub, std::uint64_t total_threshold, Timestamp start,
                            Timestamp end) const;

  /// Adds the stored hourly series in [start, end) of every node; nodes
  /// without data get an empty series.
  Subgraph attach_series(const Subgraph& sub, Timestamp start, Timestamp end) const;

  SubgraphStats compute_stats(const Subgraph& sub) const;

 private:
  const TimeSeriesStore& require_series() const;
  Subgraph assemble(QueryKind kind, PageId root, std::vector<GraphSnapshot::Index> members, std::string query,
                    std::vector<std::pair<std::string, std::string>> parameters) const;

  GraphSnapshot graph_;
  const TimeSeriesStore* series_;
  QueryLimits limits_;
};

}  // namespace wikigraph
