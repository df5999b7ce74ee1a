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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/types.h"

namespace wikigraph {

/// Monthly label plus a SHA-256 of the node and edge sets. The label is
/// empty for working snapshots that were never frozen.
struct SnapshotId {
  std::string label;
  std::string content_hash;

  std::string to_string() const;
  friend bool operator==(const SnapshotId&, const SnapshotId&) = default;
};

struct GraphCounts {
  std::uint64_t articles = 0;
  std::uint64_t categories = 0;
  std::uint64_t links_to = 0;
  std::uint64_t belongs_to = 0;

  friend bool operator==(const GraphCounts&, const GraphCounts&) = default;
};

void to_json(nlohmann::json& j, const SnapshotId& id);
void to_json(nlohmann::json& j, const GraphCounts& c);

class GraphBuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable typed graph: article and category nodes keyed by page id,
/// links_to and belongs_to edges in CSR form per kind and direction with
/// ascending neighbour lists. Copies share the same data and any number of
/// threads may read one concurrently.
class GraphSnapshot {
 public:
  /// Dense node position, assigned in ascending page-id order.
  using Index = std::uint32_t;

  GraphSnapshot();

  /// Validates and indexes the graph. Duplicate edges collapse; input order
  /// does not matter. Throws GraphBuildError on an unknown endpoint, an
  /// edge-kind violation, or a duplicate node id or (kind, title).
  static GraphSnapshot build(std::vector<Node> nodes, std::vector<Edge> edges, std::string label = {});

  const SnapshotId& id() const;
  const GraphCounts& counts() const;
  std::size_t node_count() const;
  std::size_t edge_count(EdgeKind kind) const;

  /// Same content under a different label.
  GraphSnapshot relabeled(std::string label) const;

  std::optional<Node> lookup(PageId id) const;
  std::optional<Node> lookup(NodeKind kind, std::string_view title) const;
  bool contains(PageId id) const { return index_of(id).has_value(); }

  /// Ascending neighbour ids. Throws NotFoundError for an unknown node.
  std::vector<PageId> neighbors(PageId id, EdgeKind kind, Direction dir) const;
  std::size_t degree(PageId id, EdgeKind kind, Direction dir) const;

  /// Edges of `kind` with both endpoints in `ids`, sorted by (source,
  /// target). Unknown ids are ignored. Work is proportional to the
  /// out-degrees of the members, not to the edge count.
  std::vector<Edge> induced_edges(std::span<const PageId> ids, EdgeKind kind) const;

  std::optional<Index> index_of(PageId id) const;
  PageId id_at(Index i) const;
  NodeKind kind_at(Index i) const;
  std::string_view title_at(Index i) const;
  Node node_at(Index i) const;
  std::span<const Index> adjacent(Index i, EdgeKind kind, Direction dir) const;

  /// All nodes ascending by id.
  std::vector<Node> nodes() const;
  /// All edges in Edge ordering.
  std::vector<Edge> edges() const;
  void for_each_edge(EdgeKind kind, const std::function<void(PageId, PageId)>& fn) const;

  struct Data;

 private:
  explicit GraphSnapshot(std::shared_ptr<const Data> data);
  friend GraphSnapshot deserialize_snapshot(std::span<const std::uint8_t> bytes);

  std::shared_ptr<const Data> data_;
};

inline GraphSnapshot build_graph(std::vector<Node> nodes, std::vector<Edge> edges, std::string label = {}) {
  return GraphSnapshot::build(std::move(nodes), std::move(edges), std::move(label));
}

inline constexpr std::uint32_t kSnapshotFormatVersion = 1;

/// Snapshot file layout, little-endian throughout:
///   header:  magic "WKGSNAP\0", u32 version, label, content hash, counts,
///            node count, per-section (length, crc32) for the node table and
///            the four adjacency sections, total file size, header crc32
///   nodes:   per node u64 id, u8 kind, u32 title length, title bytes
///   adjacency (links_to out, links_to in, belongs_to out, belongs_to in):
///            u64 entry count, node_count+1 u64 offsets, u64 neighbour ids
std::vector<std::uint8_t> serialize_snapshot(const GraphSnapshot& snapshot);

/// Throws FormatError (bad magic or structure), VersionMismatchError,
/// ChecksumError, or TruncatedFileError.
GraphSnapshot deserialize_snapshot(std::span<const std::uint8_t> bytes);

void save_snapshot(const GraphSnapshot& snapshot, const std::filesystem::path& path);
GraphSnapshot load_snapshot(const std::filesystem::path& path);

}  // namespace wikigraph
