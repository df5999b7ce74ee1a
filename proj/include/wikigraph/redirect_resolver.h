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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/dump_parser.h"
#include "wikigraph/types.h"

namespace wikigraph {

/// Id and (namespace, title) index over the namespace-filtered page table.
/// If two rows share an id or a (namespace, title), the first one wins and
/// the later one is counted in duplicates().
class PageIndex {
 public:
  PageIndex() = default;
  explicit PageIndex(std::vector<PageRow> pages);
  // Title keys view into pages_, so the index can move but not copy.
  PageIndex(const PageIndex&) = delete;
  PageIndex& operator=(const PageIndex&) = delete;
  PageIndex(PageIndex&&) noexcept = default;
  PageIndex& operator=(PageIndex&&) noexcept = default;

  const PageRow* find(PageId id) const;
  std::optional<PageId> find(std::int32_t namespace_id, std::string_view title) const;
  bool is_redirect(PageId id) const;

  std::span<const PageRow> pages() const { return pages_; }
  std::size_t redirect_count() const { return redirect_count_; }
  std::uint64_t duplicates() const { return duplicates_; }

 private:
  struct TitleKey {
    std::int32_t ns;
    std::string_view title;
    bool operator==(const TitleKey&) const = default;
  };
  struct TitleHash {
    std::size_t operator()(const TitleKey& k) const noexcept;
  };

  std::vector<PageRow> pages_;
  std::unordered_map<PageId, std::size_t> by_id_;
  std::unordered_map<TitleKey, std::size_t, TitleHash> by_title_;
  std::size_t redirect_count_ = 0;
  std::uint64_t duplicates_ = 0;
};

enum class DropReason : std::uint8_t { kCycle, kDangling, kTooDeep };

std::string_view to_string(DropReason reason);

/// Redirect page id -> final non-redirect page id, plus the redirects whose
/// chains never reach one. Read-only after construction; safe to share
/// between threads.
struct RedirectMap {
  std::unordered_map<PageId, PageId> targets;
  std::unordered_map<PageId, DropReason> dropped;
  /// Redirect rows whose source page is missing or not flagged as a redirect.
  std::uint64_t orphan_rows = 0;
  unsigned hop_bound = 16;
};

struct RedirectOptions {
  unsigned hop_bound = 16;
};

/// Chases every redirect page's chain. A chain that reaches a non-redirect
/// page in at most `hop_bound` hops maps to it; a chain that revisits a
/// page is a cycle, one that needs more hops is too_deep, and one that hits
/// a missing title (or has no redirect row) is dangling. A cycle longer
/// than the hop bound is reported as too_deep.
RedirectMap build_redirect_map(const PageIndex& pages, std::span<const RedirectRow> redirects,
                               RedirectOptions options = {});

struct DiscardReport {
  std::uint64_t dangling = 0;
  std::uint64_t cycle = 0;
  std::uint64_t too_deep = 0;
  std::uint64_t self_loops_removed = 0;
  std::uint64_t duplicates_collapsed = 0;
  /// Links leaving a redirect page; those pages are invisible to readers.
  std::uint64_t from_redirect_pages = 0;
  /// Links whose resolved endpoints violate the edge-kind rules, such as a
  /// page link to a category page.
  std::uint64_t kind_mismatch = 0;

  friend bool operator==(const DiscardReport&, const DiscardReport&) = default;
};

void to_json(nlohmann::json& j, const DiscardReport& r);

struct ResolvedEdges {
  /// Sorted ascending, no duplicates, no self-loops.
  std::vector<Edge> edges;
  DiscardReport report;
};

/// Turns title-addressed page links into links_to edges and category
/// links into belongs_to edges, rewriting redirect targets through `map`.
ResolvedEdges resolve_links(std::span<const LinkRow> links, std::span<const CategoryLinkRow> category_links,
                            const PageIndex& pages, const RedirectMap& map);

/// Same rewriting for id-level edges. The identity on an already-resolved
/// edge set.
ResolvedEdges resolve_edges(std::span<const Edge> edges, const RedirectMap& map);

/// Every non-redirect page as a graph node, ascending by id.
std::vector<Node> resolved_nodes(const PageIndex& pages);

}  // namespace wikigraph
