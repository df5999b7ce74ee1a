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

#include "wikigraph/query_engine.h"

#include <algorithm>
#include <unordered_set>

#include "wikigraph/time_util.h"

namespace wikigraph {

using Index = GraphSnapshot::Index;

std::vector<PageId> Subgraph::node_ids() const {
  std::vector<PageId> ids;
  ids.reserve(nodes.size());
  for (const auto& n : nodes) ids.push_back(n.id);
  return ids;
}

QueryBudgetExceeded::QueryBudgetExceeded(std::uint64_t ceiling, std::uint64_t collected)
    : std::runtime_error("query aborted after collecting " + std::to_string(collected) +
                         " nodes (ceiling " + std::to_string(ceiling) + "); partial result discarded"),
      ceiling_(ceiling),
      collected_(collected) {}

QueryEngine::QueryEngine(GraphSnapshot graph, const TimeSeriesStore* series, QueryLimits limits)
    : graph_(std::move(graph)), series_(series), limits_(limits) {}

const TimeSeriesStore& QueryEngine::require_series() const {
  if (series_ == nullptr) throw ContractViolation("query needs a time-series store, none is attached");
  return *series_;
}

Subgraph QueryEngine::assemble(QueryKind kind, PageId root, std::vector<Index> members, std::string query,
                               std::vector<std::pair<std::string, std::string>> parameters) const {
  std::sort(members.begin(), members.end());
  Subgraph sub;
  sub.kind = kind;
  sub.root = root;
  sub.nodes.reserve(members.size());
  for (Index i : members) sub.nodes.push_back(graph_.node_at(i));
  const auto ids = sub.node_ids();
  sub.edges = graph_.induced_edges(ids, EdgeKind::kLinksTo);
  if (kind == QueryKind::kCategoryClosure) {
    auto memberships = graph_.induced_edges(ids, EdgeKind::kBelongsTo);
    sub.edges.insert(sub.edges.end(), memberships.begin(), memberships.end());
    std::sort(sub.edges.begin(), sub.edges.end());
  }
  sub.provenance = Provenance{std::move(query), graph_.id(), std::move(parameters)};
  sub.stats = compute_stats(sub);
  return sub;
}

Subgraph QueryEngine::category_closure(PageId root, DepthSpec depth) const {
  const auto r = graph_.index_of(root);
  if (!r) throw NotFoundError("no node with id " + std::to_string(root));
  if (graph_.kind_at(*r) != NodeKind::kCategory) {
    throw QueryKindError("category closure root " + std::string(graph_.title_at(*r)) + " is an article");
  }

  std::unordered_set<Index> categories{*r};
  std::vector<Index> frontier{*r};
  std::vector<Index> all_categories{*r};
  for (std::uint32_t level = 1; !frontier.empty() && depth.allows(level); ++level) {
    std::vector<Index> next;
    for (Index c : frontier) {
      for (Index u : graph_.adjacent(c, EdgeKind::kBelongsTo, Direction::kIn)) {
        if (graph_.kind_at(u) == NodeKind::kCategory && categories.insert(u).second) {
          next.push_back(u);
          if (categories.size() > limits_.node_ceiling) {
            throw QueryBudgetExceeded(limits_.node_ceiling, categories.size());
          }
        }
      }
    }
    all_categories.insert(all_categories.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  std::unordered_set<Index> articles;
  for (Index c : all_categories) {
    for (Index u : graph_.adjacent(c, EdgeKind::kBelongsTo, Direction::kIn)) {
      if (graph_.kind_at(u) == NodeKind::kArticle && articles.insert(u).second &&
          categories.size() + articles.size() > limits_.node_ceiling) {
        throw QueryBudgetExceeded(limits_.node_ceiling, categories.size() + articles.size());
      }
    }
  }

  std::vector<Index> members(all_categories);
  members.insert(members.end(), articles.begin(), articles.end());
  return assemble(QueryKind::kCategoryClosure, root, std::move(members), "category_closure",
                  {{"root", std::to_string(root)},
                   {"root_title", std::string(graph_.title_at(*r))},
                   {"depth", depth.to_string()}});
}

Subgraph QueryEngine::neighborhood(PageId root, std::uint32_t depth, std::optional<std::uint64_t> max_out_degree) const {
  const auto r = graph_.index_of(root);
  if (!r) throw NotFoundError("no node with id " + std::to_string(root));
  if (graph_.kind_at(*r) != NodeKind::kArticle) {
    throw QueryKindError("neighborhood root " + std::string(graph_.title_at(*r)) + " is a category");
  }
  if (depth == 0) throw ContractViolation("neighborhood depth must be positive");

  std::unordered_set<Index> visited{*r};
  std::vector<Index> members{*r};
  std::vector<Index> frontier{*r};
  for (std::uint32_t level = 1; level <= depth && !frontier.empty(); ++level) {
    std::vector<Index> next;
    for (Index u : frontier) {
      const auto out = graph_.adjacent(u, EdgeKind::kLinksTo, Direction::kOut);
      if (u != *r && max_out_degree && out.size() > *max_out_degree) continue;
      for (Index v : out) {
        if (!visited.insert(v).second) continue;
        next.push_back(v);
        if (visited.size() > limits_.node_ceiling) throw QueryBudgetExceeded(limits_.node_ceiling, visited.size());
      }
    }
    members.insert(members.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  return assemble(QueryKind::kNeighborhood, root, std::move(members), "neighborhood",
                  {{"root", std::to_string(root)},
                   {"root_title", std::string(graph_.title_at(*r))},
                   {"depth", std::to_string(depth)},
                   {"max_out_degree", max_out_degree ? std::to_string(*max_out_degree) : "unlimited"}});
}

Subgraph QueryEngine::filter_by_visits(const Subgraph& sub, std::uint64_t total_threshold, Timestamp start,
                                       Timestamp end) const {
  const auto& store = require_series();
  Subgraph out;
  out.kind = sub.kind;
  out.root = sub.root;
  std::unordered_set<PageId> keep;
  for (const auto& node : sub.nodes) {
    std::uint64_t total = 0;
    for (const auto& hc : store.query_range(node.id, start, end)) total += hc.count;
    if (total > total_threshold) {
      keep.insert(node.id);
      out.nodes.push_back(node);
    }
  }
  for (const auto& e : sub.edges) {
    if (keep.contains(e.source) && keep.contains(e.target)) out.edges.push_back(e);
  }
  if (sub.series) {
    out.series.emplace();
    for (const auto& [id, s] : *sub.series) {
      if (keep.contains(id)) out.series->emplace(id, s);
    }
  }
  out.provenance = sub.provenance;
  out.provenance.query += "|filter_by_visits";
  out.provenance.parameters.emplace_back("visits_threshold", std::to_string(total_threshold));
  out.provenance.parameters.emplace_back("visits_from", format_iso8601(start));
  out.provenance.parameters.emplace_back("visits_to", format_iso8601(end));
  out.stats = compute_stats(out);
  return out;
}

Subgraph QueryEngine::attach_series(const Subgraph& sub, Timestamp start, Timestamp end) const {
  const auto& store = require_series();
  Subgraph out = sub;
  out.series.emplace();
  for (const auto& node : sub.nodes) out.series->emplace(node.id, store.query_range(node.id, start, end));
  out.provenance.query += "|attach_series";
  out.provenance.parameters.emplace_back("series_from", format_iso8601(start));
  out.provenance.parameters.emplace_back("series_to", format_iso8601(end));
  return out;
}

SubgraphStats QueryEngine::compute_stats(const Subgraph& sub) const {
  SubgraphStats s;
  std::unordered_set<Index> parent_categories;
  for (const auto& node : sub.nodes) {
    if (node.kind == NodeKind::kArticle) {
      ++s.articles;
      if (sub.kind == QueryKind::kNeighborhood) {
        if (auto i = graph_.index_of(node.id)) {
          for (Index c : graph_.adjacent(*i, EdgeKind::kBelongsTo, Direction::kOut)) parent_categories.insert(c);
        }
      }
    } else if (sub.kind == QueryKind::kCategoryClosure && node.id != sub.root) {
      ++s.subcategories;
    }
  }
  if (sub.kind == QueryKind::kNeighborhood) s.subcategories = parent_categories.size();
  for (const auto& e : sub.edges) {
    if (e.kind == EdgeKind::kLinksTo) {
      ++s.hyperlinks;
    } else {
      ++s.memberships;
    }
  }
  return s;
}

}  // namespace wikigraph
