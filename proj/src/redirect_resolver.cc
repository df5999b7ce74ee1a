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

#include "wikigraph/redirect_resolver.h"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace wikigraph {

std::size_t PageIndex::TitleHash::operator()(const TitleKey& k) const noexcept {
  return std::hash<std::string_view>{}(k.title) * 31u + static_cast<std::size_t>(k.ns);
}

PageIndex::PageIndex(std::vector<PageRow> pages) : pages_(std::move(pages)) {
  by_id_.reserve(pages_.size());
  by_title_.reserve(pages_.size());
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    const auto& p = pages_[i];
    const bool fresh_id = by_id_.emplace(p.page_id, i).second;
    const bool fresh_title = fresh_id && by_title_.emplace(TitleKey{p.namespace_id, p.title}, i).second;
    if (!fresh_id || !fresh_title) {
      if (fresh_id) by_id_.erase(p.page_id);
      ++duplicates_;
      continue;
    }
    if (p.is_redirect) ++redirect_count_;
  }
}

const PageRow* PageIndex::find(PageId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &pages_[it->second];
}

std::optional<PageId> PageIndex::find(std::int32_t namespace_id, std::string_view title) const {
  auto it = by_title_.find(TitleKey{namespace_id, title});
  if (it == by_title_.end()) return std::nullopt;
  return pages_[it->second].page_id;
}

bool PageIndex::is_redirect(PageId id) const {
  const auto* p = find(id);
  return p != nullptr && p->is_redirect;
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kCycle:
      return "cycle";
    case DropReason::kDangling:
      return "dangling";
    case DropReason::kTooDeep:
      return "too_deep";
  }
  return "";
}

RedirectMap build_redirect_map(const PageIndex& pages, std::span<const RedirectRow> redirects,
                               RedirectOptions options) {
  RedirectMap map;
  map.hop_bound = options.hop_bound;

  std::unordered_map<PageId, const RedirectRow*> row_of;
  row_of.reserve(redirects.size());
  for (const auto& r : redirects) {
    if (!pages.is_redirect(r.source_page_id)) {
      ++map.orphan_rows;
      continue;
    }
    row_of.emplace(r.source_page_id, &r);
  }

  std::vector<PageId> path;
  for (const auto& page : pages.pages()) {
    if (!page.is_redirect || pages.find(page.page_id) != &page) continue;
    const PageId start = page.page_id;
    path.assign(1, start);
    PageId current = start;
    for (unsigned hops = 1;; ++hops) {
      auto row = row_of.find(current);
      const auto next = row == row_of.end()
                            ? std::nullopt
                            : pages.find(row->second->target_namespace, row->second->target_title);
      if (!next) {
        map.dropped.emplace(start, DropReason::kDangling);
        break;
      }
      if (!pages.is_redirect(*next)) {
        map.targets.emplace(start, *next);
        break;
      }
      if (std::find(path.begin(), path.end(), *next) != path.end()) {
        map.dropped.emplace(start, DropReason::kCycle);
        break;
      }
      if (hops >= options.hop_bound) {
        map.dropped.emplace(start, DropReason::kTooDeep);
        break;
      }
      path.push_back(*next);
      current = *next;
    }
  }
  return map;
}

void to_json(nlohmann::json& j, const DiscardReport& r) {
  j = nlohmann::json{{"dangling", r.dangling},
                     {"cycle", r.cycle},
                     {"too_deep", r.too_deep},
                     {"self_loops_removed", r.self_loops_removed},
                     {"duplicates_collapsed", r.duplicates_collapsed},
                     {"from_redirect_pages", r.from_redirect_pages},
                     {"kind_mismatch", r.kind_mismatch}};
}

namespace {

void count_drop(DiscardReport& report, DropReason reason) {
  switch (reason) {
    case DropReason::kCycle:
      ++report.cycle;
      break;
    case DropReason::kDangling:
      ++report.dangling;
      break;
    case DropReason::kTooDeep:
      ++report.too_deep;
      break;
  }
}

// Final id for `id`: itself, its redirect terminal, or nullopt when the
// redirect was dropped (the reason is tallied).
std::optional<PageId> follow(PageId id, const RedirectMap& map, DiscardReport& report) {
  if (auto it = map.targets.find(id); it != map.targets.end()) return it->second;
  if (auto it = map.dropped.find(id); it != map.dropped.end()) {
    count_drop(report, it->second);
    return std::nullopt;
  }
  return id;
}

void finish(ResolvedEdges& out) {
  auto& e = out.edges;
  const auto before = e.size();
  std::erase_if(e, [](const Edge& x) { return x.source == x.target; });
  out.report.self_loops_removed += before - e.size();
  std::sort(e.begin(), e.end());
  const auto unique_end = std::unique(e.begin(), e.end());
  out.report.duplicates_collapsed += static_cast<std::uint64_t>(e.end() - unique_end);
  e.erase(unique_end, e.end());
}

}  // namespace

ResolvedEdges resolve_links(std::span<const LinkRow> links, std::span<const CategoryLinkRow> category_links,
                            const PageIndex& pages, const RedirectMap& map) {
  ResolvedEdges out;
  out.edges.reserve(links.size() + category_links.size());
  auto& report = out.report;

  // The source must be a live page of the given namespace; its links are
  // discarded if it is a redirect.
  auto source_ok = [&](PageId id, std::optional<std::int32_t> required_ns) {
    const auto* p = pages.find(id);
    if (p == nullptr) {
      ++report.dangling;
      return false;
    }
    if (p->is_redirect) {
      ++report.from_redirect_pages;
      return false;
    }
    if (required_ns && p->namespace_id != *required_ns) {
      ++report.kind_mismatch;
      return false;
    }
    return true;
  };

  auto target_of = [&](std::int32_t ns, std::string_view title) -> std::optional<PageId> {
    const auto raw = pages.find(ns, title);
    if (!raw) {
      ++report.dangling;
      return std::nullopt;
    }
    return follow(*raw, map, report);
  };

  for (const auto& l : links) {
    if (!source_ok(l.source_page_id, kArticleNamespace)) continue;
    const auto target = target_of(l.target_namespace, l.target_title);
    if (!target) continue;
    if (pages.find(*target)->namespace_id != kArticleNamespace) {
      ++report.kind_mismatch;
      continue;
    }
    out.edges.push_back(Edge{l.source_page_id, *target, EdgeKind::kLinksTo});
  }

  for (const auto& c : category_links) {
    if (!source_ok(c.source_page_id, std::nullopt)) continue;
    const auto target = target_of(kCategoryNamespace, c.target_category_title);
    if (!target) continue;
    if (pages.find(*target)->namespace_id != kCategoryNamespace) {
      ++report.kind_mismatch;
      continue;
    }
    out.edges.push_back(Edge{c.source_page_id, *target, EdgeKind::kBelongsTo});
  }

  finish(out);
  return out;
}

ResolvedEdges resolve_edges(std::span<const Edge> edges, const RedirectMap& map) {
  ResolvedEdges out;
  out.edges.reserve(edges.size());
  for (const auto& e : edges) {
    if (map.targets.contains(e.source) || map.dropped.contains(e.source)) {
      ++out.report.from_redirect_pages;
      continue;
    }
    const auto target = follow(e.target, map, out.report);
    if (!target) continue;
    out.edges.push_back(Edge{e.source, *target, e.kind});
  }
  finish(out);
  return out;
}

std::vector<Node> resolved_nodes(const PageIndex& pages) {
  std::vector<Node> nodes;
  nodes.reserve(pages.pages().size() - pages.redirect_count());
  for (const auto& p : pages.pages()) {
    if (p.is_redirect || pages.find(p.page_id) != &p) continue;
    nodes.push_back(Node{p.page_id, p.title, *kind_from_namespace(p.namespace_id)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  return nodes;
}

}  // namespace wikigraph
