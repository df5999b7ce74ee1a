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

// Acceptance suite: one PASS/FAIL line per criterion, checked against the
// independent oracles in tests/support. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "oracles.h"
#include "synthetic.h"
#include "wikigraph/binary_io.h"
#include "wikigraph/export.h"
#include "wikigraph/pipeline.h"
#include "wikigraph/query_engine.h"
#include "wikigraph/time_util.h"
#include "wikigraph/updater.h"

namespace wikigraph::testing {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using std::chrono::days;
using std::chrono::hours;

// Pinned limits.
constexpr double kRedirectBudgetSeconds = 60.0;
constexpr double kThresholdBudgetSeconds = 30.0;
constexpr double kInducedSpeedupMin = 10.0;
constexpr double kNeighborhoodBudgetSeconds = 2.0;
constexpr std::uint64_t kDailyThreshold = 100;
constexpr std::size_t kPerfNodes = 100'000;
constexpr std::size_t kPerfEdges = 2'000'000;
constexpr std::size_t kPerfSubset = 5'000;

const Day kDay = *parse_date("2018-08-01");

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::set<PageId> ids_of(const Subgraph& s) {
  const auto v = s.node_ids();
  return {v.begin(), v.end()};
}

template <typename Row>
std::string sql_table(DumpTable table, const std::vector<Row>& rows) {
  std::ostringstream os;
  std::vector<DumpRow> chunk;
  for (const auto& r : rows) {
    chunk.emplace_back(r);
    if (chunk.size() == 500) {
      write_insert_statement(os, table, chunk);
      chunk.clear();
    }
  }
  write_insert_statement(os, table, chunk);
  return os.str();
}

// 1. Redirect resolution through the full parse + resolve + build path.
Outcome redirect_resolution() {
  Outcome o;
  Rng rng(1001);
  const auto t0 = Clock::now();
  std::size_t instances = 0;
  for (int i = 0; i < 100; ++i) {
    DumpParams p;
    p.pages = 500 + rng() % 4501;
    p.redirect_fraction = 0.05 + 0.15 * static_cast<double>(rng() % 1000) / 999.0;
    p.links = p.pages * 8;
    p.category_links = p.pages * 2;
    p.max_chain = 5;
    p.planted_cycles = 1 + rng() % 5;
    const auto dump = make_dump(5000 + i, p);
    std::istringstream page(sql_table(DumpTable::kPage, dump.pages));
    std::istringstream redirect(sql_table(DumpTable::kRedirect, dump.redirects));
    std::istringstream links(sql_table(DumpTable::kPageLinks, dump.links));
    std::istringstream cats(sql_table(DumpTable::kCategoryLinks, dump.category_links));
    const auto r = ingest_graph(page, redirect, links, cats);
    const auto got = r.graph.edges();
    const auto want = chase_oracle(dump);
    if (std::set<Edge>(got.begin(), got.end()) != want) o.fail("edge set mismatch on instance " + std::to_string(i));
    if (r.graph.node_count() != dump.pages.size() - dump.redirect_pages) {
      o.fail("node count " + std::to_string(r.graph.node_count()) + " != pages - redirects on instance " +
             std::to_string(i));
    }
    ++instances;
  }
  const double secs = seconds_since(t0);
  if (secs >= kRedirectBudgetSeconds) o.fail("took " + fmt(secs) + " s");
  if (o.pass) o.detail = std::to_string(instances) + " dumps, " + fmt(secs) + " s";
  return o;
}

// 2. Category closure vs path enumeration, depths 0..5, plus monotonicity.
Outcome category_closure() {
  Outcome o;
  Rng rng(2002);
  std::size_t checks = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t cats = 50 + rng() % 1951;
    const std::size_t arts = 100 + rng() % 9901;
    const auto g = make_category_graph(6000 + i, cats, arts, 1 + cats / 20, arts);
    const QueryEngine q(GraphSnapshot::build(g.nodes, g.edges));
    std::vector<PageId> roots{1};
    for (int k = 0; k < 4; ++k) roots.push_back(1 + rng() % cats);
    for (PageId root : roots) {
      std::set<PageId> previous;
      for (std::uint32_t d = 0; d <= 5; ++d) {
        const auto got = ids_of(q.category_closure(root, DepthSpec::of(d)));
        ++checks;
        if (got != closure_oracle(g, root, d)) {
          o.fail("instance " + std::to_string(i) + " root " + std::to_string(root) + " depth " + std::to_string(d));
        }
        if (!std::includes(got.begin(), got.end(), previous.begin(), previous.end())) {
          o.fail("monotonicity broken at instance " + std::to_string(i) + " depth " + std::to_string(d));
        }
        previous = got;
      }
    }
  }
  if (o.pass) o.detail = "50 graphs, " + std::to_string(checks) + " closures";
  return o;
}

// 3. Capped neighbourhood vs reference BFS.
Outcome neighborhood() {
  Outcome o;
  Rng rng(3003);
  std::size_t checks = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 500 + rng() % 9501;
    const auto g = make_power_law_graph(7000 + i, n, 4.0 + static_cast<double>(rng() % 9));
    const QueryEngine q(GraphSnapshot::build(g.nodes, g.edges));
    for (int k = 0; k < 4; ++k) {
      const PageId root = k == 0 ? 1 : 1 + rng() % n;  // id 1 is a hub
      for (std::uint32_t depth : {1u, 2u}) {
        for (std::optional<std::uint64_t> cap : {std::optional<std::uint64_t>(10), std::optional<std::uint64_t>(100),
                                                 std::optional<std::uint64_t>()}) {
          ++checks;
          const auto s = q.neighborhood(root, depth, cap);
          if (ids_of(s) != capped_bfs_oracle(g, root, depth, cap)) {
            o.fail("instance " + std::to_string(i) + " root " + std::to_string(root) + " depth " +
                   std::to_string(depth) + " cap " + (cap ? std::to_string(*cap) : "inf"));
          }
        }
      }
    }
  }
  if (o.pass) o.detail = "50 graphs, " + std::to_string(checks) + " queries";
  return o;
}

// 4. Daily threshold boundary, monotonicity and pages_above.
Outcome threshold_semantics() {
  Outcome o;
  const auto t0 = Clock::now();
  auto at = [](int h, Day d = kDay) { return start_of(d) + hours(h); };

  {
    auto store = TimeSeriesStore::in_memory();
    // page 1 totals 99 over 3 hours, page 2 totals exactly 100 over 4
    std::vector<HourlyVisit> v{{1, at(0), 33}, {1, at(5), 33}, {1, at(9), 33},
                               {2, at(1), 25}, {2, at(2), 25}, {2, at(3), 0}, {2, at(20), 25}, {2, at(23), 25}};
    store.ingest_day(kDay, v, DailyThresholdPolicy{kDailyThreshold});
    if (!store.query_range(1, at(0), at(24)).empty()) o.fail("total 99 stored records");
    if (store.query_range(2, at(0), at(24)).size() != 4) o.fail("total 100 did not store its 4 nonzero hours");
  }

  std::vector<PageId> pages(1000);
  std::iota(pages.begin(), pages.end(), 1);
  std::vector<std::vector<HourlyVisit>> month;
  for (int d = 0; d < 30; ++d) month.push_back(make_day_visits(8000 + d, pages, kDay + days(d)));

  // monotonicity: a higher threshold stores a subset of the records
  Rng rng(4004);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<HourlyVisit>> sample(month.begin() + trial * 6, month.begin() + trial * 6 + 3);
    std::uint64_t lo = rng() % 400, hi = lo + 1 + rng() % 400;
    StoredOracle prev;
    bool first = true;
    for (std::uint64_t t : {lo, hi}) {
      auto store = TimeSeriesStore::in_memory();
      for (std::size_t d = 0; d < sample.size(); ++d) {
        store.ingest_day(day_of(sample[d].front().hour), sample[d], DailyThresholdPolicy{t});
      }
      StoredOracle got;
      store.scan([&](PageId p, Timestamp h, std::uint32_t c) { got[{p, to_epoch_seconds(h)}] = c; });
      if (got != threshold_oracle(sample, t)) o.fail("stored set differs from oracle at threshold " + std::to_string(t));
      if (!first && !std::includes(prev.begin(), prev.end(), got.begin(), got.end())) {
        o.fail("raising the threshold added records");
      }
      prev = std::move(got);
      first = false;
    }
  }

  auto store = TimeSeriesStore::in_memory();
  for (int d = 0; d < 30; ++d) store.ingest_day(kDay + days(d), month[d], DailyThresholdPolicy{kDailyThreshold});
  const auto oracle = threshold_oracle(month, kDailyThreshold);
  std::size_t checks = 0;
  for (int k = 0; k < 40; ++k) {
    std::int64_t a = to_epoch_seconds(at(0)) + 3600 * static_cast<std::int64_t>(rng() % (24 * 31));
    std::int64_t b = to_epoch_seconds(at(0)) + 3600 * static_cast<std::int64_t>(rng() % (24 * 31));
    if (a > b) std::swap(a, b);
    const std::uint64_t total = rng() % 20000;
    ++checks;
    if (store.pages_above(total, from_epoch_seconds(a), from_epoch_seconds(b)) != pages_above_oracle(oracle, total, a, b)) {
      o.fail("pages_above mismatch at threshold " + std::to_string(total));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kThresholdBudgetSeconds) o.fail("took " + fmt(secs) + " s");
  if (o.pass) o.detail = "1000 pages x 30 days, " + std::to_string(checks) + " pages_above checks, " + fmt(secs) + " s";
  return o;
}

// Random neighbour/lookup probes on two graphs that should be equal.
bool same_answers(const GraphSnapshot& a, const GraphSnapshot& b, const TypedGraph& universe, Rng& rng, int queries) {
  for (int i = 0; i < queries; ++i) {
    const auto& n = universe.nodes[rng() % universe.nodes.size()];
    if (a.lookup(n.id) != b.lookup(n.id)) return false;
    if (a.lookup(n.kind, n.title) != b.lookup(n.kind, n.title)) return false;
    if (!a.contains(n.id)) continue;
    const auto kind = rng() % 2 ? EdgeKind::kLinksTo : EdgeKind::kBelongsTo;
    const auto dir = rng() % 2 ? Direction::kOut : Direction::kIn;
    if (a.neighbors(n.id, kind, dir) != b.neighbors(n.id, kind, dir)) return false;
  }
  return true;
}

std::vector<std::string> frozen_exports(const FrozenBundle& bundle) {
  const QueryEngine q(bundle.graph, &bundle.series);
  std::vector<std::string> out;
  const auto from = start_of(kDay), to = start_of(kDay + days(40));
  for (const auto& n : bundle.graph.nodes()) {
    if (n.id % 97 != 1) continue;  // a fixed handful of roots
    auto sub = n.kind == NodeKind::kCategory ? q.category_closure(n.id, DepthSpec::of(2)) : q.neighborhood(n.id, 2, 50);
    sub = q.attach_series(q.filter_by_visits(sub, 500, from, to), from, to);
    for (auto f : {ExportFormat::kEdgeListCsv, ExportFormat::kJsonGraph, ExportFormat::kGraphMl}) {
      out.push_back(export_subgraph(sub, f));
    }
  }
  return out;
}

// 5. apply(old, diff(old, new)) == new, and frozen bundles stay put.
Outcome update_round_trip() {
  Outcome o;
  Rng rng(5005);
  for (int i = 0; i < 100; ++i) {
    const auto a = make_random_graph(9000 + i, 1000 + rng() % 2000, 6000, 1500);
    const auto b = mutate_graph(9500 + i, a, 0.02 + 0.08 * static_cast<double>(rng() % 100) / 99.0);
    const auto ga = GraphSnapshot::build(a.nodes, a.edges), gb = GraphSnapshot::build(b.nodes, b.edges);
    const auto applied = apply_delta(ga, diff_graphs(ga, gb), "");
    if (applied.id().content_hash != gb.id().content_hash) o.fail("content hash differs on pair " + std::to_string(i));
    TypedGraph universe = a;
    universe.nodes.insert(universe.nodes.end(), b.nodes.begin(), b.nodes.end());
    if (!same_answers(applied, gb, universe, rng, 1000)) o.fail("sampled queries differ on pair " + std::to_string(i));
  }

  // frozen bundle vs later appends, a re-ingested day and a monthly delta
  TempDir dir;
  Workspace ws(dir.path());
  const auto base = make_random_graph(9999, 1500, 6000, 1500);
  ws.save_graph(GraphSnapshot::build(base.nodes, base.edges));
  auto store = ws.open_timeseries();
  std::vector<PageId> pages;
  for (const auto& n : base.nodes) pages.push_back(n.id);
  for (int d = 0; d < 10; ++d) append_day(store, kDay + days(d), make_day_visits(100 + d, pages, kDay + days(d)));
  ws.registry().freeze(ws.load_graph(), store, "2018-08");
  const auto before = frozen_exports(ws.registry().open("2018-08"));
  for (int d = 10; d < 20; ++d) append_day(store, kDay + days(d), make_day_visits(100 + d, pages, kDay + days(d)));
  append_day(store, kDay + days(3), make_day_visits(777, pages, kDay + days(3)));
  const auto next = mutate_graph(10000, base, 0.1);
  const auto current = ws.load_graph();
  ws.save_graph(apply_delta(current, diff_graphs(current, GraphSnapshot::build(next.nodes, next.edges)), ""));
  ws.registry().freeze(ws.load_graph(), store, "2018-09");
  const auto after = frozen_exports(ws.registry().open("2018-08"));
  if (before.empty()) o.fail("no frozen exports produced");
  if (before != after) o.fail("frozen exports changed after appends and a delta");
  if (o.pass) o.detail = "100 pairs x 1000 queries, " + std::to_string(before.size()) + " frozen exports identical";
  return o;
}

template <typename Fn>
std::pair<std::size_t, std::size_t> flip_every_byte(const std::vector<std::uint8_t>& bytes, std::size_t stride, Fn decode) {
  std::size_t flips = 0, caught = 0;
  for (std::size_t pos = 0; pos < bytes.size(); pos += stride) {
    auto bad = bytes;
    bad[pos] ^= static_cast<std::uint8_t>(1u << (pos % 8));
    ++flips;
    try {
      decode(bad);
    } catch (const FormatError&) {
      ++caught;
    }
  }
  return {flips, caught};
}

// 6. Snapshot and segment persistence, plus corruption detection.
Outcome persistence() {
  Outcome o;
  Rng rng(6006);
  TempDir dir;
  for (int i = 0; i < 5; ++i) {
    const auto g = make_random_graph(11000 + i, 20000, 100000, 20000);
    const auto snap = GraphSnapshot::build(g.nodes, g.edges, "2018-08");
    const auto path = dir / ("g" + std::to_string(i) + ".wgs");
    save_snapshot(snap, path);
    const auto back = load_snapshot(path);
    if (back.id() != snap.id() || back.counts() != snap.counts()) o.fail("snapshot header changed on reload");
    if (!same_answers(back, snap, g, rng, 1000)) o.fail("snapshot answers changed on reload");
  }

  std::vector<PageId> pages(2000);
  std::iota(pages.begin(), pages.end(), 1);
  std::vector<std::vector<HourlyVisit>> month;
  {
    auto store = TimeSeriesStore::open(dir / "ts");
    for (int d = 0; d < 7; ++d) {
      month.push_back(make_day_visits(12000 + d, pages, kDay + days(d)));
      store.ingest_day(kDay + days(d), month.back());
    }
  }
  const auto reopened = TimeSeriesStore::open(dir / "ts");
  const auto oracle = threshold_oracle(month, kDailyThreshold);
  for (int k = 0; k < 1000; ++k) {
    const PageId p = pages[rng() % pages.size()];
    std::int64_t a = to_epoch_seconds(start_of(kDay)) + 3600 * static_cast<std::int64_t>(rng() % (24 * 7));
    std::int64_t b = to_epoch_seconds(start_of(kDay)) + 3600 * static_cast<std::int64_t>(rng() % (24 * 7));
    if (a > b) std::swap(a, b);
    std::vector<std::pair<std::int64_t, std::uint64_t>> got;
    for (const auto& hc : reopened.query_range(p, from_epoch_seconds(a), from_epoch_seconds(b))) {
      got.emplace_back(to_epoch_seconds(hc.hour), hc.count);
    }
    if (got != range_oracle(oracle, p, a, b)) {
      o.fail("segment answers changed on reload");
      break;
    }
  }

  const auto small = make_random_graph(13000, 300, 1200, 300);
  const auto snap_bytes = serialize_snapshot(GraphSnapshot::build(small.nodes, small.edges, "2018-08"));
  const auto [sf, sc] = flip_every_byte(snap_bytes, 1, [](const auto& b) { deserialize_snapshot(b); });
  std::vector<SegmentRecord> recs;
  reopened.scan([&](PageId p, Timestamp h, std::uint32_t c) {
    if (day_of(h) == kDay) recs.push_back({p, to_epoch_seconds(h), c});
  });
  const auto seg_bytes = encode_segment(kDay, recs);
  const auto [gf, gc] = flip_every_byte(seg_bytes, std::max<std::size_t>(1, seg_bytes.size() / 4000),
                                        [](const auto& b) { decode_segment(b); });
  if (sc != sf) o.fail("snapshot: " + std::to_string(sf - sc) + " of " + std::to_string(sf) + " flips undetected");
  if (gc != gf) o.fail("segment: " + std::to_string(gf - gc) + " of " + std::to_string(gf) + " flips undetected");
  if (o.pass) {
    o.detail = "5 snapshots + 7-day store reloaded; " + std::to_string(sf) + " + " + std::to_string(gf) +
               " single-byte flips all detected";
  }
  return o;
}

// 7. induced_edges vs full scan, and depth-2 neighbourhood latency.
Outcome performance() {
  Outcome o;
  auto g = make_power_law_graph(14000, kPerfNodes, 21.0);
  Rng rng(7007);
  if (g.edges.size() > kPerfEdges) {
    std::shuffle(g.edges.begin(), g.edges.end(), rng);
    g.edges.resize(kPerfEdges);
  } else {
    std::set<Edge> have(g.edges.begin(), g.edges.end());
    while (have.size() < kPerfEdges) {
      const PageId s = 1 + rng() % kPerfNodes, t = 1 + rng() % kPerfNodes;
      if (s != t) have.insert(Edge{s, t, EdgeKind::kLinksTo});
    }
    g.edges.assign(have.begin(), have.end());
  }
  std::sort(g.edges.begin(), g.edges.end());
  const auto snap = GraphSnapshot::build(g.nodes, g.edges);
  if (snap.counts().links_to != kPerfEdges) o.fail("graph has " + std::to_string(snap.counts().links_to) + " edges");

  double fast = 1e9, slow = 1e9;
  for (int rep = 0; rep < 5; ++rep) {
    std::set<PageId> subset;
    while (subset.size() < kPerfSubset) subset.insert(1 + rng() % kPerfNodes);
    const std::vector<PageId> ids(subset.begin(), subset.end());
    auto t0 = Clock::now();
    const auto got = snap.induced_edges(ids, EdgeKind::kLinksTo);
    fast = std::min(fast, seconds_since(t0));
    t0 = Clock::now();
    const auto want = induced_scan_oracle(g.edges, subset, EdgeKind::kLinksTo);
    slow = std::min(slow, seconds_since(t0));
    if (got != want) o.fail("induced_edges disagrees with the scan");
  }
  const double speedup = slow / std::max(fast, 1e-9);
  if (speedup < kInducedSpeedupMin) o.fail("induced_edges only " + fmt(speedup, 1) + "x faster than a scan");

  const QueryEngine q(snap);
  double worst = 0;
  // id 1 draws the most in-links; also take the largest out-degree
  PageId hub = 1;
  for (PageId id = 1; id <= kPerfNodes; ++id) {
    if (snap.degree(id, EdgeKind::kLinksTo, Direction::kOut) > snap.degree(hub, EdgeKind::kLinksTo, Direction::kOut)) hub = id;
  }
  std::vector<PageId> roots{1, hub};
  for (int k = 0; k < 18; ++k) roots.push_back(1 + rng() % kPerfNodes);
  std::size_t largest = 0;
  for (PageId r : roots) {
    const auto t0 = Clock::now();
    const auto s = q.neighborhood(r, 2);
    worst = std::max(worst, seconds_since(t0));
    largest = std::max(largest, s.nodes.size());
  }
  if (worst >= kNeighborhoodBudgetSeconds) o.fail("depth-2 neighborhood took " + fmt(worst, 3) + " s");
  if (o.pass) {
    o.detail = "100K nodes / 2M edges; induced " + fmt(speedup, 1) + "x faster than scan; worst depth-2 query " +
               fmt(worst, 3) + " s (largest " + std::to_string(largest) + " nodes)";
  }
  return o;
}

std::vector<std::string> tinywiki_run(const fs::path& work) {
  const fs::path tiny = fs::path(WIKIGRAPH_FIXTURES) / "tinywiki";
  Workspace ws(work);
  const auto r = ingest_graph_files(
      {tiny / "page.sql", tiny / "redirect.sql", tiny / "pagelinks.sql", tiny / "categorylinks.sql"});
  ws.save_graph(r.graph);
  auto store = ws.open_timeseries();
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(tiny / "pagecounts")) files.push_back(e.path());
  ingest_pagecount_files(store, r.graph, files);
  ws.registry().freeze(ws.load_graph(), store, "2018-08");
  const auto bundle = ws.registry().open("2018-08");
  const QueryEngine q(bundle.graph, &bundle.series);
  const auto from = start_of(kDay), to = start_of(kDay + days(1));
  std::vector<Subgraph> subs{q.category_closure(2, DepthSpec::unlimited()), q.category_closure(2, DepthSpec::of(0)),
                             q.neighborhood(1, 1), q.neighborhood(3, 2, 1)};
  subs.push_back(q.attach_series(q.filter_by_visits(subs[0], 150, from, to), from, to));
  subs.push_back(q.attach_series(subs[2], from, to));
  std::vector<std::string> out;
  for (const auto& s : subs) {
    for (auto f : {ExportFormat::kEdgeListCsv, ExportFormat::kJsonGraph, ExportFormat::kGraphMl}) {
      out.push_back(export_subgraph(s, f));
    }
  }
  out.push_back(nlohmann::json(r.report).dump());
  return out;
}

// 8. TinyWiki end to end, twice.
Outcome tinywiki() {
  Outcome o;
  TempDir a, b;
  const auto first = tinywiki_run(a.path());
  const auto second = tinywiki_run(b.path());
  if (first != second) o.fail("outputs differ between runs");
  const std::string closure_csv =
      "source_id,target_id,kind\n1,3,links_to\n1,6,belongs_to\n3,1,links_to\n3,2,belongs_to\n6,2,belongs_to\n";
  if (first[0] != closure_csv) o.fail("unexpected closure edges for Physics");
  if (first[3] != "source_id,target_id,kind\n3,2,belongs_to\n") o.fail("unexpected depth-0 closure");
  const auto filtered = nlohmann::json::parse(first[13]);
  // Einstein has 240 visits that day, Physics only 120
  if (filtered["nodes"].size() != 1 || filtered["nodes"][0]["id"] != 1) o.fail("unexpected filtered closure");
  const auto series = nlohmann::json::parse(first[16]);
  if (series["series"]["1"].size() != 24 || series["series"]["5"].size() != 2 || !series["series"]["3"].empty()) {
    o.fail("unexpected attached series");
  }
  if (o.pass) o.detail = std::to_string(first.size()) + " outputs byte-identical across two runs";
  return o;
}

}  // namespace
}  // namespace wikigraph::testing

int main() {
  using namespace wikigraph::testing;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"redirect_resolution_oracle", redirect_resolution},
      {"category_closure_oracle", category_closure},
      {"neighborhood_oracle", neighborhood},
      {"threshold_semantics", threshold_semantics},
      {"update_round_trip", update_round_trip},
      {"persistence_fidelity", persistence},
      {"performance", performance},
      {"tinywiki_end_to_end", tinywiki},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
