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

#include "wikigraph/graph_store.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "wikigraph/binary_io.h"

namespace wikigraph {

namespace {

constexpr std::array<char, 8> kMagic{'W', 'K', 'G', 'S', 'N', 'A', 'P', '\0'};

struct Csr {
  std::vector<std::uint64_t> offsets;
  std::vector<GraphSnapshot::Index> targets;

  std::span<const GraphSnapshot::Index> row(GraphSnapshot::Index i) const {
    return {targets.data() + offsets[i], targets.data() + offsets[i + 1]};
  }
};

struct TitleKey {
  NodeKind kind;
  std::string_view title;
  bool operator==(const TitleKey&) const = default;
};

struct TitleHash {
  std::size_t operator()(const TitleKey& k) const noexcept {
    return std::hash<std::string_view>{}(k.title) ^ (static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ull);
  }
};

std::size_t slot(EdgeKind kind, Direction dir) {
  return static_cast<std::size_t>(kind) * 2 + static_cast<std::size_t>(dir);
}

std::string describe(const Edge& e) {
  return std::to_string(e.source) + " -> " + std::to_string(e.target) + " (" + std::string(to_string(e.kind)) + ")";
}

}  // namespace

struct GraphSnapshot::Data {
  std::vector<PageId> ids;
  std::vector<NodeKind> kinds;
  std::vector<std::uint64_t> title_offsets{0};
  std::string titles;
  std::unordered_map<PageId, Index> index;
  std::unordered_map<TitleKey, Index, TitleHash> by_title;
  std::array<Csr, 4> adj;
  GraphCounts counts;
  SnapshotId id;

  std::string_view title(Index i) const {
    return std::string_view(titles).substr(title_offsets[i], title_offsets[i + 1] - title_offsets[i]);
  }

  void index_titles() {
    by_title.reserve(ids.size());
    for (Index i = 0; i < ids.size(); ++i) by_title.emplace(TitleKey{kinds[i], title(i)}, i);
  }

  std::string compute_hash() const {
    Sha256 h;
    h.update(std::string_view("wikigraph-graph-v1"));
    h.update_u64(ids.size());
    for (Index i = 0; i < ids.size(); ++i) {
      h.update_u64(ids[i]);
      h.update_u64(static_cast<std::uint64_t>(kinds[i]));
      h.update_u64(title(i).size());
      h.update(title(i));
    }
    for (EdgeKind kind : {EdgeKind::kLinksTo, EdgeKind::kBelongsTo}) {
      const auto& csr = adj[slot(kind, Direction::kOut)];
      h.update_u64(csr.targets.size());
      for (Index u = 0; u < ids.size(); ++u) {
        for (Index v : csr.row(u)) {
          h.update_u64(ids[u]);
          h.update_u64(ids[v]);
        }
      }
    }
    return h.hex_digest();
  }
};

namespace {

// Builds forward and reverse CSR from (source, target) index pairs that are
// sorted and unique; both directions come out with ascending rows.
void fill_csr(std::size_t n, const std::vector<std::pair<GraphSnapshot::Index, GraphSnapshot::Index>>& pairs,
              Csr& out_csr, Csr& in_csr) {
  out_csr.offsets.assign(n + 1, 0);
  in_csr.offsets.assign(n + 1, 0);
  for (const auto& [s, t] : pairs) {
    ++out_csr.offsets[s + 1];
    ++in_csr.offsets[t + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_csr.offsets[i + 1] += out_csr.offsets[i];
    in_csr.offsets[i + 1] += in_csr.offsets[i];
  }
  out_csr.targets.resize(pairs.size());
  in_csr.targets.resize(pairs.size());
  std::vector<std::uint64_t> cursor(in_csr.offsets.begin(), in_csr.offsets.end() - 1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [s, t] = pairs[k];
    out_csr.targets[k] = t;
    in_csr.targets[cursor[t]++] = s;
  }
}

}  // namespace

std::string SnapshotId::to_string() const {
  return (label.empty() ? std::string("unlabeled") : label) + "@" + content_hash.substr(0, 16);
}

void to_json(nlohmann::json& j, const SnapshotId& id) {
  j = nlohmann::json{{"label", id.label}, {"content_hash", id.content_hash}};
}

void to_json(nlohmann::json& j, const GraphCounts& c) {
  j = nlohmann::json{
      {"articles", c.articles}, {"categories", c.categories}, {"links_to", c.links_to}, {"belongs_to", c.belongs_to}};
}

GraphSnapshot::GraphSnapshot() : GraphSnapshot(build({}, {})) {}

GraphSnapshot::GraphSnapshot(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

GraphSnapshot GraphSnapshot::build(std::vector<Node> nodes, std::vector<Edge> edges, std::string label) {
  auto data = std::make_shared<Data>();
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  const std::size_t n = nodes.size();
  if (n > std::numeric_limits<Index>::max()) throw GraphBuildError("too many nodes for a snapshot");

  data->ids.reserve(n);
  data->kinds.reserve(n);
  data->title_offsets.reserve(n + 1);
  data->index.reserve(n);
  for (const auto& node : nodes) {
    if (!data->ids.empty() && data->ids.back() == node.id) {
      throw GraphBuildError("duplicate node id " + std::to_string(node.id));
    }
    data->index.emplace(node.id, static_cast<Index>(data->ids.size()));
    data->ids.push_back(node.id);
    data->kinds.push_back(node.kind);
    data->titles += node.title;
    data->title_offsets.push_back(data->titles.size());
    if (node.kind == NodeKind::kArticle) {
      ++data->counts.articles;
    } else {
      ++data->counts.categories;
    }
  }
  nodes.clear();
  nodes.shrink_to_fit();
  data->index_titles();
  if (data->by_title.size() != n) {
    for (Index i = 0; i < n; ++i) {
      if (data->by_title.at(TitleKey{data->kinds[i], data->title(i)}) != i) {
        throw GraphBuildError("duplicate " + std::string(to_string(data->kinds[i])) + " title '" +
                              std::string(data->title(i)) + "'");
      }
    }
  }

  std::array<std::vector<std::pair<Index, Index>>, 2> pairs;
  for (const auto& e : edges) {
    auto s = data->index.find(e.source);
    auto t = data->index.find(e.target);
    if (s == data->index.end() || t == data->index.end()) {
      throw GraphBuildError("edge " + describe(e) + " references an unknown node");
    }
    const NodeKind sk = data->kinds[s->second];
    const NodeKind tk = data->kinds[t->second];
    if (e.kind == EdgeKind::kLinksTo && (sk != NodeKind::kArticle || tk != NodeKind::kArticle)) {
      throw GraphBuildError("edge " + describe(e) + " must connect two articles");
    }
    if (e.kind == EdgeKind::kBelongsTo && tk != NodeKind::kCategory) {
      throw GraphBuildError("edge " + describe(e) + " must end at a category");
    }
    pairs[static_cast<std::size_t>(e.kind)].emplace_back(s->second, t->second);
  }
  edges.clear();
  edges.shrink_to_fit();
  for (EdgeKind kind : {EdgeKind::kLinksTo, EdgeKind::kBelongsTo}) {
    auto& p = pairs[static_cast<std::size_t>(kind)];
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    fill_csr(n, p, data->adj[slot(kind, Direction::kOut)], data->adj[slot(kind, Direction::kIn)]);
  }
  data->counts.links_to = pairs[0].size();
  data->counts.belongs_to = pairs[1].size();
  data->id = SnapshotId{std::move(label), data->compute_hash()};
  return GraphSnapshot(std::move(data));
}

const SnapshotId& GraphSnapshot::id() const { return data_->id; }

const GraphCounts& GraphSnapshot::counts() const { return data_->counts; }

std::size_t GraphSnapshot::node_count() const { return data_->ids.size(); }

std::size_t GraphSnapshot::edge_count(EdgeKind kind) const {
  return data_->adj[slot(kind, Direction::kOut)].targets.size();
}

GraphSnapshot GraphSnapshot::relabeled(std::string label) const {
  // Title keys view into `titles`, so the copy must rebuild them.
  auto copy = std::make_shared<Data>();
  copy->ids = data_->ids;
  copy->kinds = data_->kinds;
  copy->title_offsets = data_->title_offsets;
  copy->titles = data_->titles;
  copy->index = data_->index;
  copy->adj = data_->adj;
  copy->counts = data_->counts;
  copy->index_titles();
  copy->id = SnapshotId{std::move(label), data_->id.content_hash};
  return GraphSnapshot(std::move(copy));
}

std::optional<GraphSnapshot::Index> GraphSnapshot::index_of(PageId id) const {
  auto it = data_->index.find(id);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

PageId GraphSnapshot::id_at(Index i) const { return data_->ids[i]; }

NodeKind GraphSnapshot::kind_at(Index i) const { return data_->kinds[i]; }

std::string_view GraphSnapshot::title_at(Index i) const { return data_->title(i); }

Node GraphSnapshot::node_at(Index i) const { return Node{data_->ids[i], std::string(data_->title(i)), data_->kinds[i]}; }

std::span<const GraphSnapshot::Index> GraphSnapshot::adjacent(Index i, EdgeKind kind, Direction dir) const {
  return data_->adj[slot(kind, dir)].row(i);
}

std::optional<Node> GraphSnapshot::lookup(PageId id) const {
  auto i = index_of(id);
  if (!i) return std::nullopt;
  return node_at(*i);
}

std::optional<Node> GraphSnapshot::lookup(NodeKind kind, std::string_view title) const {
  auto it = data_->by_title.find(TitleKey{kind, title});
  if (it == data_->by_title.end()) return std::nullopt;
  return node_at(it->second);
}

std::vector<PageId> GraphSnapshot::neighbors(PageId id, EdgeKind kind, Direction dir) const {
  auto i = index_of(id);
  if (!i) throw NotFoundError("unknown node " + std::to_string(id));
  const auto row = adjacent(*i, kind, dir);
  std::vector<PageId> out;
  out.reserve(row.size());
  for (Index j : row) out.push_back(data_->ids[j]);
  return out;
}

std::size_t GraphSnapshot::degree(PageId id, EdgeKind kind, Direction dir) const {
  auto i = index_of(id);
  if (!i) throw NotFoundError("unknown node " + std::to_string(id));
  return adjacent(*i, kind, dir).size();
}

std::vector<Edge> GraphSnapshot::induced_edges(std::span<const PageId> ids, EdgeKind kind) const {
  std::vector<Index> members;
  members.reserve(ids.size());
  for (PageId id : ids) {
    if (auto i = index_of(id)) members.push_back(*i);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Edge> out;
  // A bitmap costs node_count/8 bytes to clear; worth it once the member
  // set is big enough that binary searches dominate.
  if (members.size() * 256 >= node_count()) {
    std::vector<std::uint64_t> bits((node_count() + 63) / 64);
    for (Index u : members) bits[u >> 6] |= std::uint64_t{1} << (u & 63);
    for (Index u : members) {
      for (Index v : adjacent(u, kind, Direction::kOut)) {
        if (bits[v >> 6] >> (v & 63) & 1) out.push_back(Edge{data_->ids[u], data_->ids[v], kind});
      }
    }
    return out;
  }
  for (Index u : members) {
    for (Index v : adjacent(u, kind, Direction::kOut)) {
      if (std::binary_search(members.begin(), members.end(), v)) {
        out.push_back(Edge{data_->ids[u], data_->ids[v], kind});
      }
    }
  }
  return out;
}

std::vector<Node> GraphSnapshot::nodes() const {
  std::vector<Node> out;
  out.reserve(node_count());
  for (Index i = 0; i < node_count(); ++i) out.push_back(node_at(i));
  return out;
}

std::vector<Edge> GraphSnapshot::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count(EdgeKind::kLinksTo) + edge_count(EdgeKind::kBelongsTo));
  for (EdgeKind kind : {EdgeKind::kLinksTo, EdgeKind::kBelongsTo}) {
    for_each_edge(kind, [&](PageId s, PageId t) { out.push_back(Edge{s, t, kind}); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

void GraphSnapshot::for_each_edge(EdgeKind kind, const std::function<void(PageId, PageId)>& fn) const {
  const auto& csr = data_->adj[slot(kind, Direction::kOut)];
  for (Index u = 0; u < node_count(); ++u) {
    for (Index v : csr.row(u)) fn(data_->ids[u], data_->ids[v]);
  }
}

std::vector<std::uint8_t> serialize_snapshot(const GraphSnapshot& snapshot) {
  const auto n = snapshot.node_count();

  ByteWriter nodes;
  for (GraphSnapshot::Index i = 0; i < n; ++i) {
    nodes.u64(snapshot.id_at(i));
    nodes.u8(static_cast<std::uint8_t>(snapshot.kind_at(i)));
    nodes.str(snapshot.title_at(i));
  }

  std::array<ByteWriter, 4> sections;
  for (EdgeKind kind : {EdgeKind::kLinksTo, EdgeKind::kBelongsTo}) {
    for (Direction dir : {Direction::kOut, Direction::kIn}) {
      auto& w = sections[slot(kind, dir)];
      w.u64(snapshot.edge_count(kind));
      std::uint64_t offset = 0;
      w.u64(0);
      for (GraphSnapshot::Index i = 0; i < n; ++i) {
        offset += snapshot.adjacent(i, kind, dir).size();
        w.u64(offset);
      }
      for (GraphSnapshot::Index i = 0; i < n; ++i) {
        for (auto j : snapshot.adjacent(i, kind, dir)) w.u64(snapshot.id_at(j));
      }
    }
  }

  ByteWriter header;
  header.bytes(std::string_view(kMagic.data(), kMagic.size()));
  header.u32(kSnapshotFormatVersion);
  header.str(snapshot.id().label);
  header.str(snapshot.id().content_hash);
  const auto& c = snapshot.counts();
  header.u64(c.articles);
  header.u64(c.categories);
  header.u64(c.links_to);
  header.u64(c.belongs_to);
  header.u64(n);
  header.u64(nodes.size());
  header.u32(crc32(nodes.buffer()));
  std::uint64_t total = nodes.size();
  for (const auto& s : sections) {
    header.u64(s.size());
    header.u32(crc32(s.buffer()));
    total += s.size();
  }
  const std::size_t size_field = header.size();
  header.u64(0);
  total += header.size() + 4;
  header.patch_u64(size_field, total);
  header.u32(crc32(header.buffer()));

  auto out = std::move(header.buffer());
  out.reserve(total);
  out.insert(out.end(), nodes.buffer().begin(), nodes.buffer().end());
  for (const auto& s : sections) out.insert(out.end(), s.buffer().begin(), s.buffer().end());
  return out;
}

GraphSnapshot deserialize_snapshot(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.bytes(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin(), [](std::uint8_t a, char b) {
        return a == static_cast<std::uint8_t>(b);
      })) {
    throw FormatError("not a graph snapshot (bad magic)");
  }
  const auto version = r.u32();
  if (version != kSnapshotFormatVersion) {
    throw VersionMismatchError("graph snapshot format version " + std::to_string(version) + ", expected " +
                               std::to_string(kSnapshotFormatVersion));
  }
  std::string label = r.str();
  std::string hash = r.str();
  GraphCounts counts;
  counts.articles = r.u64();
  counts.categories = r.u64();
  counts.links_to = r.u64();
  counts.belongs_to = r.u64();
  const auto n = r.u64();
  struct Section {
    std::uint64_t length;
    std::uint32_t crc;
  };
  std::array<Section, 5> sections{};
  for (auto& s : sections) {
    s.length = r.u64();
    s.crc = r.u32();
  }
  const auto total = r.u64();
  const auto header_len = r.position();
  const auto header_crc = r.u32();
  if (crc32(bytes.subspan(0, header_len)) != header_crc) throw ChecksumError("graph snapshot header checksum mismatch");
  if (bytes.size() < total) {
    throw TruncatedFileError("graph snapshot truncated: " + std::to_string(bytes.size()) + " of " +
                             std::to_string(total) + " bytes");
  }
  if (bytes.size() > total) throw FormatError("graph snapshot has trailing bytes");

  std::array<std::span<const std::uint8_t>, 5> payload;
  for (std::size_t k = 0; k < sections.size(); ++k) {
    payload[k] = r.bytes(sections[k].length);
    if (crc32(payload[k]) != sections[k].crc) {
      static constexpr std::array<const char*, 5> kNames{"node table", "links_to/out adjacency",
                                                         "links_to/in adjacency", "belongs_to/out adjacency",
                                                         "belongs_to/in adjacency"};
      throw ChecksumError(std::string("graph snapshot checksum mismatch in ") + kNames[k]);
    }
  }

  std::vector<Node> nodes;
  nodes.reserve(n);
  ByteReader nr(payload[0]);
  for (std::uint64_t i = 0; i < n; ++i) {
    Node node;
    node.id = nr.u64();
    const auto kind = nr.u8();
    if (kind > 1) throw FormatError("graph snapshot node has invalid kind");
    node.kind = static_cast<NodeKind>(kind);
    node.title = nr.str();
    nodes.push_back(std::move(node));
  }
  std::vector<PageId> ids;
  ids.reserve(n);
  for (const auto& node : nodes) ids.push_back(node.id);

  // Decodes one adjacency section into (row id, neighbour id) pairs.
  auto read_section = [&](std::span<const std::uint8_t> data, bool reverse) {
    ByteReader sr(data);
    const auto m = sr.u64();
    std::vector<std::uint64_t> offsets(n + 1);
    for (auto& o : offsets) o = sr.u64();
    if (offsets.front() != 0 || offsets.back() != m || !std::is_sorted(offsets.begin(), offsets.end())) {
      throw FormatError("graph snapshot adjacency offsets are inconsistent");
    }
    std::vector<Edge> out;
    out.reserve(m);
    for (std::uint64_t i = 0; i < n; ++i) {
      for (auto k = offsets[i]; k < offsets[i + 1]; ++k) {
        const PageId other = sr.u64();
        out.push_back(reverse ? Edge{other, ids[i], EdgeKind::kLinksTo} : Edge{ids[i], other, EdgeKind::kLinksTo});
      }
    }
    if (sr.remaining() != 0) throw FormatError("graph snapshot adjacency section has trailing bytes");
    return out;
  };

  std::vector<Edge> edges;
  for (EdgeKind kind : {EdgeKind::kLinksTo, EdgeKind::kBelongsTo}) {
    auto fwd = read_section(payload[1 + slot(kind, Direction::kOut)], false);
    auto rev = read_section(payload[1 + slot(kind, Direction::kIn)], true);
    std::sort(rev.begin(), rev.end());
    if (fwd != rev) throw FormatError("graph snapshot reverse adjacency is not the transpose of the forward one");
    for (auto& e : fwd) {
      e.kind = kind;
      edges.push_back(e);
    }
  }

  GraphSnapshot snapshot;
  try {
    snapshot = GraphSnapshot::build(std::move(nodes), std::move(edges), std::move(label));
  } catch (const GraphBuildError& e) {
    throw FormatError(std::string("graph snapshot content is invalid: ") + e.what());
  }
  if (snapshot.id().content_hash != hash || snapshot.counts() != counts) {
    throw ChecksumError("graph snapshot content does not match its recorded hash");
  }
  return snapshot;
}

void save_snapshot(const GraphSnapshot& snapshot, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_snapshot(snapshot));
}

GraphSnapshot load_snapshot(const std::filesystem::path& path) { return deserialize_snapshot(read_file_bytes(path)); }

}  // namespace wikigraph
