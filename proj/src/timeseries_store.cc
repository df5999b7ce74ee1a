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

#include "wikigraph/timeseries_store.h"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "wikigraph/binary_io.h"
#include "wikigraph/graph_store.h"
#include "wikigraph/time_util.h"

namespace wikigraph {

namespace {

constexpr std::array<char, 8> kSegMagic{'W', 'K', 'G', 'T', 'S', 'E', 'G', '\0'};
constexpr const char* kManifestFile = "manifest.json";
constexpr std::int64_t kSecondsPerDay = 86400;

bool key_less(const SegmentRecord& a, const SegmentRecord& b) {
  return a.page != b.page ? a.page < b.page : a.hour < b.hour;
}

struct Segment {
  SegmentInfo info;
  std::vector<SegmentRecord> records;
  // First key of every block of kSegmentBlockSize records.
  std::vector<SegmentRecord> block_keys;

  void index_blocks() {
    block_keys.clear();
    for (std::size_t i = 0; i < records.size(); i += kSegmentBlockSize) block_keys.push_back(records[i]);
  }

  // First record with key >= (page, hour).
  std::size_t lower_bound(PageId page, std::int64_t hour) const {
    const SegmentRecord probe{page, hour, 0};
    // The answer lies in the last block whose first key is <= probe, or is
    // the first record of the following block.
    const auto after = std::upper_bound(block_keys.begin(), block_keys.end(), probe, key_less);
    const std::size_t block = after == block_keys.begin() ? 0 : static_cast<std::size_t>(after - block_keys.begin()) - 1;
    const auto first = records.begin() + static_cast<std::ptrdiff_t>(block * kSegmentBlockSize);
    const auto last = records.begin() + static_cast<std::ptrdiff_t>(std::min(records.size(), (block + 1) * kSegmentBlockSize));
    return static_cast<std::size_t>(std::lower_bound(first, last, probe, key_less) - records.begin());
  }
};

using SegmentMap = std::map<Day, std::shared_ptr<const Segment>>;

std::string segment_file_name(Day day, std::uint64_t generation) {
  return format_date(day) + "." + std::to_string(generation) + ".seg";
}

std::uint64_t generation_of(const std::string& file) {
  // YYYY-MM-DD.<gen>.seg
  const auto first = file.find('.');
  const auto last = file.rfind('.');
  if (first == std::string::npos || last <= first) return 0;
  return std::stoull(file.substr(first + 1, last - first - 1));
}

void require_range(Timestamp start, Timestamp end) {
  require_hour_aligned(start, "range start");
  require_hour_aligned(end, "range end");
  if (end < start) throw ContractViolation("range end precedes start");
}

}  // namespace

void to_json(nlohmann::json& j, const IngestSummary& s) {
  j = nlohmann::json{{"pages_seen", s.pages_seen},
                     {"pages_kept", s.pages_kept},
                     {"records_stored", s.records_stored},
                     {"unresolved_titles", s.unresolved_titles},
                     {"input_records", s.input_records},
                     {"reduction_ratio", s.reduction_ratio()}};
}

std::vector<Day> TimeSeriesManifest::days() const {
  std::vector<Day> out;
  out.reserve(segments.size());
  for (const auto& s : segments) out.push_back(s.day);
  return out;
}

std::string TimeSeriesManifest::content_hash() const {
  Sha256 h;
  h.update(std::string_view("wikigraph-timeseries-v1"));
  h.update_u64(segments.size());
  for (const auto& s : segments) {
    h.update_u64(static_cast<std::uint64_t>(to_epoch_days(s.day)));
    h.update_u64(s.records);
    h.update_u64(s.checksum);
  }
  return h.hex_digest();
}

void to_json(nlohmann::json& j, const TimeSeriesManifest& m) {
  auto segs = nlohmann::json::array();
  for (const auto& s : m.segments) {
    segs.push_back({{"day", format_date(s.day)}, {"file", s.file}, {"records", s.records}, {"checksum", s.checksum}});
  }
  j = nlohmann::json{{"format", kSegmentFormatVersion}, {"segments", std::move(segs)}};
}

void from_json(const nlohmann::json& j, TimeSeriesManifest& m) {
  if (j.at("format").get<std::uint32_t>() != kSegmentFormatVersion) {
    throw VersionMismatchError("time-series manifest format mismatch");
  }
  m.segments.clear();
  for (const auto& s : j.at("segments")) {
    auto day = parse_date(s.at("day").get<std::string>());
    if (!day) throw FormatError("time-series manifest has a bad day");
    m.segments.push_back(SegmentInfo{*day, s.at("file").get<std::string>(), s.at("records").get<std::uint64_t>(),
                                     s.at("checksum").get<std::uint32_t>()});
  }
  std::sort(m.segments.begin(), m.segments.end(),
            [](const SegmentInfo& a, const SegmentInfo& b) { return a.day < b.day; });
}

std::vector<std::uint8_t> encode_segment(Day day, std::span<const SegmentRecord> records) {
  ByteWriter w;
  w.bytes(std::string_view(kSegMagic.data(), kSegMagic.size()));
  w.u32(kSegmentFormatVersion);
  w.i64(to_epoch_days(day));
  w.u64(records.size());
  const auto blocks = static_cast<std::uint32_t>((records.size() + kSegmentBlockSize - 1) / kSegmentBlockSize);
  w.u32(kSegmentBlockSize);
  w.u32(blocks);
  for (const auto& r : records) {
    w.u64(r.page);
    w.i64(r.hour);
    w.u32(r.count);
  }
  for (std::uint32_t b = 0; b < blocks; ++b) {
    const auto& r = records[static_cast<std::size_t>(b) * kSegmentBlockSize];
    w.u64(r.page);
    w.i64(r.hour);
    w.u64(static_cast<std::uint64_t>(b) * kSegmentBlockSize);
  }
  w.u32(crc32(w.buffer()));
  return std::move(w.buffer());
}

DecodedSegment decode_segment(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.bytes(kSegMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kSegMagic.begin(),
                  [](std::uint8_t a, char b) { return a == static_cast<std::uint8_t>(b); })) {
    throw FormatError("not a time-series segment (bad magic)");
  }
  const auto version = r.u32();
  if (version != kSegmentFormatVersion) {
    throw VersionMismatchError("segment format version " + std::to_string(version) + ", expected " +
                               std::to_string(kSegmentFormatVersion));
  }
  DecodedSegment out;
  out.day = from_epoch_days(r.i64());
  const auto n = r.u64();
  const auto block_size = r.u32();
  const auto blocks = r.u32();
  constexpr std::uint64_t kRecordBytes = 20;
  constexpr std::uint64_t kIndexBytes = 24;
  const std::uint64_t expected = r.position() + n * kRecordBytes + std::uint64_t{blocks} * kIndexBytes + 4;
  if (n > bytes.size() || bytes.size() < expected) throw TruncatedFileError("segment truncated");
  if (bytes.size() > expected) throw FormatError("segment has trailing bytes");
  const auto body = bytes.subspan(0, bytes.size() - 4);
  ByteReader tail(bytes.subspan(bytes.size() - 4));
  out.checksum = tail.u32();
  if (crc32(body) != out.checksum) throw ChecksumError("segment checksum mismatch");
  if (block_size != kSegmentBlockSize || blocks != (n + block_size - 1) / block_size) {
    throw FormatError("segment block index is inconsistent");
  }
  const auto day_start = to_epoch_days(out.day) * kSecondsPerDay;
  out.records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    SegmentRecord rec;
    rec.page = r.u64();
    rec.hour = r.i64();
    rec.count = r.u32();
    if (rec.count == 0 || rec.hour < day_start || rec.hour >= day_start + kSecondsPerDay || rec.hour % 3600 != 0 ||
        (!out.records.empty() && !key_less(out.records.back(), rec))) {
      throw FormatError("segment record " + std::to_string(i) + " is out of order or out of range");
    }
    out.records.push_back(rec);
  }
  return out;
}

struct TimeSeriesStore::Impl {
  std::optional<std::filesystem::path> dir;
  bool read_only = false;
  mutable std::mutex mu;
  std::shared_ptr<const SegmentMap> segments = std::make_shared<SegmentMap>();

  std::shared_ptr<const SegmentMap> view() const {
    std::lock_guard lock(mu);
    return segments;
  }

  std::shared_ptr<const Segment> load_segment(const SegmentInfo& info) const {
    auto decoded = decode_segment(read_file_bytes(*dir / info.file));
    if (decoded.checksum != info.checksum || decoded.day != info.day || decoded.records.size() != info.records) {
      throw ChecksumError("segment " + info.file + " does not match the manifest");
    }
    auto seg = std::make_shared<Segment>();
    seg->info = info;
    seg->records = std::move(decoded.records);
    seg->index_blocks();
    return seg;
  }

  void load(const TimeSeriesManifest& manifest) {
    auto map = std::make_shared<SegmentMap>();
    for (const auto& info : manifest.segments) (*map)[info.day] = load_segment(info);
    segments = std::move(map);
  }

  TimeSeriesManifest manifest_of(const SegmentMap& map) const {
    TimeSeriesManifest m;
    for (const auto& [day, seg] : map) m.segments.push_back(seg->info);
    return m;
  }
};

TimeSeriesStore::TimeSeriesStore(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
TimeSeriesStore::TimeSeriesStore(TimeSeriesStore&&) noexcept = default;
TimeSeriesStore& TimeSeriesStore::operator=(TimeSeriesStore&&) noexcept = default;
TimeSeriesStore::~TimeSeriesStore() = default;

TimeSeriesStore TimeSeriesStore::in_memory() { return TimeSeriesStore(std::make_unique<Impl>()); }

TimeSeriesStore TimeSeriesStore::open(const std::filesystem::path& dir) {
  auto impl = std::make_unique<Impl>();
  impl->dir = dir;
  std::filesystem::create_directories(dir);
  const auto manifest_path = dir / kManifestFile;
  if (std::filesystem::exists(manifest_path)) {
    const auto bytes = read_file_bytes(manifest_path);
    TimeSeriesManifest manifest;
    try {
      manifest = nlohmann::json::parse(bytes.begin(), bytes.end()).get<TimeSeriesManifest>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("time-series manifest is unreadable: ") + e.what());
    }
    impl->load(manifest);
  }
  return TimeSeriesStore(std::move(impl));
}

TimeSeriesStore TimeSeriesStore::open_frozen(const std::filesystem::path& dir, const TimeSeriesManifest& manifest) {
  auto impl = std::make_unique<Impl>();
  impl->dir = dir;
  impl->read_only = true;
  impl->load(manifest);
  return TimeSeriesStore(std::move(impl));
}

IngestSummary TimeSeriesStore::ingest_day(Day day, std::span<const HourlyVisit> visits, DailyThresholdPolicy policy) {
  if (impl_->read_only) throw std::logic_error("time-series store is read-only (frozen view)");
  const Timestamp day_start = start_of(day);
  const Timestamp day_end = day_start + std::chrono::days{1};

  std::vector<std::pair<SegmentRecord, std::uint64_t>> raw;
  raw.reserve(visits.size());
  for (const auto& v : visits) {
    require_hour_aligned(v.hour, "visit hour");
    if (v.hour < day_start || v.hour >= day_end) {
      throw ContractViolation("visit at " + format_iso8601(v.hour) + " lies outside day " + format_date(day));
    }
    raw.emplace_back(SegmentRecord{v.page, to_epoch_seconds(v.hour), 0}, v.count);
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return key_less(a.first, b.first); });
  // Sum duplicates in 64 bits before narrowing; counts saturate at 2^32-1.
  std::vector<SegmentRecord> input;
  std::vector<std::uint64_t> sums;
  for (const auto& [key, count] : raw) {
    if (input.empty() || key_less(input.back(), key)) {
      input.push_back(key);
      sums.push_back(0);
    }
    sums.back() += count;
  }

  IngestSummary summary;
  std::vector<SegmentRecord> kept;
  std::unordered_set<PageId> seen;
  for (std::size_t i = 0; i < input.size();) {
    std::size_t j = i;
    std::uint64_t total = 0;
    for (; j < input.size() && input[j].page == input[i].page; ++j) {
      total += sums[j];
      if (sums[j] > 0) ++summary.input_records;
    }
    ++summary.pages_seen;
    seen.insert(input[i].page);
    if (total >= policy.threshold) {
      ++summary.pages_kept;
      for (std::size_t k = i; k < j; ++k) {
        if (sums[k] == 0) continue;
        auto rec = input[k];
        rec.count = static_cast<std::uint32_t>(std::min<std::uint64_t>(sums[k], std::numeric_limits<std::uint32_t>::max()));
        kept.push_back(rec);
        ++summary.records_stored;
      }
    }
    i = j;
  }

  // Replace per page: carry over old records of pages absent from this input.
  auto current = impl_->view();
  std::uint64_t generation = 0;
  if (auto it = current->find(day); it != current->end()) {
    generation = generation_of(it->second->info.file) + 1;
    std::vector<SegmentRecord> combined;
    combined.reserve(it->second->records.size() + kept.size());
    for (const auto& rec : it->second->records) {
      if (!seen.contains(rec.page)) combined.push_back(rec);
    }
    std::vector<SegmentRecord> out;
    out.reserve(combined.size() + kept.size());
    std::merge(combined.begin(), combined.end(), kept.begin(), kept.end(), std::back_inserter(out), key_less);
    kept = std::move(out);
  }

  auto seg = std::make_shared<Segment>();
  const auto bytes = encode_segment(day, kept);
  seg->info = SegmentInfo{day, segment_file_name(day, generation), kept.size(), 0};
  ByteReader tail(std::span<const std::uint8_t>(bytes).subspan(bytes.size() - 4));
  seg->info.checksum = tail.u32();
  seg->records = std::move(kept);
  seg->index_blocks();

  auto next = std::make_shared<SegmentMap>(*current);
  (*next)[day] = seg;
  if (impl_->dir) {
    // Never overwrite a generation a frozen manifest might reference.
    while (std::filesystem::exists(*impl_->dir / seg->info.file)) {
      seg->info.file = segment_file_name(day, ++generation);
    }
    write_file_atomic(*impl_->dir / seg->info.file, bytes);
    const nlohmann::json manifest = impl_->manifest_of(*next);
    write_file_atomic(*impl_->dir / kManifestFile, manifest.dump(2) + "\n");
  }
  {
    std::lock_guard lock(impl_->mu);
    impl_->segments = std::move(next);
  }
  return summary;
}

IngestSummary TimeSeriesStore::ingest_day(Day day, std::span<const RawCount> counts, const GraphSnapshot& graph,
                                          DailyThresholdPolicy policy) {
  static constexpr std::string_view kCategoryPrefix = "Category:";
  std::vector<HourlyVisit> visits;
  visits.reserve(counts.size());
  std::unordered_set<std::string_view> unresolved;
  for (const auto& c : counts) {
    std::string_view title = c.title;
    NodeKind kind = NodeKind::kArticle;
    if (title.starts_with(kCategoryPrefix)) {
      title.remove_prefix(kCategoryPrefix.size());
      kind = NodeKind::kCategory;
    }
    auto node = graph.lookup(kind, title);
    if (!node) {
      unresolved.insert(c.title);
      require_hour_aligned(c.hour, "visit hour");
      continue;
    }
    visits.push_back(HourlyVisit{node->id, c.hour, c.count});
  }
  auto summary = ingest_day(day, visits, policy);
  summary.unresolved_titles = unresolved.size();
  return summary;
}

std::vector<HourCount> TimeSeriesStore::query_range(PageId page, Timestamp start, Timestamp end) const {
  require_range(start, end);
  std::vector<HourCount> out;
  if (start == end) return out;
  const auto view = impl_->view();
  const auto s = to_epoch_seconds(start);
  const auto e = to_epoch_seconds(end);
  for (auto it = view->lower_bound(day_of(start)); it != view->end() && start_of(it->first) < end; ++it) {
    const auto& recs = it->second->records;
    for (auto i = it->second->lower_bound(page, s); i < recs.size() && recs[i].page == page && recs[i].hour < e;
         ++i) {
      out.push_back(HourCount{from_epoch_seconds(recs[i].hour), recs[i].count});
    }
  }
  return out;
}

std::vector<PageId> TimeSeriesStore::pages_above(std::uint64_t total_threshold, Timestamp start, Timestamp end) const {
  require_range(start, end);
  const auto view = impl_->view();
  const auto s = to_epoch_seconds(start);
  const auto e = to_epoch_seconds(end);
  std::unordered_map<PageId, std::uint64_t> totals;
  for (auto it = view->lower_bound(day_of(start)); it != view->end() && start_of(it->first) < end; ++it) {
    for (const auto& r : it->second->records) {
      if (r.hour >= s && r.hour < e) totals[r.page] += r.count;
    }
  }
  std::vector<PageId> out;
  for (const auto& [page, total] : totals) {
    if (total > total_threshold) out.push_back(page);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void TimeSeriesStore::scan(const std::function<void(PageId, Timestamp, std::uint32_t)>& fn) const {
  const auto view = impl_->view();
  struct Cursor {
    const Segment* seg;
    std::size_t pos;
  };
  auto greater = [](const Cursor& a, const Cursor& b) { return key_less(b.seg->records[b.pos], a.seg->records[a.pos]); };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(greater)> heap(greater);
  for (const auto& [day, seg] : *view) {
    if (!seg->records.empty()) heap.push(Cursor{seg.get(), 0});
  }
  while (!heap.empty()) {
    auto c = heap.top();
    heap.pop();
    const auto& r = c.seg->records[c.pos];
    fn(r.page, from_epoch_seconds(r.hour), r.count);
    if (++c.pos < c.seg->records.size()) heap.push(c);
  }
}

std::vector<Day> TimeSeriesStore::days() const {
  std::vector<Day> out;
  for (const auto& [day, seg] : *impl_->view()) out.push_back(day);
  return out;
}

bool TimeSeriesStore::has_day(Day day) const { return impl_->view()->contains(day); }

TimeSeriesManifest TimeSeriesStore::manifest() const { return impl_->manifest_of(*impl_->view()); }

std::uint64_t TimeSeriesStore::record_count() const {
  std::uint64_t n = 0;
  for (const auto& [day, seg] : *impl_->view()) n += seg->records.size();
  return n;
}

bool TimeSeriesStore::read_only() const { return impl_->read_only; }

const std::optional<std::filesystem::path>& TimeSeriesStore::directory() const { return impl_->dir; }

std::string series_to_csv(PageId page, std::span<const HourCount> series) {
  std::string out = "page_id,hour_iso8601,count\n";
  for (const auto& hc : series) {
    out += std::to_string(page);
    out += ',';
    out += format_iso8601(hc.hour);
    out += ',';
    out += std::to_string(hc.count);
    out += '\n';
  }
  return out;
}

nlohmann::json series_to_json(std::span<const HourCount> series) {
  auto arr = nlohmann::json::array();
  for (const auto& hc : series) arr.push_back({format_iso8601(hc.hour), hc.count});
  return arr;
}

}  // namespace wikigraph
