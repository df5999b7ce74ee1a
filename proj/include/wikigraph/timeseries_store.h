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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wikigraph/dump_parser.h"
#include "wikigraph/types.h"

namespace wikigraph {

class GraphSnapshot;

/// One hour of visits for a page, already resolved to a page id.
struct HourlyVisit {
  PageId page = 0;
  Timestamp hour{};
  std::uint64_t count = 0;
};

struct HourCount {
  Timestamp hour{};
  std::uint32_t count = 0;

  friend bool operator==(const HourCount&, const HourCount&) = default;
};

/// A page's hours for one UTC day are stored only if the day's total is at
/// least `threshold`.
struct DailyThresholdPolicy {
  std::uint64_t threshold = 100;
};

struct IngestSummary {
  std::uint64_t pages_seen = 0;
  std::uint64_t pages_kept = 0;
  std::uint64_t records_stored = 0;
  std::uint64_t unresolved_titles = 0;
  /// Distinct nonzero (page, hour) records offered after summing duplicates.
  std::uint64_t input_records = 0;

  double reduction_ratio() const {
    return input_records == 0 ? 0.0 : static_cast<double>(records_stored) / static_cast<double>(input_records);
  }
};

void to_json(nlohmann::json& j, const IngestSummary& s);

struct SegmentInfo {
  Day day{};
  std::string file;
  std::uint64_t records = 0;
  /// crc32 of the segment file; depends only on its content.
  std::uint32_t checksum = 0;

  friend bool operator==(const SegmentInfo&, const SegmentInfo&) = default;
};

/// The set of day segments that make up one view of the store.
struct TimeSeriesManifest {
  std::vector<SegmentInfo> segments;  // ascending by day

  std::vector<Day> days() const;
  std::string content_hash() const;
  friend bool operator==(const TimeSeriesManifest&, const TimeSeriesManifest&) = default;
};

void to_json(nlohmann::json& j, const TimeSeriesManifest& m);
void from_json(const nlohmann::json& j, TimeSeriesManifest& m);

/// Visit counts keyed by (page id, hour), one sorted segment per ingested
/// UTC day, read through a merged view.
///
/// Segment files are immutable: re-ingesting a day writes a new generation
/// and swaps the manifest, so frozen views that reference the previous
/// generation keep answering as before. Readers always see a complete
/// manifest; a day becomes visible when its ingest commits. Ingest is
/// single-writer.
class TimeSeriesStore {
 public:
  /// Volatile store with no backing directory.
  static TimeSeriesStore in_memory();
  /// Opens (creating if needed) a store directory.
  static TimeSeriesStore open(const std::filesystem::path& dir);
  /// Read-only view of `dir` restricted to the segments in `manifest`.
  static TimeSeriesStore open_frozen(const std::filesystem::path& dir, const TimeSeriesManifest& manifest);

  TimeSeriesStore(TimeSeriesStore&&) noexcept;
  TimeSeriesStore& operator=(TimeSeriesStore&&) noexcept;
  ~TimeSeriesStore();

  /// Stores every nonzero hour of each page whose total for `day` reaches
  /// the threshold. Duplicate (page, hour) inputs are summed first. Pages
  /// present in `visits` replace whatever was stored for them on that day;
  /// other pages keep their records. Throws ContractViolation for a record
  /// outside the day or not hour-aligned.
  IngestSummary ingest_day(Day day, std::span<const HourlyVisit> visits, DailyThresholdPolicy policy = {});

  /// Resolves titles against `graph` first ("Category:" prefixed titles
  /// resolve to category nodes). Unresolvable titles are counted and
  /// dropped.
  IngestSummary ingest_day(Day day, std::span<const RawCount> counts, const GraphSnapshot& graph,
                           DailyThresholdPolicy policy = {});

  /// Stored hours for `page` in [start, end), ascending. Both bounds must be
  /// hour-aligned and start <= end.
  std::vector<HourCount> query_range(PageId page, Timestamp start, Timestamp end) const;

  /// Pages whose stored visits in [start, end) sum to strictly more than
  /// `total_threshold`, ascending.
  std::vector<PageId> pages_above(std::uint64_t total_threshold, Timestamp start, Timestamp end) const;

  /// Every stored record in (page, hour) order.
  void scan(const std::function<void(PageId, Timestamp, std::uint32_t)>& fn) const;

  std::vector<Day> days() const;
  bool has_day(Day day) const;
  TimeSeriesManifest manifest() const;
  std::uint64_t record_count() const;
  bool read_only() const;
  const std::optional<std::filesystem::path>& directory() const;

 private:
  struct Impl;
  explicit TimeSeriesStore(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

inline constexpr std::uint32_t kSegmentFormatVersion = 1;
inline constexpr std::uint32_t kSegmentBlockSize = 256;

struct SegmentRecord {
  PageId page = 0;
  std::int64_t hour = 0;  // epoch seconds
  std::uint32_t count = 0;

  friend bool operator==(const SegmentRecord&, const SegmentRecord&) = default;
};

/// Segment layout, little-endian: magic "WKGTSEG\0", u32 version, i64 day
/// (days since epoch), u64 record count, u32 block size, u32 block count,
/// records as (u64 page, i64 hour, u32 count), block index as
/// (u64 page, i64 hour, u64 record offset), then a crc32 of all
/// preceding bytes.
std::vector<std::uint8_t> encode_segment(Day day, std::span<const SegmentRecord> records);

struct DecodedSegment {
  Day day{};
  std::vector<SegmentRecord> records;
  std::uint32_t checksum = 0;
};

/// Throws FormatError, VersionMismatchError, ChecksumError or
/// TruncatedFileError.
DecodedSegment decode_segment(std::span<const std::uint8_t> bytes);

/// CSV `page_id,hour_iso8601,count` with a header line.
std::string series_to_csv(PageId page, std::span<const HourCount> series);
/// JSON array of [hour_iso8601, count] pairs.
nlohmann::json series_to_json(std::span<const HourCount> series);

}  // namespace wikigraph
