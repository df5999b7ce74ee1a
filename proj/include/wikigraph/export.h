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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikigraph/query_engine.h"

namespace wikigraph {

enum class ExportFormat : std::uint8_t { kEdgeListCsv, kJsonGraph, kGraphMl };

/// Accepts "csv", "edge-list", "json", "graphml".
std::optional<ExportFormat> parse_export_format(std::string_view name);
std::string_view to_string(ExportFormat f);

/// Deterministic: nodes ascending by id, edges in Edge order.
void export_subgraph(const Subgraph& sub, ExportFormat format, std::ostream& out);
std::string export_subgraph(const Subgraph& sub, ExportFormat format);

/// Reads back the `source_id,target_id,kind` CSV written above.
std::vector<Edge> parse_edge_list_csv(std::istream& in);

nlohmann::json stats_to_json(const Subgraph& sub);

}  // namespace wikigraph
