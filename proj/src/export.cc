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

#include "wikigraph/export.h"

#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wikigraph/dump_parser.h"
#include "wikigraph/time_util.h"

namespace wikigraph {
namespace {

using ojson = nlohmann::ordered_json;

void write_xml_escaped(std::ostream& out, std::string_view s) {
  for (unsigned char c : s) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      case '"': out << "&quot;"; break;
      case '\'': out << "&apos;"; break;
      default:
        // control chars other than tab/newline/cr are not legal XML 1.0
        if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') break;
        out << static_cast<char>(c);
    }
  }
}

void write_csv(const Subgraph& sub, std::ostream& out) {
  out << "source_id,target_id,kind\n";
  for (const auto& e : sub.edges) out << e.source << ',' << e.target << ',' << to_string(e.kind) << '\n';
}

ojson stats_json(const SubgraphStats& s) {
  return ojson{{"articles", s.articles},
               {"subcategories", s.subcategories},
               {"hyperlinks", s.hyperlinks},
               {"memberships", s.memberships}};
}

ojson provenance_json(const Provenance& p) {
  ojson params = ojson::object();
  for (const auto& [k, v] : p.parameters) params[k] = v;
  return ojson{{"query", p.query},
               {"snapshot", {{"label", p.snapshot.label}, {"content_hash", p.snapshot.content_hash}}},
               {"parameters", params}};
}

void write_json(const Subgraph& sub, std::ostream& out) {
  ojson j;
  ojson nodes = ojson::array();
  for (const auto& n : sub.nodes) nodes.push_back({{"id", n.id}, {"title", n.title}, {"kind", to_string(n.kind)}});
  j["nodes"] = std::move(nodes);
  ojson edges = ojson::array();
  for (const auto& e : sub.edges) edges.push_back(ojson::array({e.source, e.target, to_string(e.kind)}));
  j["edges"] = std::move(edges);
  if (sub.series) {
    ojson series = ojson::object();
    for (const auto& [id, s] : *sub.series) {
      ojson arr = ojson::array();
      for (const auto& hc : s) arr.push_back(ojson::array({format_iso8601(hc.hour), hc.count}));
      series[std::to_string(id)] = std::move(arr);
    }
    j["series"] = std::move(series);
  }
  j["provenance"] = provenance_json(sub.provenance);
  j["stats"] = stats_json(sub.stats);
  out << j.dump(2, ' ', false, ojson::error_handler_t::replace) << '\n';
}

void write_graphml(const Subgraph& sub, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"title\" for=\"node\" attr.name=\"title\" attr.type=\"string\"/>\n"
         "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
         "  <key id=\"ekind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
         "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const auto& n : sub.nodes) {
    out << "    <node id=\"n" << n.id << "\"><data key=\"title\">";
    write_xml_escaped(out, n.title);
    out << "</data><data key=\"kind\">" << to_string(n.kind) << "</data></node>\n";
  }
  for (const auto& e : sub.edges) {
    out << "    <edge source=\"n" << e.source << "\" target=\"n" << e.target << "\"><data key=\"ekind\">"
        << to_string(e.kind) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "csv" || name == "edge-list") return ExportFormat::kEdgeListCsv;
  if (name == "json") return ExportFormat::kJsonGraph;
  if (name == "graphml") return ExportFormat::kGraphMl;
  return std::nullopt;
}

std::string_view to_string(ExportFormat f) {
  switch (f) {
    case ExportFormat::kEdgeListCsv: return "csv";
    case ExportFormat::kJsonGraph: return "json";
    case ExportFormat::kGraphMl: return "graphml";
  }
  return "?";
}

void export_subgraph(const Subgraph& sub, ExportFormat format, std::ostream& out) {
  switch (format) {
    case ExportFormat::kEdgeListCsv: write_csv(sub, out); break;
    case ExportFormat::kJsonGraph: write_json(sub, out); break;
    case ExportFormat::kGraphMl: write_graphml(sub, out); break;
  }
}

std::string export_subgraph(const Subgraph& sub, ExportFormat format) {
  std::ostringstream os;
  export_subgraph(sub, format, os);
  return os.str();
}

std::vector<Edge> parse_edge_list_csv(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  if (!std::getline(in, line) || line != "source_id,target_id,kind") {
    throw ParseError("edge list: missing header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos) throw ParseError("edge list line " + std::to_string(lineno) + ": expected 3 fields");
    auto kind = parse_edge_kind(std::string_view(line).substr(b + 1));
    if (!kind) throw ParseError("edge list line " + std::to_string(lineno) + ": unknown edge kind");
    try {
      std::size_t used = 0;
      const auto s = std::stoull(line.substr(0, a), &used);
      if (used != a) throw std::invalid_argument("id");
      const auto t = std::stoull(line.substr(a + 1, b - a - 1), &used);
      if (used != b - a - 1) throw std::invalid_argument("id");
      edges.push_back(Edge{s, t, *kind});
    } catch (const std::logic_error&) {
      throw ParseError("edge list line " + std::to_string(lineno) + ": bad page id");
    }
  }
  return edges;
}

nlohmann::json stats_to_json(const Subgraph& sub) {
  return nlohmann::json{{"nodes", sub.nodes.size()},
                        {"edges", sub.edges.size()},
                        {"articles", sub.stats.articles},
                        {"subcategories", sub.stats.subcategories},
                        {"hyperlinks", sub.stats.hyperlinks},
                        {"memberships", sub.stats.memberships},
                        {"snapshot", sub.provenance.snapshot.to_string()}};
}

}  // namespace wikigraph
