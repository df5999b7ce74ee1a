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

// Python bindings for the wikigraph core.

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "wikigraph/binary_io.h"
#include "wikigraph/export.h"
#include "wikigraph/pipeline.h"
#include "wikigraph/query_engine.h"
#include "wikigraph/time_util.h"
#include "wikigraph/updater.h"

namespace py = pybind11;
using namespace wikigraph;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Timestamp hour_arg(const std::string& text) {
  auto t = parse_iso8601(text);
  if (!t) throw ContractViolation("not an ISO-8601 time: " + text);
  return *t;
}

Day day_arg(const std::string& text) {
  auto d = parse_date(text);
  if (!d) throw ContractViolation("not a YYYY-MM-DD date: " + text);
  return *d;
}

py::list series_to_py(const std::vector<HourCount>& s) {
  py::list out;
  for (const auto& hc : s) out.append(py::make_tuple(format_iso8601(hc.hour), hc.count));
  return out;
}

ExportFormat format_arg(const std::string& name) {
  auto f = parse_export_format(name);
  if (!f) throw ContractViolation("unsupported export format: " + name);
  return *f;
}

}  // namespace

PYBIND11_MODULE(_wikigraph, m) {
  m.doc() = "Wikipedia link/category graph with hourly visit counts";

  static py::exception<NotFoundError> not_found(m, "NotFoundError", PyExc_KeyError);
  static py::exception<FormatError> format_error(m, "FormatError", PyExc_IOError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<GraphBuildError> build_error(m, "GraphBuildError", PyExc_ValueError);
  static py::exception<DeltaValidationError> delta_error(m, "DeltaValidationError", PyExc_ValueError);
  static py::exception<QueryBudgetExceeded> budget_error(m, "QueryBudgetExceeded", PyExc_RuntimeError);
  static py::exception<DuplicateLabelError> duplicate_error(m, "DuplicateLabelError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotFoundError& e) {
      py::set_error(not_found, e.what());
    } catch (const FormatError& e) {
      py::set_error(format_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const GraphBuildError& e) {
      py::set_error(build_error, e.what());
    } catch (const DeltaValidationError& e) {
      py::set_error(delta_error, e.what());
    } catch (const QueryBudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const DuplicateLabelError& e) {
      py::set_error(duplicate_error, e.what());
    }
  });

  py::enum_<NodeKind>(m, "NodeKind").value("ARTICLE", NodeKind::kArticle).value("CATEGORY", NodeKind::kCategory);
  py::enum_<EdgeKind>(m, "EdgeKind").value("LINKS_TO", EdgeKind::kLinksTo).value("BELONGS_TO", EdgeKind::kBelongsTo);
  py::enum_<Direction>(m, "Direction").value("OUT", Direction::kOut).value("IN", Direction::kIn);

  py::class_<Node>(m, "Node")
      .def(py::init<PageId, std::string, NodeKind>(), py::arg("id"), py::arg("title"), py::arg("kind"))
      .def_readonly("id", &Node::id)
      .def_readonly("title", &Node::title)
      .def_readonly("kind", &Node::kind)
      .def(py::self == py::self)
      .def("__repr__", [](const Node& n) {
        return "Node(" + std::to_string(n.id) + ", '" + n.title + "', " + std::string(to_string(n.kind)) + ")";
      });

  py::class_<Edge>(m, "Edge")
      .def(py::init<PageId, PageId, EdgeKind>(), py::arg("source"), py::arg("target"), py::arg("kind"))
      .def_readonly("source", &Edge::source)
      .def_readonly("target", &Edge::target)
      .def_readonly("kind", &Edge::kind)
      .def(py::self == py::self)
      .def("__hash__", [](const Edge& e) { return py::hash(py::make_tuple(e.source, e.target, static_cast<int>(e.kind))); })
      .def("__repr__", [](const Edge& e) {
        return "Edge(" + std::to_string(e.source) + ", " + std::to_string(e.target) + ", " +
               std::string(to_string(e.kind)) + ")";
      });

  py::class_<GraphSnapshot>(m, "GraphSnapshot")
      .def_static("build", &GraphSnapshot::build, py::arg("nodes"), py::arg("edges"), py::arg("label") = "")
      .def_static("load", &load_snapshot, py::arg("path"))
      .def("save", [](const GraphSnapshot& g, const std::filesystem::path& p) { save_snapshot(g, p); })
      .def_property_readonly("label", [](const GraphSnapshot& g) { return g.id().label; })
      .def_property_readonly("content_hash", [](const GraphSnapshot& g) { return g.id().content_hash; })
      .def_property_readonly("counts", [](const GraphSnapshot& g) { return to_py(g.counts()); })
      .def("__len__", &GraphSnapshot::node_count)
      .def("__contains__", &GraphSnapshot::contains)
      .def("lookup", py::overload_cast<PageId>(&GraphSnapshot::lookup, py::const_))
      .def("lookup_title", py::overload_cast<NodeKind, std::string_view>(&GraphSnapshot::lookup, py::const_))
      .def("neighbors", &GraphSnapshot::neighbors, py::arg("id"), py::arg("kind"), py::arg("direction") = Direction::kOut)
      .def("induced_edges", [](const GraphSnapshot& g, std::vector<PageId> ids, EdgeKind k) {
        return g.induced_edges(ids, k);
      })
      .def("nodes", &GraphSnapshot::nodes)
      .def("edges", &GraphSnapshot::edges);

  py::class_<Subgraph>(m, "Subgraph")
      .def_readonly("root", &Subgraph::root)
      .def_readonly("nodes", &Subgraph::nodes)
      .def_readonly("edges", &Subgraph::edges)
      .def("node_ids", &Subgraph::node_ids)
      .def_property_readonly("stats", [](const Subgraph& s) { return to_py(stats_to_json(s)); })
      .def_property_readonly("series", [](const Subgraph& s) -> py::object {
        if (!s.series) return py::none();
        py::dict d;
        for (const auto& [id, series] : *s.series) d[py::int_(id)] = series_to_py(series);
        return d;
      })
      .def("export", [](const Subgraph& s, const std::string& fmt) { return export_subgraph(s, format_arg(fmt)); },
           py::arg("format") = "json");

  py::class_<TimeSeriesStore>(m, "TimeSeriesStore")
      .def_static("in_memory", &TimeSeriesStore::in_memory)
      .def_static("open", &TimeSeriesStore::open, py::arg("directory"))
      .def(
          "ingest_day",
          [](TimeSeriesStore& s, const std::string& day, const std::vector<std::tuple<PageId, std::string, std::uint64_t>>& visits,
             std::uint64_t threshold) {
            std::vector<HourlyVisit> v;
            v.reserve(visits.size());
            for (const auto& [page, hour, count] : visits) v.push_back(HourlyVisit{page, hour_arg(hour), count});
            return to_py(s.ingest_day(day_arg(day), v, DailyThresholdPolicy{threshold}));
          },
          py::arg("day"), py::arg("visits"), py::arg("threshold") = 100)
      .def(
          "query_range",
          [](const TimeSeriesStore& s, PageId page, const std::string& start, const std::string& end) {
            return series_to_py(s.query_range(page, hour_arg(start), hour_arg(end)));
          },
          py::arg("page"), py::arg("start"), py::arg("end"))
      .def(
          "pages_above",
          [](const TimeSeriesStore& s, std::uint64_t threshold, const std::string& start, const std::string& end) {
            return s.pages_above(threshold, hour_arg(start), hour_arg(end));
          },
          py::arg("threshold"), py::arg("start"), py::arg("end"))
      .def("days", [](const TimeSeriesStore& s) {
        std::vector<std::string> out;
        for (Day d : s.days()) out.push_back(format_date(d));
        return out;
      })
      .def_property_readonly("record_count", &TimeSeriesStore::record_count)
      .def_property_readonly("read_only", &TimeSeriesStore::read_only);

  py::class_<QueryEngine>(m, "QueryEngine")
      .def(py::init([](const GraphSnapshot& g, const TimeSeriesStore* s, std::uint64_t ceiling) {
             return QueryEngine(g, s, QueryLimits{ceiling});
           }),
           py::arg("graph"), py::arg("series") = nullptr, py::arg("node_ceiling") = 1'000'000, py::keep_alive<1, 3>())
      .def(
          "category_closure",
          [](const QueryEngine& q, PageId root, std::optional<std::uint32_t> depth) {
            return q.category_closure(root, DepthSpec{depth});
          },
          py::arg("root"), py::arg("depth") = py::none(), py::call_guard<py::gil_scoped_release>())
      .def("neighborhood", &QueryEngine::neighborhood, py::arg("root"), py::arg("depth"),
           py::arg("max_out_degree") = py::none(), py::call_guard<py::gil_scoped_release>())
      .def(
          "filter_by_visits",
          [](const QueryEngine& q, const Subgraph& sub, std::uint64_t threshold, const std::string& start,
             const std::string& end) { return q.filter_by_visits(sub, threshold, hour_arg(start), hour_arg(end)); },
          py::arg("subgraph"), py::arg("threshold"), py::arg("start"), py::arg("end"))
      .def(
          "attach_series",
          [](const QueryEngine& q, const Subgraph& sub, const std::string& start, const std::string& end) {
            return q.attach_series(sub, hour_arg(start), hour_arg(end));
          },
          py::arg("subgraph"), py::arg("start"), py::arg("end"));

  m.def(
      "ingest_graph_files",
      [](const std::filesystem::path& page, const std::filesystem::path& redirect,
         const std::filesystem::path& pagelinks, const std::filesystem::path& categorylinks, bool strict,
         unsigned hop_bound) {
        GraphIngestOptions opts;
        opts.parse.strict = strict;
        opts.redirects.hop_bound = hop_bound;
        auto r = ingest_graph_files(DumpPaths{page, redirect, pagelinks, categorylinks}, opts);
        return py::make_tuple(std::move(r.graph), to_py(r.report));
      },
      py::arg("page"), py::arg("redirect"), py::arg("pagelinks"), py::arg("categorylinks"), py::arg("strict") = false,
      py::arg("hop_bound") = 16);

  m.def(
      "ingest_pagecount_files",
      [](TimeSeriesStore& store, const GraphSnapshot& graph, const std::vector<std::filesystem::path>& files,
         const std::string& project, std::uint64_t threshold) {
        CountIngestOptions opts;
        opts.parse.project = project;
        opts.policy.threshold = threshold;
        return to_py(ingest_pagecount_files(store, graph, files, opts));
      },
      py::arg("store"), py::arg("graph"), py::arg("files"), py::arg("project") = "en", py::arg("threshold") = 100);

  m.def("diff_graphs", [](const GraphSnapshot& a, const GraphSnapshot& b) { return to_py(diff_graphs(a, b)); });
  m.def(
      "apply_delta",
      [](const GraphSnapshot& g, const py::object& delta, std::string label) {
        return apply_delta(g, from_py(delta).get<GraphDelta>(), std::move(label));
      },
      py::arg("graph"), py::arg("delta"), py::arg("label"));

  py::class_<FrozenBundle>(m, "FrozenBundle")
      .def_property_readonly("entry", [](const FrozenBundle& b) { return to_py(b.entry); })
      .def_readonly("graph", &FrozenBundle::graph)
      .def_property_readonly("series", [](FrozenBundle& b) -> TimeSeriesStore& { return b.series; },
                             py::return_value_policy::reference_internal);

  py::class_<Workspace>(m, "Workspace")
      .def(py::init<std::filesystem::path>(), py::arg("data_dir"))
      .def_property_readonly("root", &Workspace::root)
      .def("has_graph", &Workspace::has_graph)
      .def("load_graph", &Workspace::load_graph)
      .def("save_graph", &Workspace::save_graph)
      .def("open_timeseries", &Workspace::open_timeseries)
      .def("freeze", [](const Workspace& w, const GraphSnapshot& g, const TimeSeriesStore& s,
                        const std::string& label) { return to_py(w.registry().freeze(g, s, label)); })
      .def("frozen", [](const Workspace& w) { return to_py(w.registry().list()); })
      .def("open_frozen", [](const Workspace& w, const std::string& label) { return w.registry().open(label); });
}
