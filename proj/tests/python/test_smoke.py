# Copyright 2026 The Wikigraph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import pathlib

import pytest

import wikigraph as wg

TINY = pathlib.Path(os.environ.get("WIKIGRAPH_FIXTURES", pathlib.Path(__file__).parents[1] / "fixtures")) / "tinywiki"


def tiny_graph():
    graph, report = wg.ingest_graph_files(
        TINY / "page.sql", TINY / "redirect.sql", TINY / "pagelinks.sql", TINY / "categorylinks.sql"
    )
    return graph, report


def test_ingest_and_lookup():
    graph, report = tiny_graph()
    assert len(graph) == 5
    assert report["graph"]["links_to"] == 5
    assert graph.lookup_title(wg.NodeKind.CATEGORY, "Physics").id == 2
    assert graph.neighbors(1, wg.EdgeKind.LINKS_TO) == [3, 5]
    assert 4 not in graph


def test_closure_and_neighborhood():
    graph, _ = tiny_graph()
    q = wg.QueryEngine(graph)
    assert q.category_closure(2).node_ids() == [1, 2, 3, 6]
    assert q.category_closure(2, depth=0).node_ids() == [2, 3]
    sub = q.neighborhood(1, 1)
    assert sub.node_ids() == [1, 3, 5]
    assert sub.stats["hyperlinks"] == 5
    assert sub.export("csv").startswith("source_id,target_id,kind\n")
    with pytest.raises(wg.NotFoundError):
        q.neighborhood(99, 1)


def test_series_and_freeze(tmp_path):
    graph, _ = tiny_graph()
    ws = wg.Workspace(tmp_path / "data")
    ws.save_graph(graph)
    store = ws.open_timeseries()
    files = sorted((TINY / "pagecounts").iterdir())
    reports = wg.ingest_pagecount_files(store, graph, files)
    assert reports[0]["ingest"]["pages_kept"] == 3
    q = wg.QueryEngine(graph, store)
    sub = q.attach_series(q.neighborhood(1, 1), "2018-08-01T00:00Z", "2018-08-02T00:00Z")
    assert len(sub.series[1]) == 24
    assert sub.series[3] == []
    hot = q.filter_by_visits(q.category_closure(2), 150, "2018-08-01T00:00Z", "2018-08-02T00:00Z")
    assert hot.node_ids() == [1]
    doc = json.loads(hot.export("json"))
    assert doc["provenance"]["query"] == "category_closure|filter_by_visits"

    entry = ws.freeze(graph, store, "2018-08")
    assert entry["label"] == "2018-08"
    with pytest.raises(wg.DuplicateLabelError):
        ws.freeze(graph, store, "2018-08")
    bundle = ws.open_frozen("2018-08")
    assert bundle.series.read_only
    assert bundle.graph.content_hash == graph.content_hash


def test_delta_round_trip():
    graph, _ = tiny_graph()
    smaller = wg.GraphSnapshot.build(
        [wg.Node(1, "Albert_Einstein", wg.NodeKind.ARTICLE), wg.Node(3, "Relativity", wg.NodeKind.ARTICLE)],
        [wg.Edge(1, 3, wg.EdgeKind.LINKS_TO)],
    )
    delta = wg.diff_graphs(graph, smaller)
    assert delta["nodes_removed"] == [2, 5, 6]
    assert wg.apply_delta(graph, delta, "").content_hash == smaller.content_hash
    with pytest.raises(wg.DeltaValidationError):
        wg.apply_delta(smaller, delta, "")
