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

"""Wikipedia link/category graph with hourly visit counts."""

from ._wikigraph import (
    DeltaValidationError,
    Direction,
    DuplicateLabelError,
    Edge,
    EdgeKind,
    FormatError,
    FrozenBundle,
    GraphBuildError,
    GraphSnapshot,
    Node,
    NodeKind,
    NotFoundError,
    ParseError,
    QueryBudgetExceeded,
    QueryEngine,
    Subgraph,
    TimeSeriesStore,
    Workspace,
    apply_delta,
    diff_graphs,
    ingest_graph_files,
    ingest_pagecount_files,
)

__all__ = [
    "DeltaValidationError",
    "Direction",
    "DuplicateLabelError",
    "Edge",
    "EdgeKind",
    "FormatError",
    "FrozenBundle",
    "GraphBuildError",
    "GraphSnapshot",
    "Node",
    "NodeKind",
    "NotFoundError",
    "ParseError",
    "QueryBudgetExceeded",
    "QueryEngine",
    "Subgraph",
    "TimeSeriesStore",
    "Workspace",
    "apply_delta",
    "diff_graphs",
    "ingest_graph_files",
    "ingest_pagecount_files",
]
