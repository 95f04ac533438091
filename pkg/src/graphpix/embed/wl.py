"""Weisfeiler-Lehman relabeling features and line-graph construction.

Each graph becomes a bag of label strings: iteration 0 uses node degrees,
iteration i >= 1 hashes a node's label together with its sorted neighbor
labels.  Isomorphic graphs yield identical word multisets.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from graphpix.dyngraph import IntervalId, Supergraph

SENTINEL_WORD = "EMPTY"


@dataclass
class WlDocument:
    """Bag of WL feature words for one graph; sentinel docs are degenerate."""

    graph_key: Optional[IntervalId]
    words: list[str] = field(default_factory=list)
    degenerate: bool = False


def _hash64(text: str) -> str:
    return hashlib.blake2b(text.encode("utf-8"), digest_size=8).hexdigest()


def wl_features(graph: Supergraph, h: int) -> WlDocument:
    """Labels of all nodes over iterations 0..h, each prefixed with its iteration.

    The word count is (h+1) * |V|.  A graph with no nodes yields the sentinel
    document (single "EMPTY" word, flagged degenerate).
    """
    if h < 0:
        raise ValueError("h must be >= 0")
    adj = graph.adjacency()
    nodes = sorted(adj)
    if not nodes:
        return WlDocument(graph_key=graph.interval, words=[SENTINEL_WORD], degenerate=True)

    labels = {v: str(len(adj[v])) for v in nodes}
    words = [f"0_{labels[v]}" for v in nodes]
    for it in range(1, h + 1):
        new_labels = {}
        for v in nodes:
            neighborhood = ",".join(sorted(labels[u] for u in adj[v]))
            new_labels[v] = _hash64(f"{labels[v]}|{neighborhood}")
        labels = new_labels
        words.extend(f"{it}_{labels[v]}" for v in nodes)
    return WlDocument(graph_key=graph.interval, words=words)


def line_graph(graph: Supergraph) -> Supergraph:
    """Graph on the edges of the input; line-nodes adjacent iff the source
    edges share an endpoint.  Line-node ids follow canonical edge order."""
    src_edges = sorted(graph.edges)
    edge_id = {e: i for i, e in enumerate(src_edges)}

    incident: dict[int, list[int]] = {}
    for e in src_edges:
        i = edge_id[e]
        for endpoint in set(e):
            incident.setdefault(endpoint, []).append(i)

    line_edges: dict[tuple[int, int], int] = {}
    for ids in incident.values():
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                i, j = ids[a], ids[b]
                line_edges[(min(i, j), max(i, j))] = 1

    return Supergraph(
        interval=graph.interval,
        nodes={edge_id[e]: graph.edges[e] for e in src_edges},
        edges=line_edges,
        span=graph.span,
    )
