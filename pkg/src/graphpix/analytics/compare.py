"""Set-operation comparison of selected time steps or interval bars.

The union graph of the selection is classified element-by-element:
"intersection" elements occur in every selected member, "disjoint" elements in
at least one but not all.  The two classes partition the union.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from graphpix.dyngraph import (
    DynamicGraph,
    Edge,
    IntervalId,
    MultiscaleHierarchy,
    Supergraph,
)

INTERSECTION = "intersection"
DISJOINT = "disjoint"


@dataclass
class GraphComparison:
    union: Supergraph
    node_class: dict[int, str] = field(default_factory=dict)
    edge_class: dict[Edge, str] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, dict[str, int]]:
        return {
            "nodes": {
                INTERSECTION: sum(1 for c in self.node_class.values() if c == INTERSECTION),
                DISJOINT: sum(1 for c in self.node_class.values() if c == DISJOINT),
            },
            "edges": {
                INTERSECTION: sum(1 for c in self.edge_class.values() if c == INTERSECTION),
                DISJOINT: sum(1 for c in self.edge_class.values() if c == DISJOINT),
            },
        }


def _classify(
    node_sets: Sequence[set[int]], edge_sets: Sequence[set[Edge]]
) -> GraphComparison:
    k = len(node_sets)
    nodes: dict[int, int] = {}
    edges: dict[Edge, int] = {}
    for ns in node_sets:
        for v in ns:
            nodes[v] = nodes.get(v, 0) + 1
    for es in edge_sets:
        for e in es:
            edges[e] = edges.get(e, 0) + 1
    union = Supergraph(interval=None, nodes=nodes, edges=edges, span=k)
    return GraphComparison(
        union=union,
        node_class={v: INTERSECTION if c == k else DISJOINT for v, c in nodes.items()},
        edge_class={e: INTERSECTION if c == k else DISJOINT for e, c in edges.items()},
    )


def compare_steps(g: DynamicGraph, steps: Iterable[int]) -> GraphComparison:
    """Classify the union over individual snapshots; intersection elements
    appear in every selected step."""
    chosen = sorted(set(steps))
    if not chosen:
        raise ValueError("empty selection")
    for t in chosen:
        if not (0 <= t < g.T):
            raise ValueError(f"step {t} out of range for T={g.T}")
    snaps = [g.snapshots[t] for t in chosen]
    return _classify(
        [set(s.nodes) for s in snaps],
        [set(s.edges) for s in snaps],
    )


def compare_intervals(
    h: MultiscaleHierarchy, intervals: Sequence[IntervalId]
) -> GraphComparison:
    """Classify across interval bars: each bar contributes its supergraph's
    element sets, so intersection means present in every selected bar."""
    if not intervals:
        raise ValueError("empty selection")
    supers = [h.get(iv) for iv in intervals]
    return _classify(
        [set(sg.nodes) for sg in supers],
        [set(sg.edges) for sg in supers],
    )
