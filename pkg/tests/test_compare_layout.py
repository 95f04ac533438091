"""Set-operation graph comparison and the global force-directed layout."""

from __future__ import annotations

import numpy as np
import pytest

from graphpix.analytics import (
    DISJOINT,
    INTERSECTION,
    compare_intervals,
    compare_steps,
    fr_layout,
)
from graphpix.dyngraph import (
    DynamicGraph,
    IntervalId,
    Snapshot,
    Supergraph,
    build_hierarchy,
)


def make_graph(edge_lists):
    snaps = []
    for k, edges in enumerate(edge_lists):
        snap = Snapshot(index=k)
        for u, v in edges:
            snap.add_edge(u, v)
        snaps.append(snap)
    g = DynamicGraph(snapshots=snaps)
    g.validate()
    return g


class TestCompareSteps:
    def test_basic_example(self):
        g = make_graph([[("a", "b")], [("a", "b"), ("b", "c")]])
        # node ids must be ints in the model; use ints mirroring the example
        g = make_graph([[(1, 2)], [(1, 2), (2, 3)]])
        cmp = compare_steps(g, {0, 1})
        assert cmp.edge_class[(1, 2)] == INTERSECTION
        assert cmp.edge_class[(2, 3)] == DISJOINT
        assert cmp.node_class[1] == INTERSECTION
        assert cmp.node_class[2] == INTERSECTION
        assert cmp.node_class[3] == DISJOINT

    def test_single_step_everything_intersection(self):
        g = make_graph([[(1, 2), (3, 4)]])
        cmp = compare_steps(g, {0})
        assert all(c == INTERSECTION for c in cmp.node_class.values())
        assert all(c == INTERSECTION for c in cmp.edge_class.values())

    def test_disjoint_edge_sets(self):
        g = make_graph([[(1, 2)], [(3, 4)]])
        cmp = compare_steps(g, {0, 1})
        assert cmp.counts["edges"][INTERSECTION] == 0
        assert cmp.counts["edges"][DISJOINT] == 2

    def test_classes_partition_union(self):
        rng = np.random.default_rng(2)
        edge_lists = [
            [(int(rng.integers(0, 6)), int(rng.integers(0, 6))) for _ in range(4)]
            for _ in range(5)
        ]
        g = make_graph(edge_lists)
        cmp = compare_steps(g, {0, 2, 4})
        counts = cmp.counts
        assert counts["nodes"][INTERSECTION] + counts["nodes"][DISJOINT] == len(cmp.union.nodes)
        assert counts["edges"][INTERSECTION] + counts["edges"][DISJOINT] == len(cmp.union.edges)

    def test_empty_selection_error(self):
        g = make_graph([[(1, 2)]])
        with pytest.raises(ValueError, match="empty selection"):
            compare_steps(g, set())

    def test_out_of_range_step(self):
        g = make_graph([[(1, 2)]])
        with pytest.raises(ValueError):
            compare_steps(g, {4})


class TestCompareIntervals:
    def test_bars_compare_their_supergraphs(self):
        g = make_graph([[(1, 2)], [(1, 2), (2, 3)], [(1, 2)], [(4, 5)]])
        h = build_hierarchy(g)
        cmp = compare_intervals(h, [IntervalId(1, 0), IntervalId(1, 1)])
        # (1,2) present in both bar supergraphs; (2,3) only in the first; (4,5) only second
        assert cmp.edge_class[(1, 2)] == INTERSECTION
        assert cmp.edge_class[(2, 3)] == DISJOINT
        assert cmp.edge_class[(4, 5)] == DISJOINT

    def test_empty_error(self):
        g = make_graph([[(1, 2)]])
        h = build_hierarchy(g)
        with pytest.raises(ValueError):
            compare_intervals(h, [])


def star_supergraph(n_leaves=3):
    nodes = {0: 1}
    edges = {}
    for leaf in range(1, n_leaves + 1):
        nodes[leaf] = 1
        edges[(0, leaf)] = 1
    return Supergraph(interval=IntervalId(0, 0), nodes=nodes, edges=edges, span=1)


class TestFrLayout:
    def test_single_node_centered(self):
        sg = Supergraph(IntervalId(0, 0), {7: 1}, {}, 1)
        layout = fr_layout(sg, seed=0)
        assert layout.positions[7] == (0.5, 0.5)

    def test_two_connected_nodes_symmetric(self):
        sg = Supergraph(IntervalId(0, 0), {0: 1, 1: 1}, {(0, 1): 1}, 1)
        layout = fr_layout(sg, seed=1)
        (x0, y0), (x1, y1) = layout.positions[0], layout.positions[1]
        assert abs((x0 + x1) / 2 - 0.5) < 1e-6
        assert abs((y0 + y1) / 2 - 0.5) < 1e-6
        assert (x0, y0) != (x1, y1)

    def test_positions_inside_unit_square(self):
        layout = fr_layout(star_supergraph(6), seed=3)
        for x, y in layout.positions.values():
            assert 0.0 <= x <= 1.0 and 0.0 <= y <= 1.0
            assert np.isfinite(x) and np.isfinite(y)

    def test_same_seed_bit_identical(self):
        a = fr_layout(star_supergraph(5), seed=9)
        b = fr_layout(star_supergraph(5), seed=9)
        assert a.positions == b.positions

    def test_different_seeds_differ(self):
        a = fr_layout(star_supergraph(5), seed=1)
        b = fr_layout(star_supergraph(5), seed=2)
        assert a.positions != b.positions

    def test_empty_graph_error(self):
        with pytest.raises(ValueError, match="empty graph"):
            fr_layout(Supergraph(IntervalId(0, 0), {}, {}, 1))

    def test_connected_pairs_closer_than_average(self):
        # two K3s joined by nothing: within-component distances smaller
        nodes = {i: 1 for i in range(6)}
        edges = {}
        for comp in (range(3), range(3, 6)):
            comp = list(comp)
            for i in range(3):
                for j in range(i + 1, 3):
                    edges[(comp[i], comp[j])] = 1
        sg = Supergraph(IntervalId(0, 0), nodes, edges, 1)
        layout = fr_layout(sg, seed=4)
        pos = {v: np.array(p) for v, p in layout.positions.items()}
        within = np.mean([
            np.linalg.norm(pos[u] - pos[v]) for (u, v) in edges
        ])
        across = np.mean([
            np.linalg.norm(pos[u] - pos[v]) for u in range(3) for v in range(3, 6)
        ])
        assert within < across

    def test_json_shape(self):
        layout = fr_layout(star_supergraph(2), seed=0, iterations=50)
        data = layout.to_json()
        assert set(data) == {"positions", "seed", "iterations"}
        assert data["iterations"] == 50
