"""WL feature extraction and line-graph construction."""

from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from graphpix.dyngraph import IntervalId, Supergraph, canonical_edge
from graphpix.embed import SENTINEL_WORD, line_graph, wl_features


def graph_of(edges: list[tuple[int, int]], extra_nodes: set[int] | None = None) -> Supergraph:
    nodes: dict[int, int] = {}
    emap: dict = {}
    for u, v in edges:
        e = canonical_edge(u, v)
        emap[e] = 1
        nodes[u] = 1
        nodes[v] = 1
    for v in extra_nodes or set():
        nodes[v] = 1
    return Supergraph(interval=IntervalId(0, 0), nodes=nodes, edges=emap, span=1)


TRIANGLE = [(0, 1), (1, 2), (0, 2)]
STAR3 = [(0, 1), (0, 2), (0, 3)]
PATH3 = [(0, 1), (1, 2)]


class TestWlFeatures:
    def test_triangle_symmetry(self):
        doc = wl_features(graph_of(TRIANGLE), h=2)
        assert len(doc.words) == 9
        counts = Counter(doc.words)
        assert len(counts) == 3
        assert all(c == 3 for c in counts.values())

    def test_star_degree_asymmetry(self):
        doc = wl_features(graph_of(STAR3), h=1)
        it1 = Counter(w for w in doc.words if w.startswith("1_"))
        assert len(it1) == 2
        assert sorted(it1.values()) == [1, 3]

    def test_word_count_invariant(self):
        for h in range(4):
            doc = wl_features(graph_of(PATH3), h=h)
            assert len(doc.words) == (h + 1) * 3

    def test_iteration_zero_is_degree(self):
        doc = wl_features(graph_of(STAR3), h=0)
        assert Counter(doc.words) == {"0_3": 1, "0_1": 3}

    def test_isomorphism_invariance_random_permutations(self):
        rng = np.random.default_rng(42)
        for trial in range(20):
            n = int(rng.integers(4, 10))
            edges = []
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.4:
                        edges.append((i, j))
            base = wl_features(graph_of(edges, extra_nodes=set(range(n))), h=3)
            perm = rng.permutation(n)
            mapped = [(int(perm[u]), int(perm[v])) for u, v in edges]
            relabeled = wl_features(graph_of(mapped, extra_nodes=set(range(n))), h=3)
            assert Counter(base.words) == Counter(relabeled.words)

    def test_determinism(self):
        a = wl_features(graph_of(TRIANGLE), h=2)
        b = wl_features(graph_of(TRIANGLE), h=2)
        assert a.words == b.words

    def test_empty_graph_sentinel(self):
        doc = wl_features(graph_of([]), h=2)
        assert doc.words == [SENTINEL_WORD]
        assert doc.degenerate

    def test_negative_h_rejected(self):
        with pytest.raises(ValueError):
            wl_features(graph_of(TRIANGLE), h=-1)


class TestLineGraph:
    def test_path3_collapses_to_edge(self):
        lg = line_graph(graph_of(PATH3))
        assert lg.n_nodes == 2
        assert set(lg.edges) == {(0, 1)}

    def test_triangle_self_dual(self):
        lg = line_graph(graph_of(TRIANGLE))
        assert lg.n_nodes == 3
        assert set(lg.edges) == {(0, 1), (0, 2), (1, 2)}

    def test_star_becomes_triangle(self):
        # hand oracle: all three spokes meet at the hub, so every pair is adjacent
        lg = line_graph(graph_of(STAR3))
        assert lg.n_nodes == 3
        assert set(lg.edges) == {(0, 1), (0, 2), (1, 2)}

    def test_k3_and_s3_collide_in_wl_documents(self):
        k3 = wl_features(line_graph(graph_of(TRIANGLE)), h=2)
        s3 = wl_features(line_graph(graph_of(STAR3)), h=2)
        assert Counter(k3.words) == Counter(s3.words)

    def test_empty_input(self):
        lg = line_graph(graph_of([]))
        assert lg.n_nodes == 0 and lg.n_edges == 0
