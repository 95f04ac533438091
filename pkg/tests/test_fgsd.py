"""Spectral-distance histograms: resistance oracles and invariances."""

from __future__ import annotations

import numpy as np
import pytest

from graphpix.dyngraph import IntervalId, Supergraph, canonical_edge
from graphpix.embed import effective_resistance, fgsd


def graph_of(edges, n_nodes=None) -> Supergraph:
    nodes = {}
    emap = {}
    for u, v in edges:
        emap[canonical_edge(u, v)] = 1
        nodes[u] = 1
        nodes[v] = 1
    if n_nodes is not None:
        for v in range(n_nodes):
            nodes.setdefault(v, 1)
    return Supergraph(interval=IntervalId(0, 0), nodes=nodes, edges=emap, span=1)


def resistance_by_solve(adj: np.ndarray, i: int, j: int) -> float:
    """Independent oracle: inject unit current at i, extract at j, ground node 0."""
    n = adj.shape[0]
    lap = np.diag(adj.sum(axis=1)) - adj
    grounded = lap[1:, 1:]
    current = np.zeros(n)
    current[i] = 1.0
    current[j] = -1.0
    potential = np.zeros(n)
    potential[1:] = np.linalg.solve(grounded, current[1:])
    return float(potential[i] - potential[j])


class TestEffectiveResistance:
    def test_path3_series_resistances(self):
        adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
        dist = effective_resistance(adj)
        assert dist[0, 1] == pytest.approx(1.0, abs=1e-9)
        assert dist[1, 2] == pytest.approx(1.0, abs=1e-9)
        assert dist[0, 2] == pytest.approx(2.0, abs=1e-9)
        assert np.allclose(np.diag(dist), 0.0)

    def test_triangle_parallel_paths(self):
        # 1 ohm in parallel with 2 ohms = 2/3
        adj = np.ones((3, 3)) - np.eye(3)
        dist = effective_resistance(adj)
        for i in range(3):
            for j in range(3):
                if i != j:
                    assert dist[i, j] == pytest.approx(2 / 3, abs=1e-9)

    def test_matches_linear_solve_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            n = int(rng.integers(4, 9))
            adj = np.zeros((n, n))
            # random connected graph: spanning chain plus extras
            for i in range(1, n):
                adj[i - 1, i] = adj[i, i - 1] = 1
            for i in range(n):
                for j in range(i + 2, n):
                    if rng.random() < 0.3:
                        adj[i, j] = adj[j, i] = 1
            dist = effective_resistance(adj)
            for _ in range(4):
                i, j = rng.integers(0, n, 2)
                expected = 0.0 if i == j else resistance_by_solve(adj, int(i), int(j))
                assert dist[i, j] == pytest.approx(expected, abs=1e-8)


class TestFgsdHistogram:
    def test_p3_oracle_bins(self):
        # resistances {0 x3, 1 x4, 2 x2}; bin width 20/128 = 0.15625
        hist = fgsd(graph_of([(1, 2), (2, 3)]), bins=128, range_max=20.0)
        expected = {0: 3, 6: 4, 12: 2}
        assert {i: int(c) for i, c in enumerate(hist) if c} == expected

    def test_sum_is_n_squared(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            n = int(rng.integers(2, 12))
            edges = [
                (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4
            ]
            hist = fgsd(graph_of(edges, n_nodes=n), bins=64, range_max=10.0)
            assert hist.sum() == n * n
            assert (hist >= 0).all()

    def test_permutation_invariance(self):
        rng = np.random.default_rng(1)
        n = 9
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.35]
        base = fgsd(graph_of(edges, n_nodes=n), bins=128, range_max=20.0)
        for _ in range(5):
            perm = rng.permutation(n)
            mapped = [(int(perm[u]), int(perm[v])) for u, v in edges]
            assert np.array_equal(base, fgsd(graph_of(mapped, n_nodes=n), bins=128, range_max=20.0))

    def test_disconnected_components_fill_last_bin(self):
        # two K2 components: 8 cross pairs at range_max, 4 within at 1.0, 4 diagonal zeros
        hist = fgsd(graph_of([(0, 1), (2, 3)]), bins=10, range_max=5.0)
        assert hist[0] == 4  # diagonal
        assert hist[2] == 4  # resistance 1.0 in bin floor(1/0.5)
        assert hist[-1] == 8

    def test_single_node(self):
        hist = fgsd(graph_of([], n_nodes=1), bins=8, range_max=4.0)
        assert hist[0] == 1 and hist.sum() == 1

    def test_isolated_nodes_edgeless(self):
        hist = fgsd(graph_of([], n_nodes=3), bins=8, range_max=4.0)
        assert hist[0] == 3
        assert hist[-1] == 6

    def test_self_loop_ignored(self):
        with_loop = fgsd(graph_of([(0, 1), (1, 1)]), bins=16, range_max=4.0)
        without = fgsd(graph_of([(0, 1)]), bins=16, range_max=4.0)
        assert np.array_equal(with_loop, without)

    def test_values_beyond_range_clamp_to_last_bin(self):
        # path of 30 nodes has resistance up to 29 > range_max 20
        edges = [(i, i + 1) for i in range(29)]
        hist = fgsd(graph_of(edges), bins=128, range_max=20.0)
        assert hist[-1] > 0
        assert hist.sum() == 30 * 30

    def test_empty_graph_error(self):
        with pytest.raises(ValueError, match="empty graph"):
            fgsd(graph_of([]), bins=8, range_max=4.0)

    def test_bad_parameters(self):
        g = graph_of([(0, 1)])
        with pytest.raises(ValueError):
            fgsd(g, bins=0, range_max=4.0)
        with pytest.raises(ValueError):
            fgsd(g, bins=8, range_max=0.0)
