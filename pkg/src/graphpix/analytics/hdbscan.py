"""Hierarchical density clustering over cosine distance (HDBSCAN).

Full pipeline, implemented directly: core distances, mutual reachability,
minimum spanning tree, single-linkage dendrogram, condensation with a minimum
cluster size, excess-of-mass stability extraction.  Unassigned points get the
noise label -1.  If extraction selects nothing at all (no density split ever
beats the full set, e.g. identical columns), the whole set is returned as one
cluster rather than all-noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

# distance floor when inverting to density lambda = 1/d (zero distances allowed)
_MIN_DIST = 1e-12


@dataclass
class ClusterResult:
    """Per-column labels (-1 = noise) plus per-cluster stability scores."""

    labels: np.ndarray
    n_clusters: int
    stabilities: dict[int, float] = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "labels": [int(x) for x in self.labels],
            "n_clusters": self.n_clusters,
            "stabilities": {str(k): float(v) for k, v in self.stabilities.items()},
            "params": self.params,
        }


def cosine_distances(normalized: np.ndarray) -> np.ndarray:
    """1 - a.b on unit vectors, clamped to [0, 2], zero diagonal."""
    x = np.asarray(normalized, dtype=np.float64)
    dist = np.clip(1.0 - x @ x.T, 0.0, 2.0)
    np.fill_diagonal(dist, 0.0)
    return dist


def _core_distances(dist: np.ndarray, min_samples: int) -> np.ndarray:
    # k-th nearest neighbor with the point itself counting as neighbor zero
    n = dist.shape[0]
    kth = min(min_samples - 1, n - 1)
    return np.sort(dist, axis=1)[:, kth]


def _mutual_reachability(dist: np.ndarray, core: np.ndarray) -> np.ndarray:
    m = np.maximum(dist, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(m, 0.0)
    return m


def _mst_prim(weights: np.ndarray) -> list[tuple[int, int, float]]:
    n = weights.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    source = np.full(n, -1, dtype=np.int64)
    in_tree[0] = True
    current = 0
    edges = []
    for _ in range(n - 1):
        row = weights[current]
        improve = ~in_tree & (row < best)
        best[improve] = row[improve]
        source[improve] = current
        candidate = np.where(in_tree, np.inf, best)
        nxt = int(np.argmin(candidate))
        edges.append((int(source[nxt]), nxt, float(best[nxt])))
        in_tree[nxt] = True
        current = nxt
    return edges


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        self.parent[ra] = rb
        return rb


def _single_linkage(
    edges: list[tuple[int, int, float]], n: int
) -> tuple[dict[int, tuple[int, int]], dict[int, float], dict[int, int]]:
    """Dendrogram from MST edges sorted ascending: internal nodes n..2n-2."""
    order = sorted(range(len(edges)), key=lambda i: (edges[i][2], edges[i][0], edges[i][1]))
    uf = _UnionFind(n)
    component_node = {i: i for i in range(n)}
    children: dict[int, tuple[int, int]] = {}
    distances: dict[int, float] = {}
    sizes: dict[int, int] = {i: 1 for i in range(n)}
    nxt = n
    for i in order:
        u, v, w = edges[i]
        ru, rv = uf.find(u), uf.find(v)
        nu, nv = component_node[ru], component_node[rv]
        children[nxt] = (nu, nv)
        distances[nxt] = w
        sizes[nxt] = sizes[nu] + sizes[nv]
        root = uf.union(ru, rv)
        component_node[root] = nxt
        nxt += 1
    return children, distances, sizes


def _leaf_points(node: int, children: dict[int, tuple[int, int]], n: int) -> list[int]:
    out = []
    stack = [node]
    while stack:
        x = stack.pop()
        if x < n:
            out.append(x)
        else:
            stack.extend(children[x])
    return out


def _condense(
    children: dict[int, tuple[int, int]],
    distances: dict[int, float],
    sizes: dict[int, int],
    n: int,
    min_cluster_size: int,
) -> list[tuple[int, int, float, int]]:
    """Rows (parent_cluster, child, lambda, size); condensed cluster ids start
    at n (the root cluster), point children are < n."""
    root = 2 * n - 2
    rows: list[tuple[int, int, float, int]] = []
    next_label = n + 1
    stack: list[tuple[int, int]] = [(root, n)]  # (dendrogram node, condensed cluster)
    while stack:
        node, cluster = stack.pop()
        left, right = children[node]
        lam = 1.0 / max(distances[node], _MIN_DIST)
        size_l, size_r = sizes[left], sizes[right]
        if size_l >= min_cluster_size and size_r >= min_cluster_size:
            for child in (left, right):
                rows.append((cluster, next_label, lam, sizes[child]))
                stack.append((child, next_label))
                next_label += 1
        elif size_l < min_cluster_size and size_r < min_cluster_size:
            for side in (left, right):
                rows.extend((cluster, p, lam, 1) for p in _leaf_points(side, children, n))
        elif size_l < min_cluster_size:
            rows.extend((cluster, p, lam, 1) for p in _leaf_points(left, children, n))
            stack.append((right, cluster))
        else:
            rows.extend((cluster, p, lam, 1) for p in _leaf_points(right, children, n))
            stack.append((left, cluster))
    return rows


def _stabilities(rows: list[tuple[int, int, float, int]], n: int) -> dict[int, float]:
    births: dict[int, float] = {n: 0.0}
    for _, child, lam, _ in rows:
        if child >= n:
            births[child] = lam
    stab: dict[int, float] = {c: 0.0 for c in births}
    for parent, _, lam, size in rows:
        stab[parent] += (lam - births[parent]) * size
    return stab


def _extract_eom(
    rows: list[tuple[int, int, float, int]], stab: dict[int, float], n: int
) -> list[int]:
    cluster_children: dict[int, list[int]] = {c: [] for c in stab}
    for parent, child, _, _ in rows:
        if child >= n:
            cluster_children[parent].append(child)

    candidates = sorted((c for c in stab if c != n), reverse=True)
    is_cluster = {c: True for c in candidates}
    work = dict(stab)
    for c in candidates:
        child_sum = sum(work[ch] for ch in cluster_children[c])
        if cluster_children[c] and child_sum > work[c]:
            is_cluster[c] = False
            work[c] = child_sum
        else:
            queue = list(cluster_children[c])
            while queue:
                d = queue.pop()
                is_cluster[d] = False
                queue.extend(cluster_children[d])
    return sorted(c for c in candidates if is_cluster[c])


def hdbscan(
    normalized: np.ndarray,
    min_cluster_size: int = 5,
    min_samples: Optional[int] = None,
) -> ClusterResult:
    """Cluster unit-norm embedding columns by cosine distance.

    Fewer columns than min_cluster_size yields all noise (no error).
    """
    if min_cluster_size < 2:
        raise ValueError("min_cluster_size must be >= 2")
    min_samples = min_cluster_size if min_samples is None else min_samples
    if min_samples < 1:
        raise ValueError("min_samples must be >= 1")

    x = np.asarray(normalized, dtype=np.float64)
    n = x.shape[0]
    params = {"min_cluster_size": min_cluster_size, "min_samples": min_samples}
    if n < 2 or n < min_cluster_size:
        return ClusterResult(np.full(n, -1, dtype=np.int64), 0, {}, params)

    dist = cosine_distances(x)
    core = _core_distances(dist, min_samples)
    mreach = _mutual_reachability(dist, core)
    mst = _mst_prim(mreach)
    children, distances, sizes = _single_linkage(mst, n)
    rows = _condense(children, distances, sizes, n, min_cluster_size)
    stab = _stabilities(rows, n)
    selected = _extract_eom(rows, stab, n)

    labels = np.full(n, -1, dtype=np.int64)
    stabilities: dict[int, float] = {}
    if not selected:
        # no split ever beat the full set: one cluster holding everything
        labels[:] = 0
        return ClusterResult(labels, 1, {0: float(stab.get(n, 0.0))}, params)

    cluster_parent = {child: parent for parent, child, _, _ in rows if child >= n}
    point_cluster = {child: parent for parent, child, _, _ in rows if child < n}
    label_of = {c: i for i, c in enumerate(selected)}
    for c, i in label_of.items():
        stabilities[i] = float(stab[c])
    selected_set = set(selected)
    for p in range(n):
        c = point_cluster[p]
        while c is not None and c not in selected_set:
            c = cluster_parent.get(c)
        if c is not None:
            labels[p] = label_of[c]
    return ClusterResult(labels, len(selected), stabilities, params)
