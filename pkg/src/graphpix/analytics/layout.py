"""Force-directed layout (Fruchterman-Reingold) for the global graph view.

One layout is computed on the supergraph of the whole dynamic graph and reused
for every selection, keeping node positions stable across comparisons.
Deterministic for a fixed seed; positions land in the unit square.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from graphpix.dyngraph import Supergraph


@dataclass
class Layout:
    positions: dict[int, tuple[float, float]]
    seed: int
    iterations: int

    def to_json(self) -> dict:
        return {
            "positions": {str(v): [x, y] for v, (x, y) in self.positions.items()},
            "seed": self.seed,
            "iterations": self.iterations,
        }


def fr_layout(graph: Supergraph, seed: int = 0, iterations: int = 500) -> Layout:
    """Spring layout with repulsion k^2/d, attraction d^2/k, k = sqrt(area/|V|),
    and a linearly cooling displacement cap; result min-max scaled to [0,1]^2."""
    if not graph.nodes:
        raise ValueError("empty graph")
    nodes = sorted(graph.nodes)
    n = len(nodes)
    if n == 1:
        return Layout({nodes[0]: (0.5, 0.5)}, seed, iterations)

    index = {v: i for i, v in enumerate(nodes)}
    edge_pairs = [(index[u], index[v]) for (u, v) in graph.edges if u != v]
    eu = np.asarray([p[0] for p in edge_pairs], dtype=np.int64)
    ev = np.asarray([p[1] for p in edge_pairs], dtype=np.int64)

    rng = np.random.default_rng(seed)
    pos = rng.random((n, 2))
    k = np.sqrt(1.0 / n)
    t0 = 0.1
    for it in range(iterations):
        temp = t0 * (1.0 - it / iterations)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        disp = (delta * (k * k / dist**2)[:, :, None]).sum(axis=1)
        if len(eu):
            dvec = pos[eu] - pos[ev]
            dlen = np.maximum(np.linalg.norm(dvec, axis=-1, keepdims=True), 1e-9)
            pull = dvec * (dlen / k)
            np.add.at(disp, eu, -pull)
            np.add.at(disp, ev, pull)
        length = np.maximum(np.linalg.norm(disp, axis=-1, keepdims=True), 1e-9)
        pos = pos + disp / length * np.minimum(length, temp)

    lo = pos.min(axis=0)
    hi = pos.max(axis=0)
    span = hi - lo
    scaled = np.empty_like(pos)
    for axis in range(2):
        if span[axis] <= 0:
            scaled[:, axis] = 0.5
        else:
            scaled[:, axis] = (pos[:, axis] - lo[axis]) / span[axis]
    positions = {v: (float(scaled[index[v], 0]), float(scaled[index[v], 1])) for v in nodes}
    return Layout(positions, seed, iterations)
