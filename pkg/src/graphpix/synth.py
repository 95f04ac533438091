"""Synthetic dynamic graphs with known ground truth.

Two generators: a stochastic block model with a sequence of temporal states
(varying block counts, jittered block sizes, perturbed densities) and
connected Watts-Strogatz small-world graphs as a structureless control.
Both are reproducible: every step draws from an RNG keyed by (seed, step).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from graphpix.dyngraph import DynamicGraph, Snapshot, canonical_edge


@dataclass
class StateSpec:
    """One temporal state: SBM parameters and how many steps it lasts.

    density_jitter is the per-step relative perturbation of p_in/p_out
    ("minor edge density changes"); node_jitter the per-step, per-block
    node-count perturbation.
    """

    n_blocks: int
    nodes_per_block: int
    count: int
    p_in: float = 0.25
    p_out: float = 0.02
    node_jitter: int = 0
    density_jitter: float = 0.1
    state_id: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_blocks < 1:
            raise ValueError("n_blocks must be >= 1")
        if not (0 <= self.p_out < self.p_in <= 1):
            raise ValueError(f"need 0 <= p_out < p_in <= 1, got p_in={self.p_in}, p_out={self.p_out}")
        if self.nodes_per_block <= self.node_jitter:
            raise ValueError("node_jitter must be smaller than nodes_per_block")
        if not (0 <= self.density_jitter < 1):
            raise ValueError("density_jitter must be in [0, 1)")
        if self.count < 0:
            raise ValueError("count must be >= 0")


def _step_rng(seed: int, step: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, 0, step)))


def _bernoulli_pair_indices(rng: np.random.Generator, n_pairs: int, p: float) -> np.ndarray:
    """Indices of successes among n_pairs Bernoulli(p) trials via geometric skips."""
    if n_pairs <= 0 or p <= 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1:
        return np.arange(n_pairs, dtype=np.int64)
    out = []
    pos = -1
    # expected draws = n_pairs * p; batch the geometric jumps
    batch = max(16, int(n_pairs * p * 1.2) + 16)
    while True:
        gaps = rng.geometric(p, size=batch)
        steps = np.cumsum(gaps)
        idx = pos + steps
        take = idx[idx < n_pairs]
        out.append(take)
        if len(take) < len(idx):
            break
        pos = int(idx[-1])
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def _triangular_pairs(ids: np.ndarray, flat: np.ndarray) -> list[tuple[int, int]]:
    """Decode flat indices over the i<j pair space of ``ids``."""
    n = len(ids)
    if len(flat) == 0:
        return []
    # row i starts at offset i*n - i*(i+1)/2 - i ... solve via cumulative row sizes
    row_sizes = np.arange(n - 1, 0, -1)
    row_starts = np.concatenate(([0], np.cumsum(row_sizes)))
    rows = np.searchsorted(row_starts, flat, side="right") - 1
    cols = flat - row_starts[rows] + rows + 1
    return [(int(ids[i]), int(ids[j])) for i, j in zip(rows, cols)]


def _bipartite_pairs(a: np.ndarray, b: np.ndarray, flat: np.ndarray) -> list[tuple[int, int]]:
    if len(flat) == 0:
        return []
    rows, cols = np.divmod(flat, len(b))
    return [(int(a[i]), int(b[j])) for i, j in zip(rows, cols)]


def _sbm_step(rng: np.random.Generator, spec: StateSpec) -> Snapshot:
    slot = spec.nodes_per_block + spec.node_jitter
    sizes = [
        int(spec.nodes_per_block + rng.integers(-spec.node_jitter, spec.node_jitter + 1))
        if spec.node_jitter > 0 else spec.nodes_per_block
        for _ in range(spec.n_blocks)
    ]
    blocks = [np.arange(b * slot, b * slot + sizes[b], dtype=np.int64) for b in range(spec.n_blocks)]

    # minor density change per step; exact 0/1 stay deterministic
    p_in, p_out = spec.p_in, spec.p_out
    if 0.0 < p_in < 1.0:
        p_in = min(1.0, p_in * (1 + spec.density_jitter * rng.uniform(-1, 1)))
    if 0.0 < p_out < 1.0:
        p_out = min(p_in, p_out * (1 + spec.density_jitter * rng.uniform(-1, 1)))

    snap = Snapshot(index=0)
    for ids in blocks:
        snap.nodes.update(int(v) for v in ids)
        n_pairs = len(ids) * (len(ids) - 1) // 2
        for u, v in _triangular_pairs(ids, _bernoulli_pair_indices(rng, n_pairs, p_in)):
            snap.edges[canonical_edge(u, v)] = (1.0, None)
    for bi in range(spec.n_blocks):
        for bj in range(bi + 1, spec.n_blocks):
            a, b = blocks[bi], blocks[bj]
            flat = _bernoulli_pair_indices(rng, len(a) * len(b), p_out)
            for u, v in _bipartite_pairs(a, b, flat):
                snap.edges[canonical_edge(u, v)] = (1.0, None)
    return snap


def sbm_dynamic(
    states: Sequence[StateSpec], seed: int = 0, shuffle: bool = True
) -> tuple[DynamicGraph, list[int]]:
    """Dynamic graph of independently sampled SBM steps plus per-step state labels.

    Steps are optionally shuffled; labels stay aligned with the final order.
    """
    if sum(s.count for s in states) < 1:
        raise ValueError("state counts must sum to at least 1")
    plan: list[tuple[int, StateSpec]] = []
    for idx, spec in enumerate(states):
        label = spec.state_id if spec.state_id is not None else idx
        plan.extend((label, spec) for _ in range(spec.count))

    T = len(plan)
    order = np.arange(T)
    if shuffle:
        shuffle_rng = np.random.default_rng(np.random.SeedSequence((seed, 1)))
        order = shuffle_rng.permutation(T)

    snapshots: list[Snapshot] = []
    labels: list[int] = []
    for pos, src in enumerate(order):
        label, spec = plan[src]
        snap = _sbm_step(_step_rng(seed, int(src)), spec)
        snap.index = pos
        snapshots.append(snap)
        labels.append(label)
    g = DynamicGraph(snapshots=snapshots)
    g.validate()
    return g, labels


def _is_connected(n: int, edges: set[tuple[int, int]]) -> bool:
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


def _ws_step(rng: np.random.Generator, n: int, k: int, p_rewire: float) -> Optional[Snapshot]:
    edges: set[tuple[int, int]] = set()
    for j in range(1, k // 2 + 1):
        for i in range(n):
            edges.add(canonical_edge(i, (i + j) % n))
    if p_rewire > 0:
        for j in range(1, k // 2 + 1):
            for i in range(n):
                if rng.random() >= p_rewire:
                    continue
                old = canonical_edge(i, (i + j) % n)
                if old not in edges:
                    continue
                w = int(rng.integers(0, n))
                if w == i or canonical_edge(i, w) in edges:
                    continue
                edges.remove(old)
                edges.add(canonical_edge(i, w))
    if not _is_connected(n, edges):
        return None
    snap = Snapshot(index=0, nodes=set(range(n)))
    snap.edges = {e: (1.0, None) for e in sorted(edges)}
    return snap


def ws_dynamic(
    T: int,
    n: int,
    k_min: int,
    k_max: int,
    p_rewire: float = 0.05,
    seed: int = 0,
    max_retries: int = 100,
) -> DynamicGraph:
    """T connected Watts-Strogatz small-world snapshots on n nodes.

    Per step the neighbor count k is drawn uniformly from [k_min, k_max]
    (odd k rounded up to even), a ring lattice is rewired edge-by-edge with
    probability p_rewire, and disconnected samples are redrawn.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    if k_max < k_min or k_min < 2:
        raise ValueError("need 2 <= k_min <= k_max")
    if k_max + 2 > n:
        raise ValueError("n must exceed k_max + 1")
    if not (0 <= p_rewire < 1):
        raise ValueError("p_rewire must be in [0, 1)")

    snapshots = []
    for t in range(T):
        rng = _step_rng(seed, t)
        snap = None
        for _ in range(max_retries):
            k = int(rng.integers(k_min, k_max + 1))
            if k % 2 == 1:
                k += 1
            snap = _ws_step(rng, n, k, p_rewire)
            if snap is not None:
                break
        if snap is None:
            raise RuntimeError(f"step {t}: no connected sample within {max_retries} retries")
        snap.index = t
        snapshots.append(snap)
    g = DynamicGraph(snapshots=snapshots)
    g.validate()
    return g


def write_dataset(
    out_dir: str | Path,
    g: DynamicGraph,
    labels: Optional[Sequence[int]] = None,
    config: Optional[dict] = None,
) -> None:
    """Emit the edge-list file plus a ground-truth/config sidecar JSON."""
    from graphpix.dyngraph import export_edge_list

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "edges.csv", "w") as f:
        export_edge_list(g, f)
    sidecar: dict = {"T": g.T, "n_universe": len(g.node_universe)}
    if labels is not None:
        sidecar["labels"] = list(map(int, labels))
    if config is not None:
        sidecar["config"] = config
    with open(out / "truth.json", "w") as f:
        json.dump(sidecar, f, indent=2)


def state_config(states: Sequence[StateSpec]) -> dict:
    return {"states": [asdict(s) for s in states]}
