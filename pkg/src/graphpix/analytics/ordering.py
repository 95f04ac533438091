"""Row and column reordering for the pixel matrix.

Rows (embedding dimensions) sort by a per-dimension statistic of the displayed
raw values; columns sort by time, by cluster membership, or by similarity to a
query column.  All functions return permutations and never touch the values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from graphpix.dyngraph import IntervalId

ROW_STATS = ("none", "median", "mean", "min", "max", "variance", "std")
COL_MODES = ("time", "cluster", "similarity")


@dataclass
class OrderingSpec:
    """Active reordering choice; a similarity query key is required exactly
    when col_mode == "similarity"."""

    row_stat: str = "none"
    col_mode: str = "time"
    similarity_query: Optional[IntervalId] = None

    def validate(self) -> None:
        if self.row_stat not in ROW_STATS:
            raise ValueError(f"unknown row_stat {self.row_stat!r}")
        if self.col_mode not in COL_MODES:
            raise ValueError(f"unknown col_mode {self.col_mode!r}")
        if (self.similarity_query is not None) != (self.col_mode == "similarity"):
            raise ValueError("similarity_query must be set iff col_mode == 'similarity'")


def row_order(raw_columns: np.ndarray, stat: str) -> np.ndarray:
    """Ascending stable order of the d dimensions by a statistic computed on the
    raw (pre-normalization) values across the displayed columns."""
    raw_columns = np.asarray(raw_columns, dtype=np.float64)
    if raw_columns.ndim != 2 or raw_columns.shape[0] < 1:
        raise ValueError("need a (columns, d) matrix with at least one column")
    d = raw_columns.shape[1]
    if stat == "none":
        return np.arange(d)
    if stat == "median":
        values = np.median(raw_columns, axis=0)
    elif stat == "mean":
        values = np.mean(raw_columns, axis=0)
    elif stat == "min":
        values = np.min(raw_columns, axis=0)
    elif stat == "max":
        values = np.max(raw_columns, axis=0)
    elif stat == "variance":
        values = np.var(raw_columns, axis=0)
    elif stat == "std":
        values = np.std(raw_columns, axis=0)
    else:
        raise ValueError(f"unknown row_stat {stat!r}")
    return np.argsort(values, kind="stable")


def _time_key(iv: IntervalId) -> tuple[int, int]:
    return (iv.t0(), iv.level)


def col_order(
    keys: Sequence[IntervalId],
    normalized: Optional[np.ndarray],
    mode: str,
    cluster_labels: Optional[np.ndarray] = None,
    query: Optional[IntervalId] = None,
) -> np.ndarray:
    """Column permutation for the pixel matrix.

    time: chronological by interval start.  cluster: noise group first, then
    clusters ascending by median member time, members within a group by time.
    similarity: the query column first, then descending cosine similarity.
    """
    n = len(keys)
    positions = list(range(n))
    if mode == "time":
        return np.asarray(sorted(positions, key=lambda p: _time_key(keys[p])), dtype=np.int64)

    if mode == "cluster":
        if cluster_labels is None:
            raise ValueError("cluster mode requires cluster labels")
        labels = np.asarray(cluster_labels)
        if labels.shape[0] != n:
            raise ValueError("one label per column required")
        starts = np.asarray([k.t0() for k in keys], dtype=np.float64)
        group_rank: dict[int, tuple] = {}
        for lab in set(labels.tolist()):
            members = np.flatnonzero(labels == lab)
            median_time = float(np.median(starts[members]))
            # noise always leads; ties between clusters break on the label
            group_rank[lab] = (0,) if lab == -1 else (1, median_time, lab)
        return np.asarray(
            sorted(positions, key=lambda p: (group_rank[int(labels[p])], _time_key(keys[p]))),
            dtype=np.int64,
        )

    if mode == "similarity":
        if query is None:
            raise ValueError("similarity mode requires a query key")
        if normalized is None:
            raise ValueError("similarity mode requires normalized vectors")
        try:
            qi = list(keys).index(query)
        except ValueError:
            raise ValueError(
                f"query (level={query.level}, start={query.start}) is not among the displayed columns"
            ) from None
        sims = np.asarray(normalized) @ np.asarray(normalized)[qi]
        rest = sorted(
            (p for p in positions if p != qi),
            key=lambda p: (-float(sims[p]),) + _time_key(keys[p]),
        )
        return np.asarray([qi] + rest, dtype=np.int64)

    raise ValueError(f"unknown col_mode {mode!r}")


def cluster_frames(display_labels: Sequence[int]) -> list[tuple[int, int]]:
    """Inclusive column ranges of contiguous same-cluster runs (noise skipped),
    over labels already arranged in display order."""
    frames = []
    start = None
    prev = None
    for i, lab in enumerate(display_labels):
        lab = int(lab)
        if lab == -1:
            if start is not None:
                frames.append((start, i - 1))
                start = None
        elif lab != prev:
            if start is not None:
                frames.append((start, i - 1))
            start = i
        prev = lab
    if start is not None:
        frames.append((start, len(display_labels) - 1))
    return frames
