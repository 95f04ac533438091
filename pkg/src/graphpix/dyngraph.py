"""Dynamic graph model: snapshots, edge-list ingestion and the dyadic multiscale
supergraph hierarchy.

A dynamic graph is an ordered sequence of undirected snapshots over a shared
node universe.  The timeline is recursively halved into dyadic intervals; the
union graph (supergraph) of every interval at every level forms the multiscale
hierarchy that the embedding and view layers operate on.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional

Edge = tuple[int, int]


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


def canonical_edge(src: int, dst: int) -> Edge:
    """Undirected canonical form: endpoints sorted ascending."""
    return (src, dst) if src <= dst else (dst, src)


@dataclass
class Snapshot:
    """One time step: a set of nodes and canonical undirected edges.

    ``edges`` maps a canonical (src, dst) pair to (weight, sign); sign is
    +1/-1 or None.  Parallel input edges collapse into one entry with summed
    weight.  Self-loops are retained.
    """

    index: int
    nodes: set[int] = field(default_factory=set)
    edges: dict[Edge, tuple[float, Optional[int]]] = field(default_factory=dict)
    wall_time: Optional[float] = None

    def add_edge(self, src: int, dst: int, weight: float = 1.0, sign: Optional[int] = None) -> None:
        key = canonical_edge(src, dst)
        self.nodes.add(src)
        self.nodes.add(dst)
        if key in self.edges:
            w, s = self.edges[key]
            self.edges[key] = (w + weight, _merge_sign(s, sign))
        else:
            self.edges[key] = (weight, sign)

    def validate(self) -> None:
        if self.index < 0:
            raise ValueError(f"snapshot index must be >= 0, got {self.index}")
        for (u, v) in self.edges:
            if u > v:
                raise ValueError(f"edge ({u},{v}) not canonical")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u},{v}) endpoint missing from nodes")


def _merge_sign(a: Optional[int], b: Optional[int]) -> Optional[int]:
    # Net sentiment of collapsed parallel edges; opposite signs cancel to None.
    total = (a or 0) + (b or 0)
    if total > 0:
        return 1
    if total < 0:
        return -1
    return None if (a is None and b is None) else None


@dataclass
class DynamicGraph:
    """Ordered snapshots with consecutive indices 0..T-1 over one node universe."""

    snapshots: list[Snapshot]
    node_universe: set[int] = field(default_factory=set)
    node_labels: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for snap in self.snapshots:
            self.node_universe |= snap.nodes

    @property
    def T(self) -> int:
        return len(self.snapshots)

    def validate(self) -> None:
        if self.T < 1:
            raise ValueError("dynamic graph needs at least one snapshot")
        for k, snap in enumerate(self.snapshots):
            if snap.index != k:
                raise ValueError(f"snapshot indices must be consecutive, got {snap.index} at {k}")
            snap.validate()
            if not snap.nodes <= self.node_universe:
                raise ValueError(f"snapshot {k} has nodes outside the universe")


@dataclass(frozen=True, order=True)
class IntervalId:
    """Dyadic interval: level L covers steps [start*2^L, min((start+1)*2^L, T))."""

    level: int
    start: int

    def t0(self) -> int:
        return self.start << self.level

    def t1(self, T: int) -> int:
        return min((self.start + 1) << self.level, T)

    def span(self, T: int) -> int:
        return self.t1(T) - self.t0()

    def steps(self, T: int) -> range:
        return range(self.t0(), self.t1(T))

    def is_valid(self, T: int) -> bool:
        return self.level >= 0 and self.start >= 0 and self.t0() < T

    def parent(self) -> "IntervalId":
        return IntervalId(self.level + 1, self.start // 2)


@dataclass
class Supergraph:
    """Union of the snapshots in an interval, with per-element presence counts.

    ``nodes`` and ``edges`` map element -> number of covered snapshots that
    contain it (1 <= count <= span).
    """

    interval: Optional[IntervalId]
    nodes: dict[int, int]
    edges: dict[Edge, int]
    span: int

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        """Neighbor sets; a self-loop makes a node its own neighbor."""
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for (u, v) in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def validate(self) -> None:
        for v, c in self.nodes.items():
            if not (1 <= c <= self.span):
                raise ValueError(f"node {v} count {c} outside [1, {self.span}]")
        for (u, v), c in self.edges.items():
            if not (1 <= c <= self.span):
                raise ValueError(f"edge ({u},{v}) count {c} outside [1, {self.span}]")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u},{v}) endpoint missing")


def snapshot_supergraph(snap: Snapshot, interval: IntervalId) -> Supergraph:
    return Supergraph(
        interval=interval,
        nodes={v: 1 for v in snap.nodes},
        edges={e: 1 for e in snap.edges},
        span=1,
    )


def merge_supergraphs(a: Supergraph, b: Supergraph, interval: IntervalId) -> Supergraph:
    nodes = dict(a.nodes)
    for v, c in b.nodes.items():
        nodes[v] = nodes.get(v, 0) + c
    edges = dict(a.edges)
    for e, c in b.edges.items():
        edges[e] = edges.get(e, 0) + c
    return Supergraph(interval=interval, nodes=nodes, edges=edges, span=a.span + b.span)


def supergraph(g: DynamicGraph, iv: IntervalId) -> Supergraph:
    """Union of nodes/edges over the snapshots covered by ``iv``."""
    if not iv.is_valid(g.T):
        raise ValueError(f"interval (level={iv.level}, start={iv.start}) out of range for T={g.T}")
    nodes: dict[int, int] = {}
    edges: dict[Edge, int] = {}
    for t in iv.steps(g.T):
        snap = g.snapshots[t]
        for v in snap.nodes:
            nodes[v] = nodes.get(v, 0) + 1
        for e in snap.edges:
            edges[e] = edges.get(e, 0) + 1
    return Supergraph(interval=iv, nodes=nodes, edges=edges, span=iv.span(g.T))


def max_level(T: int) -> int:
    """Top level: ceil(log2 T); 0 for T == 1."""
    if T < 1:
        raise ValueError("T must be >= 1")
    return max(0, math.ceil(math.log2(T))) if T > 1 else 0


def level_count(T: int, level: int) -> int:
    """Number of intervals at a level: ceil(T / 2^level)."""
    return -(-T // (1 << level))


def children(iv: IntervalId, T: int) -> list[IntervalId]:
    """The 1 or 2 intervals one level down covering the same steps."""
    if iv.level < 1:
        raise ValueError("already finest granularity")
    if not iv.is_valid(T):
        raise ValueError(f"interval (level={iv.level}, start={iv.start}) out of range for T={T}")
    out = []
    for s in (2 * iv.start, 2 * iv.start + 1):
        child = IntervalId(iv.level - 1, s)
        if child.is_valid(T):
            out.append(child)
    return out


@dataclass
class MultiscaleHierarchy:
    """All supergraphs at every dyadic level, indexed by (level, start)."""

    T: int
    levels: list[list[Supergraph]]

    @property
    def Lmax(self) -> int:
        return len(self.levels) - 1

    @property
    def total_count(self) -> int:
        return sum(len(lv) for lv in self.levels)

    def get(self, iv: IntervalId) -> Supergraph:
        if not (0 <= iv.level <= self.Lmax) or not (0 <= iv.start < len(self.levels[iv.level])):
            raise KeyError(f"no supergraph for (level={iv.level}, start={iv.start})")
        return self.levels[iv.level][iv.start]

    def root(self) -> Supergraph:
        return self.levels[-1][0]

    def iter_supergraphs(self, levels: Optional[Iterable[int]] = None) -> Iterator[Supergraph]:
        """Level-major order (level ascending, start ascending)."""
        wanted = range(len(self.levels)) if levels is None else sorted(set(levels))
        for L in wanted:
            yield from self.levels[L]

    def keys(self, levels: Optional[Iterable[int]] = None) -> list[IntervalId]:
        return [sg.interval for sg in self.iter_supergraphs(levels)]


def build_hierarchy(g: DynamicGraph) -> MultiscaleHierarchy:
    """Populate levels 0..ceil(log2 T); each parent is the union of its children."""
    T = g.T
    if T < 1:
        raise ValueError("dynamic graph needs at least one snapshot")
    level0 = [snapshot_supergraph(snap, IntervalId(0, k)) for k, snap in enumerate(g.snapshots)]
    levels = [level0]
    for L in range(1, max_level(T) + 1):
        below = levels[L - 1]
        row = []
        for s in range(level_count(T, L)):
            left = below[2 * s]
            if 2 * s + 1 < len(below):
                row.append(merge_supergraphs(left, below[2 * s + 1], IntervalId(L, s)))
            else:
                row.append(Supergraph(IntervalId(L, s), dict(left.nodes), dict(left.edges), left.span))
        levels.append(row)
    return MultiscaleHierarchy(T=T, levels=levels)


# ---------------------------------------------------------------------------
# Edge-list ingestion / export
# ---------------------------------------------------------------------------

@dataclass
class SliceConfig:
    """How an edge list's first column maps to snapshot indices.

    mode="indexed": t is already a step index.  mode="timed": t is epoch
    seconds bucketed into windows of ``bucket_seconds``.  The earliest bucket
    becomes step 0; empty buckets in between become empty snapshots.
    """

    mode: str = "indexed"
    bucket_seconds: float = 3600.0

    def __post_init__(self) -> None:
        if self.mode not in ("indexed", "timed"):
            raise ValueError(f"unknown slicing mode {self.mode!r}")
        if self.mode == "timed" and self.bucket_seconds <= 0:
            raise ValueError("bucket_seconds must be positive")


def ingest_edge_list(stream: Iterable[str], config: SliceConfig | None = None) -> DynamicGraph:
    """Parse `t,src,dst[,weight[,sign]]` lines into a DynamicGraph.

    Lines starting with `#` are comments; blank lines are skipped.  Input
    order is irrelevant (lines are bucketed).  Raises EdgeListError with the
    line number on malformed input and on an entirely empty dataset.
    """
    config = config or SliceConfig()
    records: list[tuple[int, int, int, float, Optional[int]]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 3 or len(parts) > 5:
            raise EdgeListError(f"expected t,src,dst[,weight[,sign]], got {line!r}", line_no)
        try:
            if config.mode == "indexed":
                t_val = int(parts[0])
                if t_val < 0:
                    raise ValueError("negative step index")
                bucket = t_val
            else:
                bucket = int(float(parts[0]) // config.bucket_seconds)
            src = int(parts[1])
            dst = int(parts[2])
            weight = float(parts[3]) if len(parts) >= 4 and parts[3] != "" else 1.0
            sign: Optional[int] = None
            if len(parts) == 5 and parts[4] != "":
                sign = int(parts[4])
                if sign not in (1, -1):
                    raise ValueError(f"sign must be +1 or -1, got {sign}")
        except ValueError as exc:
            raise EdgeListError(str(exc), line_no) from exc
        records.append((bucket, src, dst, weight, sign))

    if not records:
        raise EdgeListError("empty dataset")

    base = min(r[0] for r in records)
    last = max(r[0] for r in records)
    T = last - base + 1
    snapshots = [Snapshot(index=k) for k in range(T)]
    if config.mode == "timed":
        for k, snap in enumerate(snapshots):
            snap.wall_time = (base + k) * config.bucket_seconds
    for bucket, src, dst, weight, sign in records:
        snapshots[bucket - base].add_edge(src, dst, weight, sign)
    g = DynamicGraph(snapshots=snapshots)
    g.validate()
    return g


def export_edge_list(g: DynamicGraph, out: IO[str]) -> None:
    """Inverse of ingestion up to line order and edge canonicalization."""
    out.write("# t,src,dst,weight,sign\n")
    for snap in g.snapshots:
        for (u, v), (w, s) in sorted(snap.edges.items()):
            if s is None:
                out.write(f"{snap.index},{u},{v},{w!r}\n")
            else:
                out.write(f"{snap.index},{u},{v},{w!r},{s}\n")


# ---------------------------------------------------------------------------
# Binary hierarchy file
# ---------------------------------------------------------------------------

_MAGIC = b"DG2PIX\x00"
_VERSION = 1


def save_hierarchy(h: MultiscaleHierarchy, path: str | Path) -> None:
    """Header {magic, version u16, T u64, Lmax u16}, then one length-prefixed
    block per supergraph in level-major order (little-endian u64 ids, u32 counts)."""
    with open(path, "wb") as f:
        f.write(_MAGIC)
        f.write(struct.pack("<HQH", _VERSION, h.T, h.Lmax))
        for sg in h.iter_supergraphs():
            body = bytearray()
            body += struct.pack("<Q", sg.n_nodes)
            for v in sorted(sg.nodes):
                body += struct.pack("<QI", v, sg.nodes[v])
            body += struct.pack("<Q", sg.n_edges)
            for (u, v) in sorted(sg.edges):
                body += struct.pack("<QQI", u, v, sg.edges[(u, v)])
            f.write(struct.pack("<Q", len(body)))
            f.write(body)


def load_hierarchy(path: str | Path) -> MultiscaleHierarchy:
    with open(path, "rb") as f:
        magic = f.read(len(_MAGIC))
        if magic != _MAGIC:
            raise ValueError("not a hierarchy file (bad magic)")
        version, T, lmax = struct.unpack("<HQH", f.read(12))
        if version != _VERSION:
            raise ValueError(f"unsupported hierarchy version {version}")
        levels: list[list[Supergraph]] = []
        for L in range(lmax + 1):
            row = []
            for s in range(level_count(T, L)):
                (block_len,) = struct.unpack("<Q", f.read(8))
                body = f.read(block_len)
                off = 0
                (n_nodes,) = struct.unpack_from("<Q", body, off)
                off += 8
                nodes: dict[int, int] = {}
                for _ in range(n_nodes):
                    v, c = struct.unpack_from("<QI", body, off)
                    off += 12
                    nodes[v] = c
                (n_edges,) = struct.unpack_from("<Q", body, off)
                off += 8
                edges: dict[Edge, int] = {}
                for _ in range(n_edges):
                    u, v, c = struct.unpack_from("<QQI", body, off)
                    off += 20
                    edges[(u, v)] = c
                iv = IntervalId(L, s)
                row.append(Supergraph(interval=iv, nodes=nodes, edges=edges, span=iv.span(T)))
            levels.append(row)
    return MultiscaleHierarchy(T=T, levels=levels)
