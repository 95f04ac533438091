"""Embedding matrix container: raw + L2-normalized vectors for every supergraph,
with a JSON manifest / float32 sidecar file format and CSV export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from graphpix.dyngraph import IntervalId


@dataclass
class Embedding:
    """One graph's vector: raw and unit-norm views plus a degeneracy flag."""

    key: IntervalId
    method: str
    raw: np.ndarray
    normalized: Optional[np.ndarray]
    degenerate: bool = False


@dataclass
class EmbeddingMatrix:
    """Per-method vectors for a set of supergraphs in level-major key order."""

    method: str
    d: int
    keys: list[IntervalId]
    raw: np.ndarray
    normalized: Optional[np.ndarray] = None
    degenerate: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.raw = np.asarray(self.raw, dtype=np.float64)
        if self.raw.shape != (len(self.keys), self.d):
            raise ValueError(f"raw shape {self.raw.shape} != ({len(self.keys)}, {self.d})")
        if self.degenerate is None:
            self.degenerate = np.zeros(len(self.keys), dtype=bool)
        self._index = {k: i for i, k in enumerate(self.keys)}

    @property
    def count(self) -> int:
        return len(self.keys)

    def index_of(self, key: IntervalId) -> int:
        idx = self._index.get(key)
        if idx is None:
            raise KeyError(f"no embedding for (level={key.level}, start={key.start})")
        return idx

    def has_key(self, key: IntervalId) -> bool:
        return key in self._index

    def embedding(self, key: IntervalId) -> Embedding:
        i = self.index_of(key)
        return Embedding(
            key=key,
            method=self.method,
            raw=self.raw[i],
            normalized=None if self.normalized is None else self.normalized[i],
            degenerate=bool(self.degenerate[i]),
        )

    def rows_for(self, keys: Sequence[IntervalId]) -> np.ndarray:
        return np.asarray([self.index_of(k) for k in keys], dtype=np.int64)


def l2_normalize(raw: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise raw/|raw|_2; all-zero rows stay zero and are flagged degenerate."""
    raw = np.asarray(raw, dtype=np.float64)
    norms = np.linalg.norm(raw, axis=-1, keepdims=True)
    zero = norms.squeeze(-1) == 0.0
    safe = np.where(norms == 0.0, 1.0, norms)
    return raw / safe, zero


def normalize(m: EmbeddingMatrix) -> EmbeddingMatrix:
    """Fill the normalized view; cosine of normalized rows equals their dot product."""
    normalized, zero = l2_normalize(m.raw)
    return EmbeddingMatrix(
        method=m.method,
        d=m.d,
        keys=list(m.keys),
        raw=m.raw,
        normalized=normalized,
        degenerate=np.asarray(m.degenerate, dtype=bool) | zero,
        meta=dict(m.meta),
    )


def save_matrix(m: EmbeddingMatrix, directory: str | Path, name: Optional[str] = None) -> Path:
    """Manifest `<name>.json` plus sidecar `<name>.bin` holding count*d raw then
    count*d normalized float32 values, little-endian."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    name = name or m.method
    normalized = m.normalized
    if normalized is None:
        normalized, _ = l2_normalize(m.raw)
    sidecar = directory / f"{name}.bin"
    with open(sidecar, "wb") as f:
        f.write(m.raw.astype("<f4").tobytes())
        f.write(np.asarray(normalized).astype("<f4").tobytes())
    manifest = {
        "method": m.method,
        "d": m.d,
        "count": m.count,
        "hyperparameters": {k: v for k, v in m.meta.items() if k != "seed"},
        "seed": m.meta.get("seed"),
        "keys": [[k.level, k.start] for k in m.keys],
        "degenerate": [int(i) for i in np.flatnonzero(m.degenerate)],
        "sidecar": sidecar.name,
    }
    path = directory / f"{name}.json"
    with open(path, "w") as f:
        json.dump(manifest, f, indent=2)
    return path


def load_matrix(manifest_path: str | Path) -> EmbeddingMatrix:
    manifest_path = Path(manifest_path)
    with open(manifest_path) as f:
        manifest = json.load(f)
    d = int(manifest["d"])
    count = int(manifest["count"])
    keys = [IntervalId(level, start) for level, start in manifest["keys"]]
    data = np.fromfile(manifest_path.parent / manifest["sidecar"], dtype="<f4")
    if data.size != 2 * count * d:
        raise ValueError(f"sidecar holds {data.size} floats, expected {2 * count * d}")
    raw = data[: count * d].reshape(count, d).astype(np.float64)
    normalized = data[count * d:].reshape(count, d).astype(np.float64)
    degenerate = np.zeros(count, dtype=bool)
    degenerate[manifest.get("degenerate", [])] = True
    meta = dict(manifest.get("hyperparameters", {}))
    if manifest.get("seed") is not None:
        meta["seed"] = manifest["seed"]
    return EmbeddingMatrix(
        method=manifest["method"],
        d=d,
        keys=keys,
        raw=raw,
        normalized=normalized,
        degenerate=degenerate,
        meta=meta,
    )


def export_csv(m: EmbeddingMatrix, path: str | Path) -> None:
    normalized = m.normalized
    if normalized is None:
        normalized, _ = l2_normalize(m.raw)
    with open(path, "w") as f:
        raw_cols = ",".join(f"raw_{i}" for i in range(m.d))
        norm_cols = ",".join(f"norm_{i}" for i in range(m.d))
        f.write(f"level,start,degenerate,{raw_cols},{norm_cols}\n")
        for i, key in enumerate(m.keys):
            raw_txt = ",".join(repr(float(x)) for x in m.raw[i])
            norm_txt = ",".join(repr(float(x)) for x in normalized[i])
            f.write(f"{key.level},{key.start},{int(m.degenerate[i])},{raw_txt},{norm_txt}\n")
