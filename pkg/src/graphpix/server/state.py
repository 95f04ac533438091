"""Service configuration, dataset registry, and per-session state.

Datasets live under a data root, one directory each, holding the edge list,
optional cached hierarchy/embeddings, and an optional ground-truth sidecar.
Loaded datasets are immutable; sessions mutate only their own view under a
per-session lock.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from graphpix.analytics import ClusterResult, Layout, fr_layout
from graphpix.dyngraph import (
    DynamicGraph,
    MultiscaleHierarchy,
    SliceConfig,
    build_hierarchy,
    ingest_edge_list,
    load_hierarchy,
    save_hierarchy,
)
from graphpix.embed import EmbeddingMatrix, load_matrix
from graphpix.server.views import ViewCut, default_view

CONFIG_ENV = "GRAPHPIX_CONFIG"


@dataclass
class ServerConfig:
    data_root: str = "data"
    default_cap: int = 400
    hard_max_cap: int = 1920
    color_segments: int = 1
    cell_height_px: int = 2
    zoom_bar_height_px: int = 48
    layout_seed: int = 0
    layout_iterations: int = 500
    port: int = 8000


def load_config(path: Optional[str] = None) -> ServerConfig:
    """Read config JSON; the GRAPHPIX_CONFIG env var overrides the path."""
    effective = os.environ.get(CONFIG_ENV) or path
    cfg = ServerConfig()
    if effective and Path(effective).exists():
        with open(effective) as f:
            data = json.load(f)
        for key, value in data.items():
            if hasattr(cfg, key):
                setattr(cfg, key, value)
    return cfg


@dataclass
class Dataset:
    dataset_id: str
    path: Path
    graph: DynamicGraph
    hierarchy: MultiscaleHierarchy
    embeddings: dict[str, EmbeddingMatrix] = field(default_factory=dict)
    truth: Optional[dict] = None
    _layout: Optional[Layout] = None
    _layout_lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def methods(self) -> list[str]:
        return sorted(self.embeddings)

    def layout(self, seed: int, iterations: int) -> Layout:
        with self._layout_lock:
            if self._layout is None:
                cache = self.path / "layout.json"
                if cache.exists():
                    with open(cache) as f:
                        data = json.load(f)
                    self._layout = Layout(
                        positions={int(k): (v[0], v[1]) for k, v in data["positions"].items()},
                        seed=data["seed"],
                        iterations=data["iterations"],
                    )
                else:
                    self._layout = fr_layout(self.hierarchy.root(), seed, iterations)
                    with open(cache, "w") as f:
                        json.dump(self._layout.to_json(), f)
            return self._layout


def load_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    edges = path / "edges.csv"
    if not edges.exists():
        raise FileNotFoundError(f"{path} has no edges.csv")

    slice_cfg = SliceConfig()
    meta_file = path / "meta.json"
    if meta_file.exists():
        with open(meta_file) as f:
            meta = json.load(f)
        slice_cfg = SliceConfig(
            mode=meta.get("mode", "indexed"),
            bucket_seconds=meta.get("bucket_seconds", 3600.0),
        )
    with open(edges) as f:
        graph = ingest_edge_list(f, slice_cfg)

    hier_file = path / "hierarchy.bin"
    if hier_file.exists():
        hierarchy = load_hierarchy(hier_file)
    else:
        hierarchy = build_hierarchy(graph)
        save_hierarchy(hierarchy, hier_file)

    embeddings = {}
    emb_dir = path / "embeddings"
    if emb_dir.is_dir():
        for manifest in sorted(emb_dir.glob("*.json")):
            matrix = load_matrix(manifest)
            embeddings[matrix.method] = matrix

    truth = None
    truth_file = path / "truth.json"
    if truth_file.exists():
        with open(truth_file) as f:
            truth = json.load(f)

    return Dataset(
        dataset_id=path.name,
        path=path,
        graph=graph,
        hierarchy=hierarchy,
        embeddings=embeddings,
        truth=truth,
    )


def load_registry(data_root: str | Path) -> dict[str, Dataset]:
    root = Path(data_root)
    registry: dict[str, Dataset] = {}
    if not root.is_dir():
        return registry
    for child in sorted(root.iterdir()):
        if child.is_dir() and (child / "edges.csv").exists():
            registry[child.name] = load_dataset(child)
    return registry


@dataclass
class SessionState:
    """One exploration session: the view plus invalidatable analysis caches."""

    session_id: str
    dataset_id: str
    view: ViewCut
    revision: int = 0
    cluster: Optional[ClusterResult] = None
    cluster_params: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def bump(self) -> None:
        self.revision += 1
        self.cluster = None


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, SessionState] = {}
        self._lock = threading.Lock()

    def create(self, dataset: Dataset, cap: int, method: str) -> SessionState:
        view = default_view(dataset.dataset_id, dataset.graph.T, cap, method)
        session = SessionState(
            session_id=uuid.uuid4().hex[:12],
            dataset_id=dataset.dataset_id,
            view=view,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Optional[SessionState]:
        with self._lock:
            return self._sessions.get(session_id)
