"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class IntervalModel(BaseModel):
    level: int
    start: int


class DatasetInfo(BaseModel):
    id: str
    T: int
    n_nodes: int
    n_edges_total: int
    lmax: int
    supergraphs: int
    methods: list[str]


class SessionCreate(BaseModel):
    dataset: str
    screen_width_px: Optional[int] = None


class SessionCreated(BaseModel):
    session: str


class OrderingModel(BaseModel):
    row_stat: str = "none"
    col_mode: str = "time"
    query: Optional[IntervalModel] = None


class ViewModel(BaseModel):
    dataset: str
    T: int
    lmax: int
    cap: int
    method: str
    methods: list[str]
    intervals: list[IntervalModel]
    visible: list[int]
    window: Optional[tuple[int, int]] = None
    ordering: OrderingModel
    revision: int


class DrillRequest(BaseModel):
    bar: int


class RollupRequest(BaseModel):
    bars: list[int]


class WindowRequest(BaseModel):
    t0: Optional[int] = None
    t1: Optional[int] = None


class OrderRequest(BaseModel):
    row_stat: str = "none"
    col_mode: str = "time"
    query: Optional[IntervalModel] = None


class MethodRequest(BaseModel):
    method: str


class ClusterRequest(BaseModel):
    min_cluster_size: int = Field(default=5, ge=2)
    min_samples: Optional[int] = None


class ClusterModel(BaseModel):
    labels: list[int]
    n_clusters: int
    stabilities: dict[str, float]
    params: dict


class PixelsJson(BaseModel):
    columns: int
    d: int
    classes: list[list[int]]
    palette: list[str]
    keys: list[IntervalModel]
    bar_width_px: int
    cell_height_px: int
    width_px: int
    height_px: int
    domain_max: float
    frames: list[tuple[int, int]]
    revision: int


class ZoomBarJson(BaseModel):
    bars: list[dict]
    width_px: int
    height_px: int
    lmax: int
    revision: int


class GraphNode(BaseModel):
    id: int
    cls: str
    count: int
    x: float
    y: float
    label: Optional[str] = None


class GraphEdge(BaseModel):
    source: int
    target: int
    cls: str
    count: int
    sign: Optional[int] = None


class GraphPayload(BaseModel):
    nodes: list[GraphNode]
    edges: list[GraphEdge]
    counts: dict[str, dict[str, int]]
    bars: list[int]


class LayoutJson(BaseModel):
    positions: dict[str, tuple[float, float]]
    seed: int
    iterations: int
