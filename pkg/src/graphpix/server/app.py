"""HTTP service: datasets, session views, reordering, clustering, rendering,
and graph-view payloads, composed from the core package."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.staticfiles import StaticFiles

from graphpix.analytics import (
    OrderingSpec,
    cluster_frames,
    col_order,
    compare_intervals,
    hdbscan,
    row_order,
)
from graphpix.dyngraph import IntervalId
from graphpix.embed import EmbeddingMatrix
from graphpix.render import CapacityError, ColorSpec, render_pixels, render_zoom_bar
from graphpix.server import views as view_ops
from graphpix.server.models import (
    ClusterModel,
    ClusterRequest,
    DatasetInfo,
    DrillRequest,
    GraphEdge,
    GraphNode,
    GraphPayload,
    IntervalModel,
    LayoutJson,
    MethodRequest,
    OrderRequest,
    OrderingModel,
    PixelsJson,
    RollupRequest,
    SessionCreate,
    SessionCreated,
    ViewModel,
    WindowRequest,
    ZoomBarJson,
)
from graphpix.server.state import (
    Dataset,
    ServerConfig,
    SessionState,
    SessionStore,
    load_registry,
)
from graphpix.server.views import ViewCut, ViewError

UI_DIR_ENV = "GRAPHPIX_UI"


def create_app(
    config: Optional[ServerConfig] = None,
    registry: Optional[dict[str, Dataset]] = None,
) -> FastAPI:
    config = config or ServerConfig()
    datasets = load_registry(config.data_root) if registry is None else registry
    sessions = SessionStore()

    app = FastAPI(title="graphpix", version="0.1.0")

    def get_dataset(dataset_id: str) -> Dataset:
        ds = datasets.get(dataset_id)
        if ds is None:
            raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
        return ds

    def get_session(session_id: str) -> tuple[SessionState, Dataset]:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session, get_dataset(session.dataset_id)

    def get_matrix(ds: Dataset, method: str) -> EmbeddingMatrix:
        matrix = ds.embeddings.get(method)
        if matrix is None:
            raise HTTPException(
                status_code=409,
                detail=f"dataset {ds.dataset_id!r} has no {method!r} embeddings",
            )
        return matrix

    def view_model(session: SessionState, ds: Dataset) -> ViewModel:
        view = session.view
        ordering = OrderingModel(
            row_stat=view.ordering.row_stat,
            col_mode=view.ordering.col_mode,
            query=None
            if view.ordering.similarity_query is None
            else IntervalModel(
                level=view.ordering.similarity_query.level,
                start=view.ordering.similarity_query.start,
            ),
        )
        return ViewModel(
            dataset=ds.dataset_id,
            T=ds.graph.T,
            lmax=ds.hierarchy.Lmax,
            cap=view.cap,
            method=view.method,
            methods=ds.methods,
            intervals=[IntervalModel(level=iv.level, start=iv.start) for iv in view.intervals],
            visible=view_ops.visible_positions(view, ds.graph.T),
            window=view.window,
            ordering=ordering,
            revision=session.revision,
        )

    def displayed_columns(session: SessionState, ds: Dataset):
        """Visible interval keys and their embedding rows for the active method."""
        view = session.view
        matrix = get_matrix(ds, view.method)
        keys = [view.intervals[p] for p in view_ops.visible_positions(view, ds.graph.T)]
        missing = [k for k in keys if not matrix.has_key(k)]
        if missing:
            k = missing[0]
            raise HTTPException(
                status_code=409,
                detail=f"method {view.method!r} lacks an embedding for "
                f"(level={k.level}, start={k.start})",
            )
        idx = matrix.rows_for(keys)
        return keys, matrix.raw[idx], matrix.normalized[idx]

    def ensure_cluster(session: SessionState, normalized: np.ndarray):
        if session.cluster is None:
            params = session.cluster_params or {"min_cluster_size": 5}
            session.cluster = hdbscan(normalized, **params)
        return session.cluster

    def column_permutation(session: SessionState, keys, normalized):
        view = session.view
        spec = view.ordering
        if spec.col_mode == "cluster":
            result = ensure_cluster(session, normalized)
            perm = col_order(keys, normalized, "cluster", cluster_labels=result.labels)
            display_labels = result.labels[perm]
            return perm, cluster_frames(display_labels)
        if spec.col_mode == "similarity":
            perm = col_order(keys, normalized, "similarity", query=spec.similarity_query)
            return perm, []
        perm = col_order(keys, normalized, "time")
        return perm, []

    # ------------------------------------------------------------------ routes

    @app.get("/datasets", response_model=list[DatasetInfo])
    def list_datasets():
        out = []
        for ds in datasets.values():
            out.append(
                DatasetInfo(
                    id=ds.dataset_id,
                    T=ds.graph.T,
                    n_nodes=len(ds.graph.node_universe),
                    n_edges_total=sum(len(s.edges) for s in ds.graph.snapshots),
                    lmax=ds.hierarchy.Lmax,
                    supergraphs=ds.hierarchy.total_count,
                    methods=ds.methods,
                )
            )
        return out

    @app.post("/sessions", response_model=SessionCreated)
    def create_session(body: SessionCreate):
        ds = get_dataset(body.dataset)
        cap = body.screen_width_px or config.default_cap
        cap = max(1, min(cap, config.hard_max_cap))
        method = ds.methods[0] if ds.methods else ""
        session = sessions.create(ds, cap, method)
        return SessionCreated(session=session.session_id)

    @app.get("/sessions/{session_id}/view", response_model=ViewModel)
    def get_view(session_id: str):
        session, ds = get_session(session_id)
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/drill", response_model=ViewModel)
    def drill(session_id: str, body: DrillRequest):
        session, ds = get_session(session_id)
        with session.lock:
            try:
                session.view = view_ops.drill(session.view, body.bar, ds.graph.T)
            except (ViewError, CapacityError) as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            session.bump()
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/rollup", response_model=ViewModel)
    def rollup(session_id: str, body: RollupRequest):
        session, ds = get_session(session_id)
        with session.lock:
            try:
                session.view = view_ops.rollup(session.view, body.bars, ds.graph.T)
            except (ViewError, CapacityError) as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            session.bump()
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/window", response_model=ViewModel)
    def window(session_id: str, body: WindowRequest):
        session, ds = get_session(session_id)
        with session.lock:
            try:
                session.view = view_ops.set_window(session.view, body.t0, body.t1, ds.graph.T)
            except (ViewError, CapacityError) as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            session.bump()
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/order", response_model=ViewModel)
    def order(session_id: str, body: OrderRequest):
        session, ds = get_session(session_id)
        with session.lock:
            query = None
            if body.query is not None:
                query = IntervalId(body.query.level, body.query.start)
            spec = OrderingSpec(
                row_stat=body.row_stat, col_mode=body.col_mode, similarity_query=query
            )
            try:
                spec.validate()
            except ValueError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            session.view.ordering = spec
            session.revision += 1
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/method", response_model=ViewModel)
    def set_method(session_id: str, body: MethodRequest):
        session, ds = get_session(session_id)
        with session.lock:
            get_matrix(ds, body.method)
            session.view.method = body.method
            session.bump()
        return view_model(session, ds)

    @app.post("/sessions/{session_id}/cluster", response_model=ClusterModel)
    def cluster(session_id: str, body: ClusterRequest):
        session, ds = get_session(session_id)
        with session.lock:
            _, _, normalized = displayed_columns(session, ds)
            session.cluster_params = {
                "min_cluster_size": body.min_cluster_size,
                "min_samples": body.min_samples,
            }
            session.cluster = hdbscan(
                normalized,
                min_cluster_size=body.min_cluster_size,
                min_samples=body.min_samples,
            )
            result = session.cluster
        return ClusterModel(**result.to_json())

    @app.get("/sessions/{session_id}/pixels")
    def pixels(session_id: str, request: Request):
        session, ds = get_session(session_id)
        with session.lock:
            keys, raw, normalized = displayed_columns(session, ds)
            try:
                rperm = row_order(raw, session.view.ordering.row_stat)
                cperm, frames = column_permutation(session, keys, normalized)
                spec = ColorSpec.from_values(raw, config.color_segments)
                image = render_pixels(
                    raw,
                    rperm,
                    cperm,
                    spec,
                    screen_width_px=session.view.cap,
                    frames=frames,
                    cell_height_px=config.cell_height_px,
                )
            except (ViewError, CapacityError, ValueError) as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            revision = session.revision

        if "application/json" in request.headers.get("accept", ""):
            display_keys = [keys[p] for p in cperm]
            payload = PixelsJson(
                columns=image.classes.shape[0],
                d=image.classes.shape[1],
                classes=[[int(c) for c in col] for col in image.classes],
                palette=image.palette,
                keys=[IntervalModel(level=k.level, start=k.start) for k in display_keys],
                bar_width_px=image.bar_width_px,
                cell_height_px=image.cell_height_px,
                width_px=image.width_px,
                height_px=image.height_px,
                domain_max=spec.domain_max,
                frames=image.frames,
                revision=revision,
            )
            return payload
        return Response(content=image.png, media_type="image/png")

    @app.get("/sessions/{session_id}/zoombar")
    def zoombar(session_id: str, request: Request):
        session, ds = get_session(session_id)
        with session.lock:
            view = session.view
            keys = [view.intervals[p] for p in view_ops.visible_positions(view, ds.graph.T)]
            bar_w = max(1, view.cap // max(1, len(keys)))
            png, rows = render_zoom_bar(
                keys,
                ds.graph.T,
                ds.hierarchy.Lmax,
                bar_width_px=bar_w,
                height_px=config.zoom_bar_height_px,
            )
            revision = session.revision
        if "application/json" in request.headers.get("accept", ""):
            return ZoomBarJson(
                bars=rows,
                width_px=len(keys) * bar_w,
                height_px=config.zoom_bar_height_px,
                lmax=ds.hierarchy.Lmax,
                revision=revision,
            )
        return Response(content=png, media_type="image/png")

    @app.get("/sessions/{session_id}/graph", response_model=GraphPayload)
    def graph(session_id: str, bars: str):
        session, ds = get_session(session_id)
        try:
            positions = sorted({int(tok) for tok in bars.split(",") if tok.strip() != ""})
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=f"bad bars parameter {bars!r}") from exc
        view = session.view
        if not positions or any(not (0 <= p < len(view.intervals)) for p in positions):
            raise HTTPException(status_code=409, detail="bars out of range")
        intervals = [view.intervals[p] for p in positions]
        comparison = compare_intervals(ds.hierarchy, intervals)
        layout = ds.layout(config.layout_seed, config.layout_iterations)

        signs = _edge_signs(ds, intervals)
        nodes = [
            GraphNode(
                id=v,
                cls=comparison.node_class[v],
                count=comparison.union.nodes[v],
                x=layout.positions[v][0],
                y=layout.positions[v][1],
                label=ds.graph.node_labels.get(v),
            )
            for v in sorted(comparison.union.nodes)
        ]
        edges = [
            GraphEdge(
                source=u,
                target=v,
                cls=comparison.edge_class[(u, v)],
                count=comparison.union.edges[(u, v)],
                sign=signs.get((u, v)),
            )
            for (u, v) in sorted(comparison.union.edges)
        ]
        return GraphPayload(nodes=nodes, edges=edges, counts=comparison.counts, bars=positions)

    @app.get("/datasets/{dataset_id}/layout", response_model=LayoutJson)
    def dataset_layout(dataset_id: str):
        ds = get_dataset(dataset_id)
        layout = ds.layout(config.layout_seed, config.layout_iterations)
        data = layout.to_json()
        return LayoutJson(
            positions=data["positions"], seed=data["seed"], iterations=data["iterations"]
        )

    ui_dir = os.environ.get(UI_DIR_ENV) or "frontend/dist"
    if Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _edge_signs(ds: Dataset, intervals: list[IntervalId]) -> dict:
    """Net sentiment per union edge over all steps covered by the selection."""
    totals: dict = {}
    for iv in intervals:
        for t in iv.steps(ds.graph.T):
            for e, (_, sign) in ds.graph.snapshots[t].edges.items():
                if sign is not None:
                    totals[e] = totals.get(e, 0) + sign
    return {e: (1 if s > 0 else -1 if s < 0 else None) for e, s in totals.items()}
