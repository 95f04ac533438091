"""Whole-graph embeddings over a multiscale hierarchy.

Three methods share one latent-space contract: WL-document skip-gram training
(``graph2vec``), the same on line graphs (``gl2vec``), and spectral-distance
histograms (``fgsd_matrix``).  All supergraphs of a hierarchy are embedded
jointly so every temporal level lives in the same space.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Iterable, Optional

import numpy as np

from graphpix.dyngraph import MultiscaleHierarchy
from graphpix.embed.fgsd import effective_resistance, fgsd
from graphpix.embed.matrix import (
    Embedding,
    EmbeddingMatrix,
    export_csv,
    l2_normalize,
    load_matrix,
    normalize,
    save_matrix,
)
from graphpix.embed.pvdbow import (
    Vocabulary,
    build_vocabulary,
    noise_cdf,
    pvdbow_gradients,
    pvdbow_loss,
    train_pvdbow,
)
from graphpix.embed.wl import SENTINEL_WORD, WlDocument, line_graph, wl_features

METHODS = ("graph2vec", "gl2vec", "fgsd")


@dataclass
class EmbedParams:
    """Training defaults: 128 dims, 1000 epochs, lr 0.02, 2 WL iterations.

    min_count drops WL features rarer than 5 corpus occurrences, the usual
    skip-gram vocabulary pruning; dense graphs otherwise flood the vocabulary
    with one-off relabeling hashes.
    """

    d: int = 128
    epochs: int = 1000
    lr: float = 0.02
    wl: int = 2
    negatives: int = 5
    seed: int = 0
    parallel: bool = False
    min_count: int = 5


def _train_documents(
    docs: list[WlDocument], method: str, params: EmbedParams
) -> EmbeddingMatrix:
    raw, losses = train_pvdbow(
        [doc.words for doc in docs],
        d=params.d,
        epochs=params.epochs,
        lr=params.lr,
        negatives=params.negatives,
        seed=params.seed,
        parallel=params.parallel,
        min_count=params.min_count,
    )
    matrix = EmbeddingMatrix(
        method=method,
        d=params.d,
        keys=[doc.graph_key for doc in docs],
        raw=raw,
        degenerate=np.asarray([doc.degenerate for doc in docs], dtype=bool),
        meta={
            "epochs": params.epochs,
            "learning_rate": params.lr,
            "wl_iterations": params.wl,
            "negatives": params.negatives,
            "seed": params.seed,
            "loss_curve": losses,
        },
    )
    return normalize(matrix)


def graph2vec(
    h: MultiscaleHierarchy,
    params: Optional[EmbedParams] = None,
    levels: Optional[Iterable[int]] = None,
) -> EmbeddingMatrix:
    """WL documents for every supergraph, one shared vocabulary, PV-DBOW training,
    L2 normalization.  ``levels`` restricts which hierarchy levels are embedded."""
    params = params or EmbedParams()
    docs = [wl_features(sg, params.wl) for sg in h.iter_supergraphs(levels)]
    return _train_documents(docs, "graph2vec", params)


def gl2vec(
    h: MultiscaleHierarchy,
    params: Optional[EmbedParams] = None,
    levels: Optional[Iterable[int]] = None,
) -> EmbeddingMatrix:
    """graph2vec on the line graph of each supergraph; edgeless graphs get a
    sentinel document and a degenerate flag."""
    params = params or EmbedParams()
    docs = []
    for sg in h.iter_supergraphs(levels):
        doc = wl_features(line_graph(sg), params.wl)
        doc.graph_key = sg.interval
        docs.append(doc)
    return _train_documents(docs, "gl2vec", params)


def fgsd_matrix(
    h: MultiscaleHierarchy,
    bins: int = 128,
    range_max: float = 20.0,
    levels: Optional[Iterable[int]] = None,
) -> EmbeddingMatrix:
    """Spectral histogram per supergraph (raw counts), then L2 normalization.
    Supergraphs with no nodes get a zero vector flagged degenerate."""
    keys = []
    rows = []
    degenerate = []
    for sg in h.iter_supergraphs(levels):
        keys.append(sg.interval)
        if sg.nodes:
            rows.append(fgsd(sg, bins=bins, range_max=range_max).astype(np.float64))
            degenerate.append(False)
        else:
            rows.append(np.zeros(bins))
            degenerate.append(True)
    matrix = EmbeddingMatrix(
        method="fgsd",
        d=bins,
        keys=keys,
        raw=np.vstack(rows),
        degenerate=np.asarray(degenerate, dtype=bool),
        meta={"bins": bins, "range_max": range_max},
    )
    return normalize(matrix)


def params_dict(params: EmbedParams) -> dict:
    return asdict(params)


__all__ = [
    "METHODS",
    "EmbedParams",
    "Embedding",
    "EmbeddingMatrix",
    "SENTINEL_WORD",
    "Vocabulary",
    "WlDocument",
    "build_vocabulary",
    "effective_resistance",
    "export_csv",
    "fgsd",
    "fgsd_matrix",
    "gl2vec",
    "graph2vec",
    "l2_normalize",
    "line_graph",
    "load_matrix",
    "noise_cdf",
    "normalize",
    "params_dict",
    "pvdbow_gradients",
    "pvdbow_loss",
    "save_matrix",
    "train_pvdbow",
    "wl_features",
]
