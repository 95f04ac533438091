"""Latent-space analytics: reordering, density clustering, graph comparison,
and the global force-directed layout."""

from graphpix.analytics.compare import (
    DISJOINT,
    INTERSECTION,
    GraphComparison,
    compare_intervals,
    compare_steps,
)
from graphpix.analytics.hdbscan import ClusterResult, cosine_distances, hdbscan
from graphpix.analytics.layout import Layout, fr_layout
from graphpix.analytics.ordering import (
    COL_MODES,
    ROW_STATS,
    OrderingSpec,
    cluster_frames,
    col_order,
    row_order,
)

__all__ = [
    "COL_MODES",
    "DISJOINT",
    "INTERSECTION",
    "ClusterResult",
    "GraphComparison",
    "Layout",
    "OrderingSpec",
    "ROW_STATS",
    "cluster_frames",
    "col_order",
    "compare_intervals",
    "compare_steps",
    "cosine_distances",
    "fr_layout",
    "hdbscan",
    "row_order",
]
