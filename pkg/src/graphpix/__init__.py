"""graphpix: multiscale dynamic-graph embeddings rendered as pixel-bar summaries.

Pipeline: slice a long dynamic graph into a dyadic hierarchy of supergraphs,
embed every supergraph into one shared latent space (WL/skip-gram or spectral
histograms), and render the embeddings as a dense, reorderable pixel matrix
served over HTTP for interactive drill-down and roll-up.
"""

from graphpix.dyngraph import (
    DynamicGraph,
    IntervalId,
    MultiscaleHierarchy,
    Snapshot,
    Supergraph,
    build_hierarchy,
    children,
    ingest_edge_list,
    supergraph,
)

__version__ = "0.1.0"

__all__ = [
    "DynamicGraph",
    "IntervalId",
    "MultiscaleHierarchy",
    "Snapshot",
    "Supergraph",
    "build_hierarchy",
    "children",
    "ingest_edge_list",
    "supergraph",
    "__version__",
]
