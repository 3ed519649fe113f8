"""Plane-graph foundations: rotation systems, faces, and graph structure."""

from .embedding import (
    Dart,
    EmbeddingError,
    RotationEmbedding,
    add_edge_on_outer,
    canonical_walk,
    contract_piece,
    delete_edge,
    delete_vertex,
    insert_edge_in_face,
    restrict,
    smooth_degree2,
    trace_faces,
    walk_darts,
)
from .structure import (
    BridgeInfo,
    Edge,
    Graph,
    Separation,
    articulation_points,
    beta,
    block_containing_edges,
    blocks,
    bridges_of,
    components,
    cut_components,
    enumerate_2_separations,
    is_biconnected,
    is_connected,
    is_f_tutte,
    is_tutte_subgraph,
    norm_edge,
    two_cuts,
)

__all__ = [
    "BridgeInfo",
    "Dart",
    "Edge",
    "EmbeddingError",
    "Graph",
    "RotationEmbedding",
    "Separation",
    "add_edge_on_outer",
    "articulation_points",
    "beta",
    "block_containing_edges",
    "blocks",
    "bridges_of",
    "canonical_walk",
    "components",
    "contract_piece",
    "cut_components",
    "delete_edge",
    "delete_vertex",
    "enumerate_2_separations",
    "insert_edge_in_face",
    "is_biconnected",
    "is_connected",
    "is_f_tutte",
    "is_tutte_subgraph",
    "norm_edge",
    "restrict",
    "smooth_degree2",
    "trace_faces",
    "two_cuts",
    "walk_darts",
]
