"""Certified path construction in circuit graphs."""

from .certificates import (
    CertifiedFailure,
    InductionFrame,
    PathQuery,
    TraceEntry,
    TuttePathCertificate,
    audit_path,
    path_edges,
)
from .solver import SolverContext, splice_edge, tutte_path

__all__ = [
    "CertifiedFailure",
    "InductionFrame",
    "PathQuery",
    "SolverContext",
    "TraceEntry",
    "TuttePathCertificate",
    "audit_path",
    "path_edges",
    "splice_edge",
    "tutte_path",
]
