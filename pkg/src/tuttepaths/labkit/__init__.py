"""Corpus generators, file formats, brute-force oracles, verification."""

from .files import (
    FileFormatError,
    Instance,
    Query,
    embedding_from_json,
    embedding_to_json,
    load_instance,
    save_instance,
)
from .generators import (
    NAMED,
    SIZED,
    c4,
    c5,
    c6_pendant_path,
    cycle_graph,
    double_wheel,
    generate,
    glued_squares,
    glued_triangles,
    icosahedron,
    is_4_connected,
    iterated_triangulation,
    k4,
    octahedron,
    stack_all_faces,
    stacked_icosahedron,
    stacked_octahedron,
    stacked_tightness,
    triangle,
    wheel,
)
from .graph6 import emit_graph6, parse_graph6
from .oracles import (
    ResourceCapError,
    brute_circumference,
    brute_tutte_path,
    circ_cap,
    naive_circumference,
    tutte_cap,
)
from .verify import (
    Verdict,
    verify_certificate,
    verify_long_cycle_report,
    verify_tutte_certificate,
)

__all__ = [
    "FileFormatError",
    "Instance",
    "NAMED",
    "Query",
    "ResourceCapError",
    "SIZED",
    "Verdict",
    "brute_circumference",
    "brute_tutte_path",
    "c4",
    "c5",
    "c6_pendant_path",
    "circ_cap",
    "cycle_graph",
    "double_wheel",
    "embedding_from_json",
    "embedding_to_json",
    "emit_graph6",
    "generate",
    "glued_squares",
    "glued_triangles",
    "icosahedron",
    "is_4_connected",
    "iterated_triangulation",
    "k4",
    "load_instance",
    "naive_circumference",
    "octahedron",
    "parse_graph6",
    "save_instance",
    "stack_all_faces",
    "stacked_icosahedron",
    "stacked_octahedron",
    "stacked_tightness",
    "triangle",
    "tutte_cap",
    "verify_certificate",
    "verify_long_cycle_report",
    "verify_tutte_certificate",
    "wheel",
]
