"""graph6 interchange for abstract graphs.

Encoding and decoding are delegated to networkx.  graph6 carries no
embedding, so graphs read here must be paired with a rotation file before
they can enter the solver pipeline; the format exists for talking to
external graph tooling.
"""

from __future__ import annotations

import networkx as nx

from ..planar_core import Graph


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line into an abstract graph on vertices 0..n-1."""
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise ValueError("empty graph6 input")
    try:
        g = nx.from_graph6_bytes(line.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise ValueError(f"malformed graph6: {exc}") from exc
    n = g.number_of_nodes()
    return Graph.build(range(n), ((u, v) for u, v in g.edges()))


def emit_graph6(graph: Graph) -> str:
    """Encode an abstract graph as one graph6 line.

    Vertices are relabeled 0..n-1 in sorted order, so encoding is the
    identity relabeling exactly when the graph is already labeled that way.
    """
    index = {v: i for i, v in enumerate(graph.vertices)}
    g = nx.Graph()
    g.add_nodes_from(range(len(graph.vertices)))
    g.add_edges_from((index[u], index[v]) for u, v in graph.edges)
    data = nx.to_graph6_bytes(g, header=False)
    return data.decode("ascii").strip()
