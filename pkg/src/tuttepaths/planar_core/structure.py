"""Abstract-graph structure: connectivity, blocks, 2-separations, bridges.

Everything in this module is purely combinatorial; no embedding data is
consulted.  Graphs are small (desk scale), so the algorithms favour clarity
and determinism over asymptotics: vertex sets are kept sorted, component
and separation enumerations are in lexicographic order, and all returned
objects are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    """Normalise an undirected edge to (min, max) form."""
    if u == v:
        raise ValueError(f"loop edge at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on integer vertices."""

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    _adj: Mapping[int, tuple[int, ...]] = field(repr=False, compare=False)

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[Edge]) -> Graph:
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        norm = set()
        for u, v in edges:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) leaves vertex set")
            norm.add(norm_edge(u, v))
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in sorted(norm):
            adj[u].append(v)
            adj[v].append(u)
        frozen_adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        return Graph(verts, frozenset(norm), frozen_adj)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def subgraph(self, vertices: Iterable[int], edges: Optional[Iterable[Edge]] = None) -> Graph:
        keep = set(vertices)
        if edges is None:
            es = [e for e in self.edges if e[0] in keep and e[1] in keep]
        else:
            es = [norm_edge(*e) for e in edges]
            for e in es:
                if e not in self.edges:
                    raise ValueError(f"edge {e} not in graph")
        return Graph.build(keep, es)

    def without_vertices(self, drop: Iterable[int]) -> Graph:
        gone = set(drop)
        return self.subgraph(v for v in self.vertices if v not in gone)


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Connected components of g minus `removed`, ordered by smallest vertex."""
    gone = set(removed)
    seen: set[int] = set()
    comps = []
    for start in g.vertices:
        if start in gone or start in seen:
            continue
        stack = [start]
        comp = set()
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.add(x)
            for y in g.neighbors(x):
                if y not in gone and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(components(g)) == 1


def articulation_points(g: Graph) -> set[int]:
    """Cut vertices, by iterative DFS lowpoint computation."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    cuts: set[int] = set()
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        parent[root] = None
        root_children = 0
        # stack holds (vertex, iterator over neighbours)
        stack = [(root, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    if v == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                p = parent[v]
                if p is not None:
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def is_biconnected(g: Graph) -> bool:
    """2-connected in the usual sense: at least 3 vertices, connected, no cut vertex."""
    if g.n < 3:
        return False
    return is_connected(g) and not articulation_points(g)


def blocks(g: Graph) -> list[Graph]:
    """Biconnected components (blocks) as edge-disjoint subgraphs.

    Isolated vertices yield no block; a bridge edge yields a K2 block.
    Blocks are returned ordered by their smallest (vertex, edge) pair.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    edge_stack: list[Edge] = []
    out: list[set[Edge]] = []
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        parent[root] = None
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, iter(g.neighbors(root)))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                e = norm_edge(v, w)
                if w not in disc:
                    parent[w] = v
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                p = parent[v]
                if p is not None:
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        # edges above (p, v) on the stack form one block
                        blk: set[Edge] = set()
                        pe = norm_edge(p, v)
                        while edge_stack:
                            e = edge_stack.pop()
                            blk.add(e)
                            if e == pe:
                                break
                        if blk:
                            out.append(blk)
        if edge_stack:
            out.append(set(edge_stack))
            edge_stack.clear()
    result = []
    for blk in out:
        verts = sorted({x for e in blk for x in e})
        result.append(Graph.build(verts, blk))
    result.sort(key=lambda b: (b.vertices[0], min(b.edges)))
    return result


def block_containing_edges(g: Graph, edges: Iterable[Edge]) -> Graph:
    """The unique block containing every listed edge; raises if split across blocks."""
    want = {norm_edge(*e) for e in edges}
    if not want:
        raise ValueError("no edges given")
    for blk in blocks(g):
        if want <= blk.edges:
            return blk
    raise ValueError(f"edges {sorted(want)} do not lie in a single block")


# ---------------------------------------------------------------------------
# 2-cuts and separations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """A 2-separation (side1, side2) with V(side1 ∩ side2) = cut.

    side2 is cut ∪ one component of G − cut together with its incident
    edges; side1 is everything else (including the cut edge, if any).
    """

    cut: tuple[int, int]
    side1: frozenset[int]
    side2: frozenset[int]
    side1_edges: frozenset[Edge]
    side2_edges: frozenset[Edge]
    order: int = 2


def cut_components(g: Graph, s: int, t: int) -> list[frozenset[int]]:
    return components(g, removed=(s, t))


def two_cuts(g: Graph) -> list[tuple[tuple[int, int], list[frozenset[int]]]]:
    """All pairs {s,t} whose removal disconnects g, with their components."""
    out = []
    vs = g.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            s, t = vs[i], vs[j]
            comps = cut_components(g, s, t)
            if len(comps) >= 2:
                out.append(((s, t), comps))
    return out


def enumerate_2_separations(g: Graph) -> list[Separation]:
    """All 2-cut separations, one per (cut pair, split-off component).

    The component structure of G - {s,t} for a given cut pair can be read
    off from the set of entries sharing that pair.  Lexicographic order by
    (cut, min vertex of component).
    """
    seps = []
    for (s, t), comps in two_cuts(g):
        for comp in sorted(comps, key=min):
            side2 = frozenset({s, t} | comp)
            side2_edges = frozenset(
                e for e in g.edges if e[0] in comp or e[1] in comp
            )
            side1 = frozenset(v for v in g.vertices if v not in comp)
            side1_edges = g.edges - side2_edges
            seps.append(Separation((s, t), side1, side2, side1_edges, side2_edges))
    return seps


# ---------------------------------------------------------------------------
# bridges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeInfo:
    """An H-bridge of G: either a chord-type edge or a component of G - H
    together with its edges to H."""

    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    attachments: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def has_edge_in(self, edge_set: frozenset[Edge]) -> bool:
        return bool(self.edges & edge_set)


def bridges_of(g: Graph, h_vertices: Iterable[int], h_edges: Iterable[Edge]) -> list[BridgeInfo]:
    """All H-bridges of g for the subgraph H = (h_vertices, h_edges).

    An edge of g not in H with both ends in H is a bridge on its own;
    every component K of g - V(H) yields a bridge K plus its edges into H.
    Bridges are ordered by smallest vertex then smallest edge.
    """
    hv = set(h_vertices)
    he = {norm_edge(*e) for e in h_edges}
    for e in he:
        if e not in g.edges:
            raise ValueError(f"H edge {e} not in graph")
    out = []
    for e in sorted(g.edges - he):
        if e[0] in hv and e[1] in hv:
            out.append(BridgeInfo(e, frozenset([e]), e))
    for comp in components(g, removed=hv):
        b_edges = {e for e in g.edges if e[0] in comp or e[1] in comp}
        attach = sorted({x for e in b_edges for x in e if x in hv})
        verts = tuple(sorted(set(comp) | set(attach)))
        out.append(BridgeInfo(verts, frozenset(b_edges), tuple(attach)))
    out.sort(key=lambda b: (b.vertices, min(b.edges)))
    return out


def beta(g: Graph, h_vertices: Iterable[int], h_edges: Iterable[Edge]) -> int:
    """Number of H-bridges with at least 3 vertices."""
    return sum(1 for b in bridges_of(g, h_vertices, h_edges) if b.size >= 3)


def is_tutte_subgraph(g: Graph, h_vertices: Iterable[int], h_edges: Iterable[Edge]) -> bool:
    """Every H-bridge has at most 3 attachments."""
    return all(len(b.attachments) <= 3 for b in bridges_of(g, h_vertices, h_edges))


def is_f_tutte(
    g: Graph,
    h_vertices: Iterable[int],
    h_edges: Iterable[Edge],
    f_edges: frozenset[Edge],
) -> bool:
    """Tutte, and bridges containing an edge of F have at most 2 attachments."""
    for b in bridges_of(g, h_vertices, h_edges):
        limit = 2 if b.has_edge_in(f_edges) else 3
        if len(b.attachments) > limit:
            return False
    return True
