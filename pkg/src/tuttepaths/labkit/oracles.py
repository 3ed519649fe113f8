"""Brute-force oracles.

These share nothing with the solver beyond the structural primitives, so
agreement between the two routes is meaningful evidence.  Caps are config
values (environment-overridable), not constants.
"""

from __future__ import annotations

import os
from itertools import combinations, permutations
from typing import Iterator, Optional

from ..circuit import CircuitGraph
from ..planar_core import Edge, Graph, beta, is_f_tutte, norm_edge

DEFAULT_CIRC_CAP = 16
DEFAULT_TUTTE_CAP = 11


class ResourceCapError(RuntimeError):
    """An oracle was asked to exceed its configured size cap."""


def _cap(value: Optional[int], env: str, default: int) -> int:
    if value is not None:
        return value
    raw = os.environ.get(env)
    return int(raw) if raw else default


def circ_cap(value: Optional[int] = None) -> int:
    return _cap(value, "TUTTEPATHS_CIRC_CAP", DEFAULT_CIRC_CAP)


def tutte_cap(value: Optional[int] = None) -> int:
    return _cap(value, "TUTTEPATHS_TUTTE_CAP", DEFAULT_TUTTE_CAP)


def brute_circumference(g: Graph, cap: Optional[int] = None) -> int:
    """Exact longest-cycle length by DFS; 0 if the graph is acyclic.

    Cycles are counted once by rooting each search at its smallest vertex
    and pruning when the remaining vertices cannot beat the best cycle
    found so far.
    """
    limit = circ_cap(cap)
    if g.n > limit:
        raise ResourceCapError(f"graph has {g.n} vertices, cap is {limit}")
    best = 0
    for root in g.vertices:
        allowed = [v for v in g.vertices if v >= root]
        if len(allowed) <= best:
            continue
        allowed_set = set(allowed)
        path = [root]
        on_path = {root}

        def dfs() -> None:
            nonlocal best
            here = path[-1]
            if len(path) + len(allowed_set) - len(on_path) <= best:
                return
            for w in g.neighbors(here):
                if w == root and len(path) >= 3:
                    if len(path) > best:
                        best = len(path)
                if w in allowed_set and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    dfs()
                    path.pop()
                    on_path.remove(w)

        dfs()
    return best


def naive_circumference(g: Graph, cap: int = 8) -> int:
    """Second-route circumference: try every vertex-subset permutation.

    Deliberately artless; exists only to cross-check brute_circumference
    on tiny graphs.
    """
    if g.n > cap:
        raise ResourceCapError(f"graph has {g.n} vertices, cap is {cap}")
    best = 0
    for k in range(g.n, 2, -1):
        for subset in combinations(g.vertices, k):
            first = subset[0]
            for perm in permutations(subset[1:]):
                cyc = (first,) + perm
                if all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                    best = k
                    break
            if best:
                break
        if best:
            return best
    return 0


def _paths_through(
    g: Graph, u: int, v: int, e: Edge
) -> Iterator[tuple[int, ...]]:
    """All simple u-v paths that traverse the edge e.

    Prunes branches where both ends of e are already on the path without
    the path having used e.
    """
    a, b = e
    path = [u]
    on_path = {u}
    used_e = [False]

    def dfs() -> Iterator[tuple[int, ...]]:
        here = path[-1]
        if here == v:
            if used_e[0]:
                yield tuple(path)
            return
        for w in g.neighbors(here):
            if w in on_path:
                continue
            step_is_e = norm_edge(here, w) == e
            if not step_is_e and not used_e[0] and (a in on_path or b in on_path):
                # an end of e is about to become path-interior; e is dead
                continue
            path.append(w)
            on_path.add(w)
            if step_is_e:
                used_e[0] = True
            yield from dfs()
            if step_is_e:
                used_e[0] = False
            path.pop()
            on_path.remove(w)

    yield from dfs()


def brute_tutte_path(
    cg: CircuitGraph, u: int, v: int, e: Edge, cap: Optional[int] = None
) -> tuple[tuple[int, ...], int]:
    """Minimum-detachment cycle-respecting path, exhaustively.

    Enumerates every simple u-v path through e in the circuit graph,
    keeps those whose bridges all have at most 3 attachments with cycle
    -edge bridges held to 2, and returns one minimizing the number of
    bridges with 3 or more vertices, together with that number.
    """
    limit = tutte_cap(cap)
    g = cg.graph
    if g.n > limit:
        raise ResourceCapError(f"graph has {g.n} vertices, cap is {limit}")
    e = norm_edge(*e)
    if u == v:
        raise ValueError("endpoints must differ")
    if not cg.on_cycle(u) or not cg.on_cycle(v):
        raise ValueError("endpoints must lie on the outer cycle")
    if e not in cg.cycle_edges:
        raise ValueError("e must be an outer-cycle edge")
    best_path: Optional[tuple[int, ...]] = None
    best_beta = -1
    for path in _paths_through(g, u, v, e):
        p_edges = {norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)}
        if not is_f_tutte(g, path, p_edges, cg.cycle_edges):
            continue
        b = beta(g, path, p_edges)
        if best_path is None or b < best_beta:
            best_path, best_beta = path, b
            if b == 0:
                break
    assert best_path is not None, "no qualifying path; query or theorem violated"
    return best_path, best_beta
