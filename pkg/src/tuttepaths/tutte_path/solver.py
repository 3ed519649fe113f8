"""Top-level driver for the path solver.

The recursion bottoms out on two base cases (the requested edge joins
the endpoints, or the instance is a triangle), reorients via the mirror
when the requested edge touches the start vertex, and otherwise hands
off to the splitting arms in :mod:`.induction`.  Every recursive call
strictly shrinks the vertex set, so termination is immediate.
"""

from __future__ import annotations

from ..circuit import CircuitGraph
from ..planar_core.structure import norm_edge
from .certificates import (
    CertifiedFailure,
    PathQuery,
    TraceEntry,
    TuttePathCertificate,
    audit_path,
    build_certificate,
)


class SolverContext:
    """Shared recursion state: the ledger, marker ids, feature flags.

    Marker ids for contracted pieces are drawn from a single counter
    seeded past every real vertex id, so markers from nested levels can
    never collide with each other or with the input graph.
    """

    def __init__(self, *, debug: bool = False, oracle_fallback: bool = False):
        self.debug = debug
        self.oracle_fallback = oracle_fallback
        self.ledger: list[TraceEntry] = []
        self._next_id = 0
        self._next_entry = 0

    def reserve_ids(self, vertices) -> None:
        top = max(vertices, default=-1) + 1
        if top > self._next_id:
            self._next_id = top

    def fresh_marker(self) -> int:
        marker = self._next_id
        self._next_id += 1
        return marker

    def enter(self, cg, u, v, e, parent) -> TraceEntry:
        entry = TraceEntry(
            id=self._next_entry,
            parent=parent,
            rule="?",
            n=cg.n,
            u=u,
            v=v,
            e=e,
        )
        self._next_entry += 1
        self.ledger.append(entry)
        return entry

    def step(self, parent: TraceEntry, rule: str, note: str = "", **detail) -> TraceEntry:
        entry = TraceEntry(
            id=self._next_entry,
            parent=parent.id,
            rule=rule,
            n=parent.n,
            note=note,
            detail=dict(detail),
        )
        self._next_entry += 1
        self.ledger.append(entry)
        return entry


def splice_edge(path, x, y, filler):
    """Replace the step between x and y on ``path`` by the path ``filler``.

    The filler must run from x to y (either orientation); its interior
    is spliced in between them.
    """
    path = tuple(path)
    filler = tuple(filler)
    for i in range(len(path) - 1):
        if {path[i], path[i + 1]} == {x, y}:
            seg = filler if filler[0] == path[i] else tuple(reversed(filler))
            assert seg[0] == path[i] and seg[-1] == path[i + 1], "filler ends mismatch"
            return path[: i + 1] + seg[1:-1] + path[i + 1 :]
    raise AssertionError(f"edge {x}-{y} not on path")


def tutte_path(
    cg: CircuitGraph,
    u: int,
    v: int,
    e,
    *,
    debug: bool = False,
    oracle_fallback: bool = False,
) -> TuttePathCertificate:
    """Compute a certified u-v path through e in a circuit graph.

    The returned certificate carries the path, its bridge decomposition,
    the detachment count with its exact-thirds bound, and the full
    recursion ledger.  The final audit always runs; ``debug`` adds the
    same audit at every interior level.
    """
    query = PathQuery.make(cg, u, v, e)
    ctx = SolverContext(debug=debug, oracle_fallback=oracle_fallback)
    ctx.reserve_ids(cg.vertices)
    path = _solve(cg, query.u, query.v, query.e, ctx, None)
    return build_certificate(cg, query.u, query.v, query.e, path, ctx.ledger)


def _solve(cg, u, v, e, ctx, parent):
    from . import induction

    PathQuery.make(cg, u, v, e)
    frame = ctx.enter(cg, u, v, e, parent)

    def rec(cg2, u2, v2, e2):
        assert cg2.n < cg.n, "recursion must strictly shrink"
        return _solve(cg2, u2, v2, norm_edge(*e2), ctx, frame.id)

    if e == norm_edge(u, v):
        frame.rule = "L2.1-edge"
        path = (u, v)
    elif cg.n == 3:
        frame.rule = "L2.1-triangle"
        (mid,) = [z for z in cg.vertices if z not in (u, v)]
        path = (u, mid, v)
    elif u in e:
        # Flip the disk so the requested edge sits at the far end; the
        # mirrored walk runs v to u, so the result comes back reversed.
        frame.rule = "flip"
        flipped = _solve(cg.mirror(), v, u, e, ctx, frame.id)
        path = tuple(reversed(flipped))
    elif ctx.oracle_fallback and cg.n <= 6:
        frame.rule = "oracle-fallback"
        from ..labkit.oracles import brute_tutte_path

        path, _ = brute_tutte_path(cg, u, v, e)
    else:
        path = induction.split_on_endpoint_2cut(cg, u, v, e, ctx, frame, rec)
        if path is None:
            path = induction.split_on_separating_2cut(cg, u, v, e, ctx, frame, rec)
        if path is None:
            path = induction.main_induction(cg, u, v, e, ctx, frame, rec)

    if ctx.debug:
        audit_path(cg, u, v, e, path, ctx.ledger)
    return tuple(path)
