"""Query validation, the recursion ledger, and result certificates.

The solver never hands back a bare path.  Every result is re-audited
here from scratch against the embedding: path shape, bridge attachment
limits, the detachment count and the exact-thirds bound.  The audit
shares only the structural primitive layer with the solver, so a bug in
the recursive construction cannot vouch for itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..circuit import CircuitGraph, Third
from ..planar_core.structure import Edge, bridges_of, norm_edge

FORMAT = 1


class CertifiedFailure(RuntimeError):
    """A constructed path failed its own from-scratch audit.

    On valid input this is unreachable; it exists so that broken output
    can never leak downstream.  The ledger gathered so far rides along
    for diagnosis.
    """

    def __init__(self, message: str, ledger: Optional[list] = None):
        super().__init__(message)
        self.ledger = list(ledger or [])


@dataclass(frozen=True)
class PathQuery:
    """A validated path request against a circuit graph.

    Endpoints are distinct outer-cycle vertices and e is an outer-cycle
    edge met on the clockwise walk from u no later than v.
    """

    cg: CircuitGraph
    u: int
    v: int
    e: Edge

    @staticmethod
    def make(cg: CircuitGraph, u: int, v: int, e) -> "PathQuery":
        e = norm_edge(*e)
        if u == v:
            raise ValueError("endpoints must differ")
        if not (cg.on_cycle(u) and cg.on_cycle(v)):
            raise ValueError("endpoints must lie on the outer cycle")
        if e not in cg.cycle_edges:
            raise ValueError(f"{e} is not an outer cycle edge")
        p, q = cg.cw_dir(e)
        k = len(cg.cycle)
        du_p = (cg.pos(p) - cg.pos(u)) % k
        du_q = (cg.pos(q) - cg.pos(u)) % k
        du_v = (cg.pos(v) - cg.pos(u)) % k
        if not (du_p <= du_q <= du_v and du_q > 0):
            raise ValueError("u, e, v must occur in clockwise order")
        return PathQuery(cg, u, v, e)


@dataclass
class TraceEntry:
    """One ledger line: which rule fired, on how large an instance."""

    id: int
    parent: Optional[int]
    rule: str
    n: int
    u: Optional[int] = None
    v: Optional[int] = None
    e: Optional[Edge] = None
    note: str = ""
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"id": self.id, "parent": self.parent, "rule": self.rule, "n": self.n}
        if self.u is not None:
            out["u"] = self.u
        if self.v is not None:
            out["v"] = self.v
        if self.e is not None:
            out["e"] = list(self.e)
        if self.note:
            out["note"] = self.note
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class InductionFrame:
    """Bookkeeping for one pass of the main inductive arm.

    Holds the upper block, its contraction with marker set and outer
    cycle, the anchor vertices, the spanning path, and the per-piece
    interval data, so the piece partition can be summed and checked.
    """

    h_vertices: tuple
    k_vertices: tuple
    markers: tuple
    k_cycle: tuple
    near: int
    far: int
    w: int
    w_prime: int
    p_k: tuple
    classes: list
    l_arcs: list
    m: int
    c: int
    piece_sizes: list
    overlap_total: int
    covered: int

    def to_json(self) -> dict:
        return {
            "h_vertices": list(self.h_vertices),
            "k_vertices": list(self.k_vertices),
            "markers": list(self.markers),
            "k_cycle": list(self.k_cycle),
            "near": self.near,
            "far": self.far,
            "w": self.w,
            "w_prime": self.w_prime,
            "p_k": list(self.p_k),
            "classes": self.classes,
            "l_arcs": self.l_arcs,
            "m": self.m,
            "c": self.c,
            "piece_sizes": self.piece_sizes,
            "overlap_total": self.overlap_total,
            "covered": self.covered,
        }


def path_edges(path) -> set[Edge]:
    return {norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)}


def audit_path(cg: CircuitGraph, u: int, v: int, e: Edge, path, ledger=None):
    """Recompute every invariant of a finished path; raise on any miss.

    Returns the pieces a certificate needs: the bridge list, the
    detachment count, the three twists and the bound numerator.
    """

    def fail(msg: str):
        raise CertifiedFailure(msg, ledger)

    if len(set(path)) != len(path):
        fail("path repeats a vertex")
    if not path or path[0] != u or path[-1] != v:
        fail("path endpoints are wrong")
    g = cg.graph
    pe = set()
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        if not g.has_edge(a, b):
            fail(f"path step {a}-{b} is not an edge")
        pe.add(norm_edge(a, b))
    if e not in pe:
        fail("required edge missing from path")

    bridges = bridges_of(g, path, pe)
    for br in bridges:
        limit = 2 if br.has_edge_in(cg.cycle_edges) else 3
        if len(br.attachments) > limit:
            fail(
                f"bridge {sorted(br.vertices)} has {len(br.attachments)} "
                f"attachments, limit {limit}"
            )
    beta = sum(1 for br in bridges if br.size >= 3)
    taus = {"vu": cg.tau(v, u), "ue": cg.tau(u, e), "ev": cg.tau(e, v)}
    bound_num = (cg.n - 6) + sum(t.numerator for t in taus.values())
    if 3 * beta > bound_num:
        fail(f"detachment count {beta} exceeds bound {bound_num}/3")
    return bridges, beta, taus, bound_num


@dataclass
class TuttePathCertificate:
    """A path plus everything needed to re-check it independently."""

    u: int
    v: int
    e: Edge
    path: tuple
    beta: int
    bound: Third
    taus: dict
    bridges: list
    ledger: list

    @property
    def contains_e(self) -> bool:
        return self.e in path_edges(self.path)

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "kind": "tutte-path-certificate",
            "query": {"u": self.u, "v": self.v, "e": list(self.e)},
            "path": list(self.path),
            "beta": self.beta,
            "bound": self.bound.to_json(),
            "taus": {name: t.to_json() for name, t in self.taus.items()},
            "bridges": [
                {
                    "vertices": sorted(br.vertices),
                    "attachments": sorted(br.attachments),
                }
                for br in self.bridges
                if br.size >= 3
            ],
            "ledger": [entry.to_json() for entry in self.ledger],
        }


def build_certificate(cg, u, v, e, path, ledger) -> TuttePathCertificate:
    bridges, beta, taus, bound_num = audit_path(cg, u, v, e, path, ledger)
    return TuttePathCertificate(
        u=u,
        v=v,
        e=e,
        path=tuple(path),
        beta=beta,
        bound=Third(bound_num),
        taus=taus,
        bridges=list(bridges),
        ledger=list(ledger),
    )
