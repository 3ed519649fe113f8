"""Independent certificate verification.

Everything here is recomputed from scratch against the embedding: path
validity, bridge attachment counts, the detachment number, arc twists and
the final bound.  The only code shared with the solver is the structural
primitive layer, and the arc-goodness test deliberately uses the slow
literal quantifier over two-sided splits rather than the solver's scan.
Failures are verdicts, not exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from ..planar_core import (
    Graph,
    RotationEmbedding,
    bridges_of,
    components,
    norm_edge,
    walk_darts,
)

FORMAT = 1


@dataclass(frozen=True)
class Verdict:
    """Outcome of one verification: overall flag plus each failed clause."""

    ok: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "kind": "verdict",
            "ok": self.ok,
            "failures": list(self.failures),
        }


def _verdict(failures: list[str]) -> Verdict:
    return Verdict(not failures, tuple(failures))


# -- arcs and twists, recomputed locally ------------------------------


def _cycle_pos(cycle: tuple[int, ...]) -> dict[int, int]:
    return {v: i for i, v in enumerate(cycle)}


def _cw_edge(cycle: tuple[int, ...], pos: dict[int, int], e) -> Optional[tuple[int, int]]:
    """Orient e along the cycle's clockwise direction, or None."""
    a, b = e
    if a not in pos or b not in pos:
        return None
    k = len(cycle)
    if (pos[a] + 1) % k == pos[b]:
        return (a, b)
    if (pos[b] + 1) % k == pos[a]:
        return (b, a)
    return None


def _arc(cycle: tuple[int, ...], pos: dict[int, int], x, y) -> tuple[int, ...]:
    """Clockwise arc between endpoints that are vertices or cycle edges.

    An edge start contributes its far incidence, an edge end its near
    incidence, so the edge itself never lies on the arc.
    """
    if isinstance(x, int):
        s = pos[x]
    else:
        s = pos[_cw_edge(cycle, pos, x)[1]]
    if isinstance(y, int):
        t = pos[y]
    else:
        t = pos[_cw_edge(cycle, pos, y)[0]]
    k = len(cycle)
    return tuple(cycle[(s + i) % k] for i in range((t - s) % k + 1))


def _arc_good(g: Graph, arc: tuple[int, ...]) -> bool:
    """Literal goodness quantifier.

    The arc is bad when some pair s before t on it admits a two-sided
    split of the graph meeting exactly in {s, t}, with the cycle piece
    from s to t on a side of at least 3 vertices and the other side
    carrying at least one edge.  Splits are enumerated by distributing
    the {s, t}-bridge pieces over the two sides.
    """
    for i in range(len(arc)):
        for j in range(i + 1, len(arc)):
            s, t = arc[i], arc[j]
            pieces: list[tuple[frozenset[int], bool]] = []
            for comp in components(g, removed=(s, t)):
                pieces.append((comp, False))
            if g.has_edge(s, t):
                pieces.append((frozenset(), True))
            span = arc[i : j + 1]
            interior = set(span[1:-1])
            span_uses_direct = len(span) == 2
            for r in range(1, len(pieces) + 1):
                for side2 in combinations(range(len(pieces)), r):
                    chosen = [pieces[idx] for idx in side2]
                    v2 = {s, t}
                    has_direct = False
                    for comp, is_direct in chosen:
                        v2 |= comp
                        has_direct = has_direct or is_direct
                    if len(v2) < 3:
                        continue
                    if span_uses_direct:
                        if not has_direct:
                            continue
                    elif not interior <= v2:
                        continue
                    rest = [pieces[idx] for idx in range(len(pieces)) if idx not in side2]
                    if not rest:
                        continue
                    return False
    return True


def _tau_num(g: Graph, cycle: tuple[int, ...], pos: dict[int, int], x, y) -> int:
    """Twist of the arc from x to y as a numerator over 3."""
    arc = _arc(cycle, pos, x, y)
    if not _arc_good(g, arc):
        return 2
    x_edge, y_edge = not isinstance(x, int), not isinstance(y, int)
    if x_edge != y_edge:
        e = x if x_edge else y
        v = y if x_edge else x
        if v in e:
            return 2
        if len(arc) == 2:
            return 1
    return 0


# -- clause checks ----------------------------------------------------


def _check_embedding(emb: RotationEmbedding, failures: list[str]) -> bool:
    try:
        emb.check()
    except ValueError as exc:
        failures.append(f"embedding invalid: {exc}")
        return False
    if len(set(emb.outer_face)) != len(emb.outer_face):
        failures.append("outer face is not a simple cycle")
        return False
    return True


def _check_path(
    g: Graph, seq: list, failures: list[str], label: str, closed: bool
) -> Optional[list[int]]:
    if not isinstance(seq, list) or not all(isinstance(v, int) for v in seq):
        failures.append(f"{label}: not a vertex list")
        return None
    if len(set(seq)) != len(seq):
        failures.append(f"{label}: repeats a vertex")
        return None
    bad = [v for v in seq if v not in set(g.vertices)]
    if bad:
        failures.append(f"{label}: unknown vertex {bad[0]}")
        return None
    need = len(seq) if closed else len(seq) - 1
    if closed and len(seq) < 3:
        failures.append(f"{label}: too short to be a cycle")
        return None
    for i in range(need):
        a, b = seq[i], seq[(i + 1) % len(seq)]
        if not g.has_edge(a, b):
            failures.append(f"{label}: step {a}-{b} is not an edge")
            return None
    return seq


def verify_tutte_certificate(emb: RotationEmbedding, cert: dict) -> Verdict:
    failures: list[str] = []
    if not _check_embedding(emb, failures):
        return _verdict(failures)
    g = emb.to_graph()
    cycle = emb.outer_face
    pos = _cycle_pos(cycle)
    n = g.n

    query = cert.get("query")
    if not isinstance(query, dict):
        failures.append("query: missing")
        return _verdict(failures)
    u, v = query.get("u"), query.get("v")
    e_raw = query.get("e")
    if not isinstance(u, int) or not isinstance(v, int) or u == v:
        failures.append("query: endpoints missing or equal")
        return _verdict(failures)
    if u not in pos or v not in pos:
        failures.append("query: an endpoint is off the outer cycle")
        return _verdict(failures)
    if (
        not isinstance(e_raw, list)
        or len(e_raw) != 2
        or not all(isinstance(w, int) for w in e_raw)
    ):
        failures.append("query: e malformed")
        return _verdict(failures)
    e = norm_edge(*e_raw)
    cw = _cw_edge(cycle, pos, e)
    if cw is None:
        failures.append("query: e is not an outer cycle edge")
        return _verdict(failures)
    p, q = cw
    k = len(cycle)
    # u, e, v clockwise: walking clockwise from u, the near end p comes
    # no later than the far end q, which comes no later than v.
    du_p = (pos[p] - pos[u]) % k
    du_q = (pos[q] - pos[u]) % k
    du_v = (pos[v] - pos[u]) % k
    if not (du_p <= du_q <= du_v and (du_q > 0)):
        failures.append("query: u, e, v do not occur in clockwise order")
        return _verdict(failures)

    path = _check_path(g, cert.get("path"), failures, "path", closed=False)
    if path is None:
        return _verdict(failures)
    if path[0] != u:
        failures.append("path does not start at u")
    if path[-1] != v:
        failures.append("path does not end at v")
    p_edges = {norm_edge(path[i], path[i + 1]) for i in range(len(path) - 1)}
    if e not in p_edges:
        failures.append("e not on path")

    cycle_edges = frozenset(norm_edge(a, b) for a, b in walk_darts(cycle))
    bridges = bridges_of(g, path, p_edges)
    for b in bridges:
        limit = 2 if b.has_edge_in(cycle_edges) else 3
        if len(b.attachments) > limit:
            kind = "cycle bridge" if limit == 2 else "bridge"
            failures.append(
                f"{kind} {sorted(b.vertices)} has {len(b.attachments)} attachments"
            )

    true_beta = sum(1 for b in bridges if b.size >= 3)
    claimed_beta = cert.get("beta")
    if claimed_beta != true_beta:
        failures.append(f"beta mismatch: claimed {claimed_beta}, found {true_beta}")

    if "bridges" in cert:
        claimed = {frozenset(b.get("vertices", [])) for b in cert["bridges"]}
        actual = {frozenset(b.vertices) for b in bridges if b.size >= 3}
        if claimed != actual:
            failures.append("bridge list mismatch")

    tau_vu = _tau_num(g, cycle, pos, v, u)
    tau_ue = _tau_num(g, cycle, pos, u, e)
    tau_ev = _tau_num(g, cycle, pos, e, v)
    for name, num in (("vu", tau_vu), ("ue", tau_ue), ("ev", tau_ev)):
        claimed = cert.get("taus", {}).get(name)
        if claimed is not None and (
            claimed.get("numerator") != num or claimed.get("denominator") != 3
        ):
            failures.append(
                f"tau mismatch ({name}): claimed {claimed}, found {num}/3"
            )
    bound_num = (n - 6) + tau_vu + tau_ue + tau_ev
    bound = cert.get("bound", {})
    if bound.get("numerator") != bound_num or bound.get("denominator") != 3:
        failures.append(
            f"bound mismatch: claimed {bound}, found {bound_num}/3"
        )
    if 3 * true_beta > bound_num:
        failures.append(
            f"beta exceeds bound: beta={true_beta}, bound={bound_num}/3"
        )
    return _verdict(failures)


def verify_long_cycle_report(emb: RotationEmbedding, report: dict) -> Verdict:
    failures: list[str] = []
    if not _check_embedding(emb, failures):
        return _verdict(failures)
    g = emb.to_graph()
    n = g.n
    cyc = _check_path(g, report.get("cycle"), failures, "cycle", closed=True)
    if cyc is None:
        return _verdict(failures)
    if report.get("length") != len(cyc):
        failures.append(
            f"length mismatch: claimed {report.get('length')}, cycle has {len(cyc)}"
        )
    # Below six vertices the guarantee degenerates to Hamiltonicity, so
    # the expected promise is n rather than the ceiling formula.
    bound = (2 * n + 8) // 3 if n >= 6 else n  # ceil((2n + 6) / 3)
    if report.get("bound") not in (None, bound):
        failures.append(
            f"bound mismatch: claimed {report.get('bound')}, expected {bound}"
        )
    if len(cyc) < bound:
        failures.append(f"cycle shorter than bound: {len(cyc)} < {bound}")
    return _verdict(failures)


def verify_certificate(emb: RotationEmbedding, obj: dict) -> Verdict:
    """Dispatch on the payload kind; unknown kinds fail the verdict."""
    kind = obj.get("kind")
    if kind == "tutte-path-certificate":
        return verify_tutte_certificate(emb, obj)
    if kind == "long-cycle-report":
        return verify_long_cycle_report(emb, obj)
    return Verdict(False, (f"unknown certificate kind {kind!r}",))
