"""The recursive splitting arms of the path solver.

Three arms live here.  Two of them peel the instance apart at a 2-cut:
one when a cut pairs the start vertex or the far end of the requested
edge with its outer neighbour, one when a cut separates the requested
edge from both endpoints.  The third arm is the main reduction: it
isolates the upper block above the requested edge, contracts everything
hanging below that block's lower boundary, finds a spanning path of the
contraction under a detachment budget, then rebuilds the lower side
piece by piece along the remaining outer arc.

Every subinstance handed to the recursion is validated as a circuit
graph first, and the caller's final audit re-checks the assembled path
from scratch, so each assumption baked in here is enforced rather than
trusted.
"""

from __future__ import annotations

from collections import defaultdict

from ..circuit import (
    ONE_THIRD,
    TWO_THIRDS,
    ZERO,
    CircuitViolation,
    close_circuit,
    validate_circuit,
)
from ..planar_core.embedding import (
    contract_piece,
    delete_edge,
    delete_vertex,
    restrict,
    smooth_degree2,
)
from ..planar_core.structure import (
    Graph,
    beta as count_detached,
    block_containing_edges,
    bridges_of,
    cut_components,
    is_biconnected,
    is_f_tutte,
    norm_edge,
)
from .certificates import CertifiedFailure, InductionFrame, PathQuery, path_edges
from .solver import splice_edge


def _genuine(g, s, t):
    comps = cut_components(g, s, t)
    return comps if len(comps) >= 2 else None


def _query_oriented(cgx, u, v, e):
    """Fix the handedness of a freshly closed subinstance.

    When a closed region carries no interior face, both orientations of
    its outer walk validate and the builder may hand back either one;
    mirror if the intended query sits on the wrong hand.
    """
    try:
        PathQuery.make(cgx, u, v, norm_edge(*e))
        return cgx
    except ValueError:
        return cgx.mirror()


def split_on_endpoint_2cut(cg, u, v, e, ctx, frame, rec):
    """Peel at a 2-cut pairing a query endpoint with an end of e.

    Two cuts qualify: the start vertex with the near end of e, and the
    target with the far end (when they differ).  If both are genuine
    the one splitting off the larger side wins, ties going to the
    lexicographically smaller pair.  Returns None when neither exists.
    """
    g = cg.graph
    near, far = cg.cw_dir(e)
    options = []
    comps = _genuine(g, u, near)
    if comps is not None:
        assert len(comps) == 2, "a circuit 2-cut leaves exactly two components"
        keep = next(c for c in comps if far in c)
        split = next(c for c in comps if c is not keep)
        assert v in keep, "the target must stay on the far side"
        options.append((len(split), tuple(sorted((u, near))), False))
    if v != far:
        comps = _genuine(g, v, far)
        if comps is not None:
            assert len(comps) == 2
            keep = next(c for c in comps if near in c)
            split = next(c for c in comps if c is not keep)
            assert u in keep, "the start must stay on the near side"
            options.append((len(split), tuple(sorted((v, far))), True))
    if not options:
        return None
    options.sort(key=lambda o: (-o[0], o[1]))
    mirrored = options[0][2]
    if mirrored:
        result = _endpoint_split_apply(cg.mirror(), v, u, e, ctx, frame, rec)
        return tuple(reversed(result))
    return _endpoint_split_apply(cg, u, v, e, ctx, frame, rec)


def _endpoint_split_apply(cg, u, v, e, ctx, frame, rec):
    g = cg.graph
    near, far = cg.cw_dir(e)
    x = near
    comps = _genuine(g, u, x)
    assert comps is not None and len(comps) == 2
    keep = next(c for c in comps if far in c)
    split = next(c for c in comps if c is not keep)
    v1 = {u, x} | keep
    v2 = {u, x} | split
    ux = norm_edge(u, x)
    induced1 = {ed for ed in g.edges if ed[0] in v1 and ed[1] in v1 and ed != ux}

    side = Graph.build(sorted(v1), induced1)
    if is_biconnected(side):
        # The kept side stands on its own once the cut chord is gone;
        # the split-off side stays behind as a single bridge.
        frame.rule = "L3.2-case1"
        cg1 = validate_circuit(restrict(cg.emb, v1, induced1))
        return rec(cg1, u, v, e)

    frame.rule = "L3.2-case2"
    cg1 = close_circuit(restrict(cg.emb, v1), u, x, cg.subpath(x, u))
    p1 = rec(_query_oriented(cg1, u, v, e), u, v, e)
    if ux not in path_edges(p1):
        # The kept side never crossed the chord, so the split-off side
        # survives as one bridge hanging at the cut pair.
        frame.note = "cut chord unused, split side stays a bridge"
        return p1
    upper = cg.subpath(u, x)
    assert len(upper) >= 3, "cut pairs are never outer neighbours"
    e2 = norm_edge(upper[-3], upper[-2])
    cg2 = close_circuit(restrict(cg.emb, v2), u, x, upper)
    p2 = rec(_query_oriented(cg2, u, x, e2), u, x, e2)
    return splice_edge(p1, u, x, p2)


def split_on_separating_2cut(cg, u, v, e, ctx, frame, rec):
    """Peel at a 2-cut separating e from both query endpoints.

    Scans cut pairs in lexicographic order and applies the first one
    whose e-side component avoids u and v.  Returns None when no such
    cut exists.
    """
    g = cg.graph
    from ..planar_core.structure import two_cuts

    near, far = cg.cw_dir(e)
    for (s, t), comps in two_cuts(g):
        if {s, t} == {u, v}:
            continue
        probe = near if near not in (s, t) else far
        assert probe not in (s, t), "both ends of e inside one cut"
        side_e = next(c for c in comps if probe in c)
        if u in side_e or v in side_e:
            continue
        assert len(comps) == 2, "a circuit 2-cut leaves exactly two components"
        return _separating_split_apply(cg, u, v, e, s, t, ctx, frame, rec)
    return None


def _separating_split_apply(cg, u, v, e, s, t, ctx, frame, rec):
    g = cg.graph
    near, far = cg.cw_dir(e)
    low = set(cg.subpath(e, v))
    high = set(cg.subpath(u, e))
    in_low = [z for z in (s, t) if z in low]
    in_high = [z for z in (s, t) if z in high]
    assert len(in_low) == 1 and len(in_high) == 1, "cut must straddle e"
    x, y = in_low[0], in_high[0]
    if y == u:
        # Reorient so the start vertex is not a cut end; the cut pair
        # cannot be {u, v}, so this happens at most once.
        result = _separating_split_apply(cg.mirror(), v, u, e, s, t, ctx, frame, rec)
        return tuple(reversed(result))
    frame.rule = "L3.1"
    comps = cut_components(g, s, t)
    assert len(comps) == 2
    probe = near if near not in (s, t) else far
    side_e = next(c for c in comps if probe in c)
    side_uv = next(c for c in comps if c is not side_e)
    assert u in side_uv
    assert v in side_uv or v == x
    v1 = {x, y} | side_uv
    v2 = {x, y} | side_e
    assert len(v1) + len(v2) == g.n + 2
    xy = norm_edge(x, y)
    cg1 = close_circuit(restrict(cg.emb, v1), x, y, cg.subpath(x, y))
    p1 = rec(_query_oriented(cg1, u, v, xy), u, v, xy)
    cg2 = close_circuit(restrict(cg.emb, v2), x, y, cg.subpath(y, x))
    p2 = rec(_query_oriented(cg2, y, x, e), y, x, e)
    return splice_edge(p1, x, y, p2)


def main_induction(cg, u, v, e, ctx, frame, rec):
    frame.rule = "induction"
    return _MainPass(cg, u, v, e, ctx, frame, rec).run()


class _MainPass:
    """One pass of the main reduction over a single instance.

    The stages run in order: isolate the upper block, contract the
    pieces hanging below its lower boundary, pick a spanning path of
    the contraction, sort the lower bridges into classes along the
    remaining outer arc, route a subpath through every class and every
    connector arc, then splice the whole thing back together.
    """

    def __init__(self, cg, u, v, e, ctx, frame, rec):
        self.cg = cg
        self.g = cg.graph
        self.u = u
        self.v = v
        self.e = e
        self.ctx = ctx
        self.frame = frame
        self.rec = rec
        self.near, self.far = cg.cw_dir(e)
        self.uce = cg.subpath(u, e)
        self.ecv = cg.subpath(e, v)
        self.vcu = cg.subpath(v, u)
        self.epos = {z: i for i, z in enumerate(self.ecv)}

    def run(self):
        shortcut = self._upper_block()
        if shortcut is not None:
            return shortcut
        self._contract()
        self._spanning_path()
        self._classify()
        self._fill_classes()
        self._fill_transits()
        return self._assemble()

    def rec_on(self, cgx, a, b, ed):
        return self.rec(_query_oriented(cgx, a, b, ed), a, b, ed)

    # ------------------------------------------------------------------
    # stage 1: the upper block

    def _upper_block(self):
        upper = self.g.without_vertices(set(self.ecv))
        top_edges = [norm_edge(a, b) for a, b in zip(self.uce, self.uce[1:])]
        hgraph = block_containing_edges(upper, top_edges)
        if hgraph.n == 2:
            return self._degree2_shortcut()
        self.hgraph = hgraph
        self.cgh = validate_circuit(restrict(self.cg.emb, set(hgraph.vertices)))
        assert set(self.cgh.graph.edges) == set(hgraph.edges), "upper block not induced"
        assert self.cgh.subpath(self.u, self.near) == self.uce, "top arc disturbed"
        self.aarc = self.cgh.subpath(self.near, self.u)
        self.apos = {z: i for i, z in enumerate(self.aarc)}
        hv = set(hgraph.vertices)
        self.w = next(z for z in self.vcu[1:] if z in hv)
        if self.w != self.u:
            assert self.cgh.subpath(self.w, self.u) == self.cg.subpath(self.w, self.u), (
                "boundary tail must agree with the outer cycle"
            )
        return None

    def _degree2_shortcut(self):
        # The whole upper side is the single edge from u to the near
        # end of e, so that corner has degree two and can be smoothed
        # away; the shrunken instance then asks for the merged edge.
        g = self.g
        assert g.degree(self.near) == 2, "trivial upper block needs a degree-2 corner"
        assert set(g.neighbors(self.near)) == {self.u, self.far}
        self.frame.rule = "C2"
        if g.has_edge(self.u, self.far):
            # validity keeps the region behind the corner empty, so the
            # corner cuts off cleanly and the existing edge is forced
            self.frame.note = "corner bypass already present"
        cg2 = validate_circuit(smooth_degree2(self.cg.emb, self.near))
        sub = self.rec(cg2, self.u, self.v, norm_edge(self.u, self.far))
        return splice_edge(sub, self.u, self.far, (self.u, self.near, self.far))

    # ------------------------------------------------------------------
    # stage 2: contraction of the pieces below the boundary arc

    def _contract(self):
        gh = self.hgraph
        aarc = self.aarc
        spans = {}
        for i in range(len(aarc)):
            for j in range(i + 1, len(aarc)):
                s, t = aarc[i], aarc[j]
                comps = cut_components(gh, s, t)
                if len(comps) < 2:
                    continue
                free = [z for z in self.uce if z not in (s, t)]
                if free:
                    keep = next(c for c in comps if free[0] in c)
                    assert all(z in keep for z in free), "cut splits the top arc"
                    interior = set().union(*(c for c in comps if c is not keep))
                else:
                    # only possible when the top arc is the single edge
                    # u-near and the cut is exactly its two ends
                    interior = set().union(*comps)
                if interior:
                    spans[(i, j)] = (s, t, interior)
        maximal = sorted(
            span
            for span in spans
            if not any(
                other != span and other[0] <= span[0] and span[1] <= other[1]
                for other in spans
            )
        )
        keep_spans = []
        for span in maximal:
            if keep_spans and span[0] < keep_spans[-1][1]:
                # two maximal pieces cross; contract the earlier one and
                # leave the later region for the spanning path to cover
                continue
            keep_spans.append(span)

        emb = self.cgh.emb
        registry = {}
        for span in keep_spans:
            s, t, interior = spans[span]
            marker = self.ctx.fresh_marker()
            emb = contract_piece(emb, s, t, interior, marker)
            registry[marker] = (s, t, frozenset(interior))
        self.registry = registry
        self.markers = set(registry)
        self.marker_of = {
            z: m for m, (_, _, inner) in registry.items() for z in inner
        }
        self.cgk = validate_circuit(emb)
        assert self.cgk.subpath(self.u, self.near) == self.uce
        for m in self.markers:
            assert self.cgk.graph.degree(m) == 2 and self.cgk.on_cycle(m)
        if self.w in set(self.cgk.vertices):
            self.wprime = self.w
        else:
            self.wprime = self.marker_of[self.w]

    # ------------------------------------------------------------------
    # stage 3: a spanning path of the contraction under budget

    def _spanning_path(self):
        cgk, u, near = self.cgk, self.u, self.near
        markers = self.markers
        wprime = self.wprime
        tau_top = cgk.tau(u, near)
        tau_ue = self.cg.tau(u, self.e)
        assert tau_top <= tau_ue, "contraction may only relax the top twist"
        allowance = 3 if len(markers) >= 2 else 2
        budget = (cgk.n - 6) + tau_ue.numerator + allowance

        def acceptable(path):
            if wprime not in path:
                return False
            pe = path_edges(path)
            if not is_f_tutte(cgk.graph, path, pe, cgk.cycle_edges):
                return False
            return 3 * count_detached(cgk.graph, path, pe) <= budget

        candidates = []
        aark = cgk.subpath(near, u)
        arc_edges = [norm_edge(a, b) for a, b in zip(aark, aark[1:])]

        if cgk.n == 3:
            mid = next(z for z in cgk.vertices if z not in (u, near))
            candidates.append(("C3-small", "detour", lambda: (u, mid, near)))
            candidates.append(("C3-small", "direct", lambda: (u, near)))
        else:
            strict = tau_top < tau_ue
            if not strict:
                assert tau_top in (ZERO, TWO_THIRDS), "matched twists are 0 or 2/3"
            if strict:
                pool = list(arc_edges[1:])
                if len(markers) >= 2:
                    pool = [ed for ed in pool if wprime in ed]
                elif len(markers) == 1:
                    (lone,) = markers
                    pool = [ed for ed in pool if lone in ed]
                    pool.sort(key=lambda ed: 0 if wprime in ed else 1)
                else:
                    pool.sort(key=lambda ed: 0 if wprime in ed else 1)
                for ed in pool:
                    candidates.append(
                        ("C3-A", f"lower edge {ed}", lambda ed=ed: self.rec(cgk, near, u, ed))
                    )
            elif markers:
                prefs = []
                if wprime in markers:
                    prefs.append(wprime)
                nbrs = set(cgk.graph.neighbors(wprime))
                prefs += sorted(m for m in markers if m in nbrs and m not in prefs)
                prefs += sorted(m for m in markers if m not in prefs)
                for tm in prefs:
                    candidates.append(
                        ("C3-B", f"skip marker {tm}", lambda tm=tm: self._detour_around(tm))
                    )
            elif len(aark) >= 4:
                pool = [ed for ed in arc_edges if cgk.tau(near, ed) == ZERO]
                pool.sort(key=lambda ed: 0 if wprime in ed else 1)
                for ed in pool:
                    candidates.append(
                        ("C3-C", f"flat lower edge {ed}", lambda ed=ed: self.rec(cgk, near, u, ed))
                    )
            elif len(aark) == 3:
                corner = aark[1]
                assert wprime in (u, corner), "tail must survive on a short lower arc"
                if tau_ue == TWO_THIRDS:
                    f = norm_edge(self.uce[-3], self.uce[-2])
                    candidates.append(
                        ("C3-D1", "reroute near the top", lambda: self.rec(cgk, u, near, f))
                    )
                elif tau_ue == ZERO:
                    candidates.append(("C3-D2", "open the corner", self._open_corner))
            # a two vertex lower arc falls through to the sweep

        for ed in arc_edges:
            candidates.append(
                ("C3-ext", f"sweep edge {ed}", lambda ed=ed: self.rec(cgk, near, u, ed))
            )

        for tag, note, produce in candidates:
            try:
                path = tuple(produce())
            except (ValueError, CertifiedFailure):
                continue
            if path[0] != u:
                path = tuple(reversed(path))
            assert path[0] == u and path[-1] == near
            if acceptable(path):
                self.ctx.step(self.frame, tag, note)
                self.pk = path
                return
        raise CertifiedFailure(
            "no spanning path of the contracted upper block met its budget",
            self.ctx.ledger,
        )

    def _detour_around(self, tm):
        # Route around one marker: solve the contraction without it,
        # forcing the edge between its two outer neighbours, then bend
        # that edge into the two real steps through the marker.
        cgk = self.cgk
        xx, yy = cgk.prev_cw(tm), cgk.next_cw(tm)
        trimmed = close_circuit(
            delete_vertex(cgk.emb, tm), xx, yy, [z for z in cgk.cycle if z != tm]
        )
        sub = self.rec_on(trimmed, self.near, self.u, norm_edge(xx, yy))
        return splice_edge(sub, xx, yy, (xx, tm, yy))

    def _open_corner(self):
        # Lower arc of three vertices with a flat top twist: drop the
        # arc edge at the near corner and close the walk from u so the
        # recursion is forced through the corner's other side.
        cgk, u, near = self.cgk, self.u, self.near
        corner = cgk.subpath(near, u)[1]
        assert any(z not in (near, u) for z in cgk.graph.neighbors(corner)), (
            "corner vertex must reach the interior"
        )
        opened = close_circuit(delete_edge(cgk.emb, near, corner), u, near, (corner,))
        sub = self.rec_on(opened, near, u, norm_edge(corner, u))
        if norm_edge(u, near) in path_edges(sub):
            assert cgk.graph.has_edge(u, near), "path used the virtual closing edge"
        return sub

    # ------------------------------------------------------------------
    # stage 4: sorting the lower bridges into classes

    def _classify(self):
        hv = set(self.hgraph.vertices)
        lowset = set(self.ecv)
        low_edges = {norm_edge(a, b) for a, b in zip(self.ecv, self.ecv[1:])}
        members = bridges_of(self.g, hv | lowset, set(self.hgraph.edges) | low_edges)

        pk = self.pk
        markers = self.markers
        pkset = set(pk)
        kept = [z for z in pk if z not in markers]
        kept_edges = {
            ed for ed in path_edges(pk) if ed[0] not in markers and ed[1] not in markers
        }
        self.hosts = bridges_of(self.cgk.graph, kept, kept_edges)
        host_of = {}
        for idx, wb in enumerate(self.hosts):
            for z in set(wb.vertices) - set(wb.attachments):
                host_of[z] = idx

        aprefix = set(self.cgh.subpath(self.near, self.w))
        kverts = set(self.cgk.vertices)
        classes = {}
        pure = []
        for br in members:
            ups = [z for z in br.attachments if z in hv]
            lows = sorted((z for z in br.attachments if z in lowset), key=self.epos.get)
            assert lows, "every lower bridge touches the lower arc"
            assert len(ups) <= 1, "lower bridges reach the upper block at most once"
            if not ups:
                pure.append(br)
                continue
            h = ups[0]
            assert h in aprefix, "upper attachment beyond the tail anchor"
            if h in pkset:
                key = ("vertex", h)
            elif h in kverts:
                key = ("host", host_of[h])
            else:
                mu = self.marker_of[h]
                key = ("transit", mu) if mu in pkset else ("host", host_of[mu])
            data = classes.setdefault(
                key, {"key": key, "members": [], "lows": set(), "ups": set()}
            )
            data["members"].append(br)
            data["lows"].update(lows)
            data["ups"].add(h)

        recs = []
        for key, data in classes.items():
            lows = sorted(data["lows"], key=self.epos.get)
            data["a"] = lows[0]
            data["b"] = lows[-1]
            data["akey"] = min(self.apos[h] for h in data["ups"])
            recs.append(data)
        recs.sort(key=lambda d: (self.epos[d["a"]], self.epos[d["b"]], d["akey"]))
        assert recs, "the joining edge always forms a class"
        for d1, d2 in zip(recs, recs[1:]):
            assert self.epos[d1["b"]] <= self.epos[d2["a"]], "class intervals overlap"
        assert recs[0]["key"] == ("vertex", self.near), "first class hangs at the near corner"
        assert recs[0]["a"] == self.far
        assert recs[-1]["b"] == self.v
        self.recs = recs
        self.m = len(recs)
        if self.m >= 2:
            first = recs[0]
            assert len(first["members"]) == 1, "near corner class is the joining edge alone"
            assert set(first["members"][0].vertices) == {self.near, self.far}
            assert first["b"] == self.far
            expect = (
                ("vertex", self.w) if self.wprime == self.w else ("transit", self.wprime)
            )
            assert recs[-1]["key"] == expect, "last class must anchor at the tail"

        spans = []
        for i, d in enumerate(recs):
            spans.append(("J", i, self.epos[d["a"]], self.epos[d["b"]]))
        for i in range(len(recs) - 1):
            spans.append(("L", i, self.epos[recs[i]["b"]], self.epos[recs[i + 1]["a"]]))
        self.assigned_j = defaultdict(list)
        self.assigned_l = defaultdict(list)
        for br in pure:
            lo = min(self.epos[z] for z in br.attachments)
            hi = max(self.epos[z] for z in br.attachments)
            assert lo < hi, "a stray bridge pinned to one spot"
            fits = [(kind, idx) for kind, idx, s0, s1 in spans if s0 <= lo and hi <= s1]
            assert len(fits) == 1, "stray bridge must land in exactly one stretch"
            kind, idx = fits[0]
            (self.assigned_j if kind == "J" else self.assigned_l)[idx].append(br)

    # ------------------------------------------------------------------
    # stage 5: routing through every class

    def _fill_classes(self):
        self.fills = {}
        self.plist = []
        self.piece_sets = [set(self.hgraph.vertices)]
        self.class_meta = []
        if self.m == 1:
            self.plist.append(self._single_class())
            return
        self.ctx.step(self.frame, "C4", "near corner carries only the joining edge")
        self.plist.append((self.near, self.far))
        self.piece_sets.append({self.near, self.far})
        self._note_class(0, "C4", 1)
        for i in range(1, self.m - 1):
            self.plist.append(self._middle_class(i))
        self.plist.append(self._tail_class())

    def _middle_class(self, i):
        kind = self.recs[i]["key"][0]
        if kind == "vertex":
            if self.recs[i]["a"] == self.recs[i]["b"]:
                return self._pinned_class(i)
            return self._two_contact_arc(i)
        if kind == "transit":
            if self.recs[i]["a"] == self.recs[i]["b"]:
                return self._pinned_class(i)
            return self._crossed_class(i)
        return self._hosted_class(i)

    def _pinned_class(self, i):
        # Everything in the class hangs between one path vertex (or one
        # crossed piece, refilled later with the transits) and one arc
        # vertex; it all stays a bridge of the final path.
        d = self.recs[i]
        kind, val = d["key"]
        if kind == "vertex":
            zone = {val, d["a"]}
        else:
            s, t, inner = self.registry[val]
            zone = set(inner) | {s, t, d["a"]}
        verts = {d["a"]}
        for br in d["members"]:
            assert set(br.attachments) <= zone, "pinned member leaves its zone"
            verts |= set(br.vertices)
        assert not self.assigned_j.get(i), "no room for strays at a single spot"
        self.ctx.step(self.frame, "C5-trivial", f"class stays a bridge at {d['a']}")
        self.piece_sets.append(verts)
        self._note_class(i, "C5-trivial", 2)
        return (d["a"],)

    def _two_contact_arc(self, i):
        # Class met by the spanning path in a single vertex x: close the
        # region with an edge from x to the left end of its arc and
        # force that edge, which strips to a path from a to b.
        d = self.recs[i]
        x = d["key"][1]
        a, b = d["a"], d["b"]
        arc = self._low_slice(a, b)
        vj = set(arc) | {x}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        for br in d["members"] + self.assigned_j.get(i, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        cgj = close_circuit(restrict(self.cg.emb, vj, ej), x, a, tuple(arc) + (x,))
        sub = self.rec_on(cgj, x, b, norm_edge(x, a))
        assert sub[0] == x and sub[1] == a, "entry edge must lead the path"
        self.ctx.step(self.frame, "C5", f"two contact arc at {x}", size=cgj.n)
        self.piece_sets.append(vj)
        self._note_class(i, "C5", 2)
        return tuple(sub[1:])

    def _crossed_class(self, i):
        # Class keyed by a contracted piece the spanning path crosses:
        # one recursion yields both the arc subpath and the real walk
        # through the piece replacing the marker.
        d = self.recs[i]
        mu = d["key"][1]
        s, t, inner = self.registry[mu]
        y, x = (s, t) if self.apos[s] < self.apos[t] else (t, s)
        a, b = d["a"], d["b"]
        arc = self._low_slice(a, b)
        vj = set(arc) | set(inner) | {x, y}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        ej |= {ed for ed in self.hgraph.edges if ed[0] in inner or ed[1] in inner}
        if self.hgraph.has_edge(x, y):
            # the piece absorbed the direct contact edge at contraction
            ej.add(norm_edge(x, y))
        for br in d["members"] + self.assigned_j.get(i, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        try:
            cgj = close_circuit(restrict(self.cg.emb, vj, ej), b, x, tuple(arc) + (y,))
        except CircuitViolation:
            # The piece region refuses to close into a disk; hand the
            # piece to the standalone refill and walk the arc as is,
            # every member staying a bridge.
            return self._arc_with_refill(i, d, arc)
        sub = self.rec_on(cgj, a, y, norm_edge(b, x))
        k = self._split_at(sub, b, x)
        assert sub[k] == b and sub[k + 1] == x, "crossing returns through the far contact"
        main = tuple(sub[: k + 1])
        fill = tuple(sub[k + 1 :])
        assert main[0] == a and main[-1] == b
        assert fill[0] == x and fill[-1] == y
        self.fills[mu] = fill
        self.ctx.step(self.frame, "C7", f"class crossing piece {mu}", size=cgj.n)
        self.piece_sets.append(vj)
        self._note_class(i, "C7", 4)
        return main

    def _arc_with_refill(self, i, d, arc):
        verts = set(arc)
        for br in d["members"] + self.assigned_j.get(i, []):
            verts |= set(br.vertices)
        self.ctx.step(self.frame, "C7", "class hangs beside a refill")
        self.piece_sets.append(verts)
        self._note_class(i, "C7", 4)
        return tuple(arc)

    def _hosted_class(self, i):
        # Class keyed by an off-path chunk of the contraction with two
        # path contacts.  The class region minus those contacts either
        # collapses, or is solved as its own circuit graph, splitting
        # first when its outer walk is not good.
        d = self.recs[i]
        wb = self.hosts[d["key"][1]]
        atts = sorted(wb.attachments)
        assert len(atts) == 2, "a keyed host touches the spanning path twice"
        p0, p1 = atts
        assert p0 in self.apos and p1 in self.apos, "host contacts sit on the boundary"
        y, x = (p0, p1) if self.apos[p0] < self.apos[p1] else (p1, p0)
        a, b = d["a"], d["b"]
        hostset = self._expand_host(wb)
        if a == b:
            verts = {a} | hostset
            for br in d["members"]:
                verts |= set(br.vertices)
            assert not self.assigned_j.get(i)
            self.ctx.step(self.frame, "C6-trivial", f"single lower contact at {a}")
            self.piece_sets.append(verts | {x, y})
            self._note_class(i, "C6-trivial", 4)
            return (a,)

        arc = self._low_slice(a, b)
        vj = set(arc) | hostset | {x, y}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        ej |= {
            ed
            for ed in self.hgraph.edges
            if (ed[0] in hostset or ed[1] in hostset) and ed[0] in vj and ed[1] in vj
        }
        for br in d["members"] + self.assigned_j.get(i, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        gj = Graph.build(sorted(vj), ej)
        arc_e = [norm_edge(p, q) for p, q in zip(arc, arc[1:])]
        block = block_containing_edges(gj.without_vertices({x, y}), arc_e)
        if block.n == 2:
            self.ctx.step(self.frame, "C6-trivial", "class reduces to its arc")
            self.piece_sets.append(vj)
            self._note_class(i, "C6-trivial", 4)
            return tuple(arc)

        cgji = validate_circuit(
            restrict(self.cg.emb, set(block.vertices), set(block.edges))
        )
        assert cgji.subpath(a, b) == arc, "lower arc must bound the trimmed class"
        top = cgji.subpath(b, a)
        ny = {z for z in top if gj.has_edge(y, z)}
        nx = {z for z in top if gj.has_edge(x, z)}
        kz = None
        for idx in range(1, len(top) - 1):
            if not (ny & set(top[:idx])) and not (nx & set(top[idx + 1 :])):
                kz = idx
                break
        assert kz is not None, "contact neighbourhoods must leave a gap"
        zstar = top[kz]

        if cgji.is_good(b, a):
            pick = None
            for ce in (norm_edge(top[kz - 1], zstar), norm_edge(zstar, top[kz + 1])):
                if cgji.tau(b, ce) <= ONE_THIRD or cgji.tau(ce, a) <= ONE_THIRD:
                    pick = ce
                    break
            assert pick is not None, "no cheap edge beside the balance vertex"
            sub = self.rec(cgji, b, a, pick)
            self.ctx.step(self.frame, "C6-good", f"balanced at {zstar}", size=cgji.n)
            self.piece_sets.append(vj)
            self._note_class(i, "C6-good", 4)
            return tuple(reversed(sub))

        cands = []
        for i2 in range(len(top)):
            for j2 in range(i2 + 1, len(top)):
                z1, z2 = top[i2], top[j2]
                comps = cut_components(block, z1, z2)
                if len(comps) < 2:
                    continue
                rep = next((zz for zz in arc if zz not in (z1, z2)), None)
                if rep is None:
                    continue
                mainc = next(c for c in comps if rep in c)
                extra = [c for c in comps if c is not mainc]
                if not extra:
                    continue
                m2v = {z1, z2} | set().union(*extra)
                cands.append((0 if zstar in m2v else 1, len(m2v), (z1, z2), m2v, mainc))
        cands.sort(key=lambda c: (c[0], c[1], c[2]))
        for _, _, (z1, z2), m2v, mainc in cands:
            try:
                c1 = close_circuit(
                    restrict(cgji.emb, {z1, z2} | set(mainc)),
                    z1,
                    z2,
                    cgji.subpath(z2, z1),
                )
                c2 = close_circuit(restrict(cgji.emb, m2v), z1, z2, cgji.subpath(z1, z2))
            except CircuitViolation:
                continue
            chunk = cgji.subpath(z1, z2)
            assert len(chunk) >= 3, "outer cut pairs sit apart"
            r1 = self.rec_on(c1, b, a, norm_edge(z1, z2))
            r2 = self.rec_on(c2, z1, z2, norm_edge(chunk[1], chunk[2]))
            merged = splice_edge(r1, z1, z2, r2)
            self.ctx.step(self.frame, "C6-split", f"cut at {z1},{z2}", size=cgji.n)
            self.piece_sets.append(vj)
            self._note_class(i, "C6-split", 4)
            return tuple(reversed(merged))
        raise CertifiedFailure(
            "no workable split of an unbalanced class", self.ctx.ledger
        )

    def _tail_class(self):
        i = self.m - 1
        d = self.recs[i]
        a, b = d["a"], d["b"]
        assert b == self.v
        if d["key"][0] == "vertex":
            x = y = self.w
            inner = set()
            self.tail_c = 2
        else:
            mu = d["key"][1]
            s, t, innerf = self.registry[mu]
            y, x = (s, t) if self.apos[s] < self.apos[t] else (t, s)
            inner = set(innerf)
            self.tail_c = 4
        if a == b:
            # Pinned tail: the members stay bridges of the final path,
            # and a crossed piece gets refilled with the other transits.
            verts = {a}
            for br in d["members"]:
                verts |= set(br.vertices)
            self.tail_c = 2
            self.ctx.step(self.frame, "C8-trivial", "tail pinned at one spot")
            self.piece_sets.append(verts)
            self._note_class(i, "C8-trivial", 2)
            return (a,)

        arc = self._low_slice(a, b)
        vj = set(arc) | inner | {x, y}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        ej |= {ed for ed in self.hgraph.edges if ed[0] in inner or ed[1] in inner}
        if self.tail_c == 4 and self.hgraph.has_edge(x, y):
            # the piece absorbed the direct contact edge at contraction
            ej.add(norm_edge(x, y))
        for br in d["members"] + self.assigned_j.get(i, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        em = norm_edge(y, a)
        try:
            cgjm = close_circuit(restrict(self.cg.emb, vj, ej), y, a, tuple(arc) + (x,))
        except CircuitViolation:
            if self.tail_c != 4:
                raise
            # The piece region refuses to close into a disk around the
            # class, so refill the piece with the other transits and
            # route the class anchored at the tail vertex alone.
            return self._tail_from_anchor(i, d, a, b)
        sub = self.rec_on(cgjm, x, b, em)
        k = self._split_at(sub, y, a)
        assert sub[k] == y and sub[k + 1] == a, "tail exits through the near contact"
        fill = tuple(sub[: k + 1])
        main = tuple(sub[k + 1 :])
        assert fill[0] == x and fill[-1] == y
        assert main[0] == a and main[-1] == b
        if self.tail_c == 4:
            self.fills[d["key"][1]] = fill
        self.ctx.step(self.frame, "C8", f"tail class ({self.tail_c} contacts)", size=cgjm.n)
        self.piece_sets.append(vj)
        self._note_class(i, "C8", self.tail_c)
        return main

    def _tail_from_anchor(self, i, d, a, b):
        w = self.w
        arc = self._low_slice(a, b)
        vj = set(arc) | {w}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        hanging = []
        for br in d["members"]:
            if w in br.attachments:
                vj |= set(br.vertices)
                ej |= set(br.edges)
            else:
                hanging.append(br)
        for br in self.assigned_j.get(i, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        em = norm_edge(w, a)
        cgjm = close_circuit(restrict(self.cg.emb, vj, ej), w, a, tuple(arc) + (w,))
        sub = self.rec_on(cgjm, w, b, em)
        assert sub[0] == w and sub[1] == a, "anchored tail leads through its virtual edge"
        self.tail_c = 2
        self.ctx.step(self.frame, "C8", "tail anchored beside a refill", size=cgjm.n)
        self.piece_sets.append(vj)
        for br in hanging:
            self.piece_sets.append(set(br.vertices))
        self._note_class(i, "C8", 2)
        return tuple(sub[1:])

    def _single_class(self):
        # Everything below the upper block forms one class hanging at
        # the near corner; a single recursion through the joining edge
        # settles the whole lower side.
        d = self.recs[0]
        assert d["key"] == ("vertex", self.near)
        a, b = d["a"], d["b"]
        assert a == self.far and b == self.v
        self.tail_c = 1
        arc = self._low_slice(a, b)
        vj = set(arc) | {self.near}
        ej = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
        for br in d["members"] + self.assigned_j.get(0, []):
            vj |= set(br.vertices)
            ej |= set(br.edges)
        cgj = close_circuit(
            restrict(self.cg.emb, vj, ej), self.near, a, tuple(arc) + (self.near,)
        )
        sub = self.rec_on(cgj, self.near, b, self.e)
        assert sub[0] == self.near and sub[1] == a
        self.ctx.step(self.frame, "M1", "single class endgame", size=cgj.n)
        self.piece_sets.append(vj)
        self._note_class(0, "M1", 1)
        return tuple(sub)

    def _fill_transits(self):
        # Markers the spanning path crosses without any class of their
        # own still need their piece walked through for real.
        for mu in self.pk:
            if mu not in self.markers or mu in self.fills:
                continue
            s, t, inner = self.registry[mu]
            y, x = (s, t) if self.apos[s] < self.apos[t] else (t, s)
            span = self.cgh.subpath(y, x)
            assert set(span) <= set(inner) | {x, y}, "piece span leaks outside"
            assert len(span) >= 3
            cgp = close_circuit(restrict(self.cgh.emb, set(inner) | {x, y}), x, y, span)
            sub = self.rec_on(cgp, y, x, norm_edge(span[1], span[2]))
            self.ctx.step(self.frame, "C7", f"transit only piece {mu}", size=cgp.n)
            self.piece_sets.append(set(inner) | {x, y})
            self.fills[mu] = tuple(sub)

    # ------------------------------------------------------------------
    # stage 6: connectors and final assembly

    def _connectors(self):
        qpaths = []
        for i in range(self.m - 1):
            b0 = self.recs[i]["b"]
            a1 = self.recs[i + 1]["a"]
            arc = self._low_slice(b0, a1)
            if len(arc) <= 2:
                assert not self.assigned_l.get(i), "no strays between touching classes"
                qpaths.append(tuple(arc))
                self.piece_sets.append(set(arc))
                continue
            vq = set(arc)
            eq = {norm_edge(p, q) for p, q in zip(arc, arc[1:])}
            for br in self.assigned_l.get(i, []):
                vq |= set(br.vertices)
                eq |= set(br.edges)
            cgq = close_circuit(restrict(self.cg.emb, vq, eq), b0, a1, tuple(arc))
            sub = self.rec_on(cgq, b0, a1, norm_edge(arc[1], arc[2]))
            self.ctx.step(self.frame, "C9", f"connector {b0}..{a1}", size=cgq.n)
            self.piece_sets.append(vq)
            qpaths.append(tuple(sub))
        return qpaths

    def _assemble(self):
        onpath = {z for z in self.pk if z in self.markers}
        assert set(self.fills) == onpath, "every crossed marker needs a refill"
        base = list(self.pk)
        chain = [base[0]]
        for idx in range(1, len(base)):
            z = base[idx]
            if z in self.markers:
                prev_v, nxt = base[idx - 1], base[idx + 1]
                s, t, _ = self.registry[z]
                assert {prev_v, nxt} == {s, t}, "crossing enters and leaves at the cut"
                seg = self.fills[z]
                if seg[0] != prev_v:
                    seg = tuple(reversed(seg))
                assert seg[0] == prev_v and seg[-1] == nxt
                chain.extend(seg[1:-1])
            else:
                chain.append(z)
        qpaths = self._connectors()
        for i in range(self.m):
            self._extend(chain, self.plist[i])
            if i < self.m - 1:
                self._extend(chain, qpaths[i])
        path = tuple(chain)
        assert path[0] == self.u and path[-1] == self.v
        self._record(len(qpaths))
        return path

    @staticmethod
    def _extend(chain, seg):
        assert seg[0] == chain[-1], "segments must join end to start"
        chain.extend(seg[1:])

    def _record(self, connector_count):
        union = set()
        total = 0
        for ps in self.piece_sets:
            union |= ps
            total += len(ps)
        assert union == set(self.g.vertices), "pieces must cover the whole instance"
        frame_data = InductionFrame(
            h_vertices=tuple(sorted(self.hgraph.vertices)),
            k_vertices=tuple(sorted(self.cgk.vertices)),
            markers=tuple(sorted(self.markers)),
            k_cycle=tuple(self.cgk.cycle),
            near=self.near,
            far=self.far,
            w=self.w,
            w_prime=self.wprime,
            p_k=tuple(self.pk),
            classes=self.class_meta,
            l_arcs=[
                {"b": self.recs[i]["b"], "a_next": self.recs[i + 1]["a"]}
                for i in range(self.m - 1)
            ],
            m=self.m,
            c=self.tail_c,
            piece_sizes=[len(ps) for ps in self.piece_sets],
            overlap_total=total - len(union),
            covered=len(union),
        )
        self.frame.detail["induction"] = frame_data.to_json()
        self.ctx.step(
            self.frame, "A10", f"lower arc good: {self.cg.is_good(self.e, self.v)}"
        )
        self.ctx.step(
            self.frame,
            "A11",
            f"markers={len(self.markers)} classes={self.m} connectors={connector_count}",
        )

    # ------------------------------------------------------------------
    # small shared helpers

    def _low_slice(self, a, b):
        return tuple(self.ecv[self.epos[a] : self.epos[b] + 1])

    def _expand_host(self, wb):
        out = set()
        for z in set(wb.vertices) - set(wb.attachments):
            if z in self.markers:
                out |= set(self.registry[z][2])
            else:
                out.add(z)
        return out

    @staticmethod
    def _split_at(sub, p, q):
        for k in range(len(sub) - 1):
            if {sub[k], sub[k + 1]} == {p, q}:
                return k
        raise AssertionError(f"edge {p}-{q} missing from the path")

    def _note_class(self, i, claim, contacts):
        d = self.recs[i]
        self.class_meta.append(
            {
                "index": i,
                "kind": d["key"][0],
                "key": d["key"][1],
                "a": d["a"],
                "b": d["b"],
                "claim": claim,
                "contacts": contacts,
                "members": len(d["members"]),
            }
        )
