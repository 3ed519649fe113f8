"""Plane graphs as rotation systems.

A plane graph is stored as a rotation system: for every vertex, the cyclic
order of its neighbors as seen in the drawing, read clockwise.  Faces are
recovered by the standard trace rule

    next(u -> v) = (v, clockwise successor of u in rotation[v])

under which every face lies to the left of its darts.  With clockwise
rotations the designated outer face traces as a clockwise walk and all
interior faces trace counterclockwise.  Designating a different traced face
as the outer face never requires touching the rotations; reversing every
rotation (``mirror``) produces the reflected drawing.

Eulers formula ``v - e + f == 2`` for the traced faces of a connected
rotation system certifies that the data describes a sphere embedding, so no
separate planarity test is used anywhere in this package.

All operations return new embeddings; nothing mutates in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .structure import Edge, Graph, norm_edge

Dart = tuple[int, int]


def canonical_walk(walk: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a closed walk to its lexicographically smallest rotation."""
    if not walk:
        return walk
    best = None
    for i in range(len(walk)):
        cand = walk[i:] + walk[:i]
        if best is None or cand < best:
            best = cand
    return best


def walk_darts(walk: tuple[int, ...]) -> list[Dart]:
    """The darts of a closed vertex walk, in walk order."""
    k = len(walk)
    return [(walk[i], walk[(i + 1) % k]) for i in range(k)]


class EmbeddingError(ValueError):
    """Raised when rotation data does not describe a valid plane graph."""


def trace_faces(rotations: dict[int, tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Trace all faces of a rotation system.

    Returns one closed vertex walk per face, each canonically rotated.
    Every dart (ordered vertex pair with an edge) appears in exactly one
    returned walk.
    """
    succ: dict[int, dict[int, int]] = {}
    for v, order in rotations.items():
        k = len(order)
        if k == 0:
            raise EmbeddingError(f"isolated vertex {v}")
        succ[v] = {order[i]: order[(i + 1) % k] for i in range(k)}
    pending: set[Dart] = set()
    for v, order in rotations.items():
        for u in order:
            pending.add((v, u))
    faces = []
    while pending:
        start = min(pending)
        walk = []
        dart = start
        while True:
            walk.append(dart[0])
            pending.discard(dart)
            u, v = dart
            dart = (v, succ[v][u])
            if dart == start:
                break
            if dart not in pending:
                raise EmbeddingError(f"face trace revisited dart {dart}")
        faces.append(canonical_walk(tuple(walk)))
    faces.sort()
    return faces


@dataclass(frozen=True)
class RotationEmbedding:
    """A plane graph: clockwise rotations plus a designated outer face.

    ``outer_face`` is the clockwise boundary walk of the unbounded region,
    stored in traced orientation and canonically rotated.
    """

    rotations: dict[int, tuple[int, ...]]
    outer_face: tuple[int, ...]
    _faces: tuple[tuple[int, ...], ...] = field(
        default=None, repr=False, compare=False
    )

    @staticmethod
    def build(
        rotations: dict[int, tuple[int, ...]], outer_face: tuple[int, ...]
    ) -> "RotationEmbedding":
        emb = RotationEmbedding(
            {v: tuple(order) for v, order in rotations.items()},
            canonical_walk(tuple(outer_face)),
        )
        emb.check()
        return emb

    # -- basic views -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.rotations)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.rotations))

    @property
    def edges(self) -> frozenset[Edge]:
        out = set()
        for v, order in self.rotations.items():
            for u in order:
                out.add(norm_edge(v, u))
        return frozenset(out)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.rotations and v in self.rotations[u]

    def to_graph(self) -> Graph:
        return Graph.build(self.vertices, self.edges)

    # -- faces -------------------------------------------------------

    def faces(self) -> tuple[tuple[int, ...], ...]:
        cached = object.__getattribute__(self, "_faces")
        if cached is None:
            cached = tuple(trace_faces(self.rotations))
            object.__setattr__(self, "_faces", cached)
        return cached

    def face_count(self) -> int:
        return len(self.faces())

    def face_with_dart(self, u: int, v: int) -> tuple[int, ...]:
        for face in self.faces():
            if (u, v) in walk_darts(face):
                return face
        raise EmbeddingError(f"no face contains dart {(u, v)}")

    def faces_with_all(self, vertices) -> list[tuple[int, ...]]:
        need = set(vertices)
        return [f for f in self.faces() if need <= set(f)]

    # -- validation --------------------------------------------------

    def check(self) -> None:
        for v, order in self.rotations.items():
            if len(order) == 0:
                raise EmbeddingError(f"isolated vertex {v}")
            if len(set(order)) != len(order):
                raise EmbeddingError(f"parallel edges at vertex {v}")
            if v in order:
                raise EmbeddingError(f"loop at vertex {v}")
            for u in order:
                if u not in self.rotations:
                    raise EmbeddingError(f"edge {v}-{u} leaves the vertex set")
                if v not in self.rotations[u]:
                    raise EmbeddingError(f"edge {v}-{u} not symmetric")
        verts = set(self.rotations)
        seen = set()
        stack = [next(iter(verts))]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(u for u in self.rotations[x] if u not in seen)
        if seen != verts:
            raise EmbeddingError("embedding is not connected")
        faces = self.faces()
        v = len(verts)
        e = len(self.edges)
        f = len(faces)
        if v - e + f != 2:
            raise EmbeddingError(
                f"Euler check failed: v={v} e={e} f={f} gives {v - e + f}"
            )
        if canonical_walk(self.outer_face) not in faces:
            raise EmbeddingError(f"outer walk {self.outer_face} is not a face")

    # -- orientation -------------------------------------------------

    def mirror(self) -> "RotationEmbedding":
        """The reflected drawing: all rotations reversed.

        The outer region stays outer; its clockwise walk is the old walk
        read backwards.
        """
        rot = {v: tuple(reversed(order)) for v, order in self.rotations.items()}
        outer = canonical_walk(tuple(reversed(self.outer_face)))
        return RotationEmbedding(rot, outer)

    def with_outer(self, face: tuple[int, ...]) -> "RotationEmbedding":
        """Designate a traced face as the outer face.

        This only re-roots the drawing on the sphere, so the rotations are
        unchanged.
        """
        face = canonical_walk(tuple(face))
        if face not in self.faces():
            raise EmbeddingError(f"{face} is not a face of this embedding")
        return RotationEmbedding(self.rotations, face, self.faces())


# -- surgery ---------------------------------------------------------


def _pick_outer(
    rotations: dict[int, tuple[int, ...]], old_outer: tuple[int, ...]
) -> tuple[int, ...]:
    """Outer face for a modified rotation system.

    Uses the first dart of the old outer walk that survived the surgery;
    the face now containing it bounds the (possibly merged) outer region.
    """
    faces = trace_faces(rotations)
    dart_to_face = {}
    for face in faces:
        for d in walk_darts(face):
            dart_to_face[d] = face
    for d in walk_darts(old_outer):
        if d in dart_to_face:
            return dart_to_face[d]
    raise EmbeddingError("no dart of the old outer walk survived")


def delete_edge(emb: RotationEmbedding, u: int, v: int) -> RotationEmbedding:
    if not emb.has_edge(u, v):
        raise EmbeddingError(f"no edge {u}-{v} to delete")
    rot = dict(emb.rotations)
    rot[u] = tuple(x for x in rot[u] if x != v)
    rot[v] = tuple(x for x in rot[v] if x != u)
    return RotationEmbedding(rot, _pick_outer(rot, emb.outer_face))


def delete_vertex(emb: RotationEmbedding, x: int) -> RotationEmbedding:
    if x not in emb.rotations:
        raise EmbeddingError(f"no vertex {x} to delete")
    rot = {
        v: tuple(y for y in order if y != x)
        for v, order in emb.rotations.items()
        if v != x
    }
    return RotationEmbedding(rot, _pick_outer(rot, emb.outer_face))


def restrict(
    emb: RotationEmbedding,
    vertices,
    edges=None,
) -> RotationEmbedding:
    """Sub-embedding induced on ``vertices`` (optionally only ``edges``).

    Rotation orders are inherited.  The outer face is re-derived from the
    old outer walk when possible; callers that need a specific face should
    follow up with ``with_outer``.
    """
    keep_v = set(vertices)
    keep_e = None if edges is None else {norm_edge(*e) for e in edges}
    rot = {}
    for v in emb.rotations:
        if v not in keep_v:
            continue
        order = tuple(
            u
            for u in emb.rotations[v]
            if u in keep_v and (keep_e is None or norm_edge(v, u) in keep_e)
        )
        rot[v] = order
    try:
        outer = _pick_outer(rot, emb.outer_face)
    except EmbeddingError:
        outer = trace_faces(rot)[0]
    return RotationEmbedding(rot, outer)


def smooth_degree2(emb: RotationEmbedding, z: int) -> RotationEmbedding:
    """Remove a degree-2 vertex, joining its two neighbors by an edge.

    If the neighbors are already adjacent the vertex is simply deleted,
    reusing the existing edge instead of creating a parallel one.
    """
    if emb.degree(z) != 2:
        raise EmbeddingError(f"vertex {z} has degree {emb.degree(z)}, not 2")
    a, b = emb.rotations[z]
    if emb.has_edge(a, b):
        return delete_vertex(emb, z)
    rot = dict(emb.rotations)
    rot[a] = tuple(b if x == z else x for x in rot[a])
    rot[b] = tuple(a if x == z else x for x in rot[b])
    del rot[z]
    return RotationEmbedding(rot, _pick_outer(rot, emb.outer_face))


def _insert_after(order: tuple[int, ...], anchor: int, new: int) -> tuple[int, ...]:
    i = order.index(anchor)
    return order[: i + 1] + (new,) + order[i + 1 :]


def insert_edge_in_face(
    emb: RotationEmbedding, x: int, y: int, face: tuple[int, ...]
) -> list[RotationEmbedding]:
    """All embeddings obtained by drawing a new edge x-y inside ``face``.

    For a simple face walk there is exactly one result.  When the walk
    visits x or y several times (cut vertices on the face) each corner pair
    gives a candidate; callers pick the one whose traced faces match what
    the construction requires.
    """
    if x == y:
        raise EmbeddingError("cannot insert a loop")
    if emb.has_edge(x, y):
        raise EmbeddingError(f"edge {x}-{y} already present")
    face = canonical_walk(tuple(face))
    if face not in emb.faces():
        raise EmbeddingError(f"{face} is not a face")
    k = len(face)
    corners_x = [i for i in range(k) if face[i] == x]
    corners_y = [i for i in range(k) if face[i] == y]
    if not corners_x or not corners_y:
        raise EmbeddingError(f"face does not contain both {x} and {y}")
    out = []
    for i in corners_x:
        for j in corners_y:
            rot = dict(emb.rotations)
            # Corner at position i sits between arriving dart
            # (face[i-1] -> x) and leaving dart (x -> face[i+1]); the new
            # neighbor goes right after the arrival in clockwise order.
            rot[x] = _insert_after(rot[x], face[i - 1], y)
            rot[y] = _insert_after(rot[y], face[j - 1], x)
            try:
                cand = RotationEmbedding(rot, _pick_outer(rot, emb.outer_face))
                cand.check()
            except (EmbeddingError, ValueError):
                continue
            out.append(cand)
    if not out:
        raise EmbeddingError(f"no valid corner pair to insert {x}-{y}")
    return out


def add_edge_on_outer(
    emb: RotationEmbedding, x: int, y: int
) -> RotationEmbedding:
    """Draw edge x-y through the outer region, or reuse an existing edge.

    After insertion the old outer face is split in two; the caller chooses
    the new outer face with ``with_outer``.
    """
    if emb.has_edge(x, y):
        return emb
    cands = insert_edge_in_face(emb, x, y, emb.outer_face)
    return cands[0]


def _contiguous_block(
    order: tuple[int, ...], members: set[int]
) -> tuple[int, int] | None:
    """Locate ``members`` as one cyclic run inside ``order``.

    Returns (start index, length) or None if the occurrences are not
    cyclically contiguous.
    """
    k = len(order)
    hits = [i for i in range(k) if order[i] in members]
    if len(hits) != len(members) or not hits:
        return None
    if len(hits) == k:
        return (0, k)
    for start in hits:
        if order[(start - 1) % k] not in members:
            run = all(order[(start + off) % k] in members for off in range(len(hits)))
            if run:
                return (start, len(hits))
    return None


def contract_piece(
    emb: RotationEmbedding,
    s: int,
    t: int,
    interior: set[int],
    marker: int,
) -> RotationEmbedding:
    """Replace the piece of a 2-separation by a length-2 path s-marker-t.

    ``interior`` is the piece minus its cut pair {s, t}.  Any direct s-t
    edge is absorbed into the piece as well, so the marker always ends up
    on the boundary walk that the piece used to occupy.  The interior must
    occupy a contiguous angular sector at both cut vertices; anything else
    means the input was not actually a 2-separation piece.
    """
    if marker in emb.rotations:
        raise EmbeddingError(f"marker {marker} collides with a vertex")
    if s in interior or t in interior:
        raise EmbeddingError("cut vertex listed as interior")
    rot = {
        v: order for v, order in emb.rotations.items() if v not in interior
    }
    for cut, other in ((s, t), (t, s)):
        gone = {z for z in rot[cut] if z in interior}
        if other in rot[cut]:
            gone.add(other)  # absorb the direct s-t edge, if present
        if not gone:
            raise EmbeddingError(f"cut vertex {cut} does not touch the piece")
        if _contiguous_block(rot[cut], gone) is None:
            raise EmbeddingError(
                f"piece interior is not a contiguous sector at {cut}"
            )
        # Replace the whole block by the marker, keeping its position.
        rebuilt = []
        placed = False
        for u in rot[cut]:
            if u in gone:
                if not placed:
                    rebuilt.append(marker)
                    placed = True
                continue
            rebuilt.append(u)
        rot[cut] = tuple(rebuilt)
    rot[marker] = (s, t)
    return RotationEmbedding(rot, _pick_outer(rot, emb.outer_face))
