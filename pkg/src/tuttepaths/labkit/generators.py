"""Generators for the embedded test corpus.

Every generator returns a ``RotationEmbedding`` with hand-derived clockwise
rotations; the test-suite re-checks each one via face tracing and Euler's
formula, so the constructions here carry no hidden trust.
"""

from __future__ import annotations

from ..planar_core import (
    Graph,
    RotationEmbedding,
    canonical_walk,
    components,
    trace_faces,
)


def cycle_graph(k: int) -> RotationEmbedding:
    """The cycle on vertices 0..k-1 with outer walk 0,1,...,k-1 clockwise."""
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    rot = {i: ((i + 1) % k, (i - 1) % k) for i in range(k)}
    return RotationEmbedding.build(rot, tuple(range(k)))


def triangle() -> RotationEmbedding:
    return cycle_graph(3)


def c4() -> RotationEmbedding:
    return cycle_graph(4)


def c5() -> RotationEmbedding:
    return cycle_graph(5)


def k4() -> RotationEmbedding:
    """K4: outer triangle 0,1,2 clockwise with hub 3 inside."""
    rot = {
        0: (1, 3, 2),
        1: (0, 2, 3),
        2: (1, 0, 3),
        3: (0, 1, 2),
    }
    return RotationEmbedding.build(rot, (0, 1, 2))


def wheel(k: int) -> RotationEmbedding:
    """Wheel with rim 0..k-1 (outer, clockwise) and hub k inside."""
    if k < 3:
        raise ValueError("wheel rim needs at least 3 vertices")
    rot = {}
    for i in range(k):
        rot[i] = ((i + 1) % k, k, (i - 1) % k)
    rot[k] = tuple(range(k))
    return RotationEmbedding.build(rot, tuple(range(k)))


def double_wheel(k: int) -> RotationEmbedding:
    """A rim cycle 0..k-1 with an inner hub k and an outer hub k+1.

    ``double_wheel(4)`` is the octahedron.  For k >= 4 these are
    essentially 4-connected; the rim vertices have degree 4 and the hubs
    degree k.
    """
    if k < 3:
        raise ValueError("double wheel rim needs at least 3 vertices")
    inner, outer_hub = k, k + 1
    rot = {}
    for i in range(k):
        rot[i] = (outer_hub, (i + 1) % k, inner, (i - 1) % k)
    rot[inner] = tuple(range(k))
    rot[outer_hub] = tuple(reversed(range(k)))
    return RotationEmbedding.build(rot, (0, 1, outer_hub))


def octahedron() -> RotationEmbedding:
    return double_wheel(4)


def icosahedron() -> RotationEmbedding:
    """Icosahedron as a pentagonal antiprism with two caps.

    Vertex 0 caps the upper pentagon 1..5, vertex 11 caps the lower
    pentagon 6..10; lower vertex 6+i sits between upper vertices 1+i and
    1+((i+1) mod 5).
    """
    t, b = 0, 11

    def u(i: int) -> int:
        return 1 + i % 5

    def low(i: int) -> int:
        return 6 + i % 5

    rot = {t: tuple(u(i) for i in range(5))}
    for i in range(5):
        rot[u(i)] = (u(i + 1), t, u(i - 1), low(i - 1), low(i))
        rot[low(i)] = (u(i + 1), u(i), low(i - 1), b, low(i + 1))
    rot[b] = tuple(low(4 - i) for i in range(5))
    return RotationEmbedding.build(rot, (t, u(1), u(0)))


def glued_squares() -> RotationEmbedding:
    """Two squares glued along the interior edge 0-1; outer hexagon.

    A circuit graph that is not essentially 4-connected: the shared pair
    {0, 1} cuts off two 2-vertex pieces.
    """
    rot = {
        0: (2, 4, 1),
        1: (3, 0, 5),
        2: (0, 3),
        3: (2, 1),
        4: (0, 5),
        5: (4, 1),
    }
    return RotationEmbedding.build(rot, (2, 0, 4, 5, 1, 3))


def glued_triangles() -> RotationEmbedding:
    """Two triangles glued along the interior edge 0-1; outer 4-cycle."""
    rot = {
        0: (2, 3, 1),
        1: (2, 0, 3),
        2: (0, 1),
        3: (0, 1),
    }
    return RotationEmbedding.build(rot, (2, 0, 3, 1))


def c6_pendant_path() -> RotationEmbedding:
    """A hexagon with an interior 2-vertex path hung on adjacent vertices.

    Fails circuit-graph validation: removing {0, 1} strands {6, 7} with no
    outer-cycle vertex.
    """
    rot = {
        0: (1, 6, 5),
        1: (2, 7, 0),
        2: (3, 1),
        3: (4, 2),
        4: (5, 3),
        5: (0, 4),
        6: (0, 7),
        7: (6, 1),
    }
    return RotationEmbedding.build(rot, (0, 1, 2, 3, 4, 5))


# -- face stacking ----------------------------------------------------


def stack_all_faces(emb: RotationEmbedding) -> RotationEmbedding:
    """Stack a fresh vertex into every face, the outer face included.

    Each new vertex is joined to all vertices of its face walk.  The new
    outer face is the triangle formed by the first edge of the old outer
    walk and the vertex stacked into the old outer region.
    """
    faces = emb.faces()
    fresh = max(emb.rotations) + 1
    assignment = {}
    for face in faces:
        if len(set(face)) != len(face):
            raise ValueError("cannot stack a face that repeats a vertex")
        assignment[face] = fresh
        fresh += 1
    rot = {v: list(order) for v, order in emb.rotations.items()}
    for face, z in assignment.items():
        k = len(face)
        for i in range(k):
            v = face[i]
            arrival = face[i - 1]
            at = rot[v].index(arrival)
            rot[v].insert(at + 1, z)
        rot[z] = list(reversed(face))
    new_rot = {v: tuple(order) for v, order in rot.items()}
    old_outer = canonical_walk(emb.outer_face)
    z_outer = assignment[old_outer]
    w0, w1 = old_outer[0], old_outer[1]
    target = None
    for face in trace_faces(new_rot):
        if set(face) == {w0, w1, z_outer}:
            target = face
            break
    if target is None:
        raise ValueError("stacking lost the outer triangle")
    return RotationEmbedding.build(new_rot, target)


def iterated_triangulation(depth: int) -> RotationEmbedding:
    """Stack every face of a triangle, repeatedly.

    Depth 0 is the bare triangle; depth 1 has 5 vertices, 9 edges and 6
    faces; depth 2 has 11 vertices, 27 edges and 18 faces.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    emb = triangle()
    for _ in range(depth):
        emb = stack_all_faces(emb)
    return emb


def is_4_connected(g: Graph) -> bool:
    """Brute-force 4-connectivity: n >= 5 and no cut set of size <= 3."""
    if g.n < 5:
        return False
    vs = g.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            for k in range(j + 1, len(vs)):
                if len(components(g, removed=(vs[i], vs[j], vs[k]))) >= 2:
                    return False
    return True


def stacked_tightness(base: RotationEmbedding) -> RotationEmbedding:
    """Stack every face of a 4-connected triangulation once.

    On a 4-connected triangulation with k vertices this produces an
    essentially 4-connected graph on 3k - 4 vertices whose longest cycle
    has exactly 2k vertices, which makes the length guarantee of the long
    cycle pipeline tight.
    """
    g = base.to_graph()
    if not is_4_connected(g):
        raise ValueError("base graph is not 4-connected")
    for face in base.faces():
        if len(face) != 3:
            raise ValueError("base graph is not a triangulation")
    return stack_all_faces(base)


def stacked_octahedron() -> RotationEmbedding:
    return stacked_tightness(octahedron())


def stacked_icosahedron() -> RotationEmbedding:
    return stacked_tightness(icosahedron())


NAMED: dict[str, callable] = {
    "triangle": triangle,
    "c4": c4,
    "c5": c5,
    "k4": k4,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "glued-squares": glued_squares,
    "glued-triangles": glued_triangles,
    "c6-pendant-path": c6_pendant_path,
    "stacked-octahedron": stacked_octahedron,
    "stacked-icosahedron": stacked_icosahedron,
}

SIZED: dict[str, callable] = {
    "cycle": cycle_graph,
    "wheel": wheel,
    "double-wheel": double_wheel,
    "iterated-triangulation": iterated_triangulation,
}


def generate(name: str, size: int | None = None) -> RotationEmbedding:
    """Look up a generator by CLI name."""
    if name in NAMED:
        if size is not None:
            raise ValueError(f"generator {name!r} takes no size")
        return NAMED[name]()
    if name in SIZED:
        if size is None:
            raise ValueError(f"generator {name!r} needs --size")
        return SIZED[name](size)
    known = sorted(NAMED) + sorted(SIZED)
    raise ValueError(f"unknown generator {name!r}; known: {', '.join(known)}")
