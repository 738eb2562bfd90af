"""Convex triangular grids and exact-rational cocirculations.

Lattice conventions: a grid point ``(a, b)`` is the plane point
``a*xi1 + b*xi2`` for the fixed generators ``xi1 = (1, 0)``,
``xi2 = (-1, sqrt(3))/2``, ``xi3 = (-1, -sqrt(3))/2`` (``xi1+xi2+xi3 = 0``).
In lattice coordinates a unit step along ``xi1`` is ``(+1, 0)``, along
``xi2`` is ``(0, +1)`` and along ``xi3`` is ``(-1, -1)``.  Cross products of
lattice vectors have the same sign as in the plane, so all orientation
tests below are exact integer arithmetic.

An edge is ``(a, b, d)``: tail ``(a, b)``, direction class ``d`` in
``{1, 2, 3}``.  A little triangle is ``(up, a, b)`` where the base point is
the tail of the triangle's direction-1 edge:

* ``up(a, b)`` has vertices ``(a,b), (a+1,b), (a+1,b+1)``;
* ``down(a, b)`` has vertices ``(a,b), (a+1,b), (a,b-1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import NotACocirculation, NotConcave, NotConnected, NotConvex

Point = tuple[int, int]
Edge = tuple[int, int, int]
Triangle = tuple[bool, int, int]
Cocirculation = dict[Edge, Fraction]
Tiling = tuple[frozenset[Triangle], ...]

# Lattice coordinates of the three generators.
DIRS: dict[int, Point] = {1: (1, 0), 2: (0, 1), 3: (-1, -1)}


def edge_tail(e: Edge) -> Point:
    return (e[0], e[1])


def edge_head(e: Edge) -> Point:
    da, db = DIRS[e[2]]
    return (e[0] + da, e[1] + db)


def triangle_vertices(t: Triangle) -> tuple[Point, Point, Point]:
    up, a, b = t
    if up:
        return ((a, b), (a + 1, b), (a + 1, b + 1))
    return ((a, b), (a + 1, b), (a, b - 1))


def triangle_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    """The directed 3-circuit of a face, one edge per direction class."""
    up, a, b = t
    if up:
        return ((a, b, 1), (a + 1, b, 2), (a + 1, b + 1, 3))
    return ((a, b, 1), (a, b - 1, 2), (a + 1, b, 3))


def triangle_edge(t: Triangle, cls: int) -> Edge:
    return triangle_edges(t)[cls - 1]


def _cross(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Side:
    """Maximal straight boundary run, walked anticlockwise.

    ``sign`` is '+' when the walk follows +xi_cls; the outward normal then
    points in the (cls, sign) ray direction.
    """

    cls: int
    sign: str
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ConvexGrid:
    triangles: frozenset[Triangle]

    @staticmethod
    def of(triangles: Iterable[Triangle]) -> "ConvexGrid":
        return ConvexGrid(frozenset(triangles))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        return frozenset(e for t in self.triangles for e in triangle_edges(t))

    @cached_property
    def edge_faces(self) -> dict[Edge, tuple[Triangle, ...]]:
        faces: dict[Edge, list[Triangle]] = {}
        for t in sorted(self.triangles):
            for e in triangle_edges(t):
                faces.setdefault(e, []).append(t)
        return {e: tuple(ts) for e, ts in faces.items()}

    @cached_property
    def boundary_edges(self) -> frozenset[Edge]:
        return frozenset(e for e, ts in self.edge_faces.items() if len(ts) == 1)

    @cached_property
    def vertices(self) -> frozenset[Point]:
        return frozenset(v for t in self.triangles for v in triangle_vertices(t))

    @cached_property
    def boundary_walk(self) -> tuple[Point, ...]:
        """Boundary corners+lattice points in anticlockwise order.

        Raises NotConvex when the boundary is not a single simple cycle
        (hole or pinch point).
        """
        nbr: dict[Point, list[Point]] = {}
        for e in self.boundary_edges:
            p, q = edge_tail(e), edge_head(e)
            nbr.setdefault(p, []).append(q)
            nbr.setdefault(q, []).append(p)
        for p, qs in nbr.items():
            if len(qs) != 2:
                raise NotConvex(f"boundary pinches at {p}")
        start = min(nbr)
        walk = [start, sorted(nbr[start])[0]]
        while True:
            a, b = walk[-2], walk[-1]
            nxt = [q for q in nbr[b] if q != a]
            if len(nxt) != 1:
                raise NotConvex(f"boundary pinches at {b}")
            if nxt[0] == start:
                break
            walk.append(nxt[0])
        if len(walk) != len(nbr):
            raise NotConvex("boundary is not a single cycle")
        area2 = sum(_cross(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk)))
        if area2 < 0:
            walk = [walk[0]] + walk[:0:-1]
        return tuple(walk)

    @cached_property
    def sides(self) -> tuple[Side, ...]:
        """Maximal straight boundary runs in anticlockwise order."""
        walk = self.boundary_walk
        n = len(walk)
        steps = [_sub(walk[(i + 1) % n], walk[i]) for i in range(n)]
        # Rotate so a corner sits at position 0.
        k = next(i for i in range(n) if steps[i - 1] != steps[i])
        walk = walk[k:] + walk[:k]
        steps = steps[k:] + steps[:k]
        sides: list[Side] = []
        run: list[Edge] = []

        def flush(step: Point) -> None:
            for d, v in DIRS.items():
                if step == v:
                    sides.append(Side(d, "+", tuple(run)))
                    return
                if step == (-v[0], -v[1]):
                    sides.append(Side(d, "-", tuple(run)))
                    return
            raise NotConvex(f"boundary step {step} is not a lattice direction")

        for i in range(n):
            p, q = walk[i], walk[(i + 1) % n]
            step = _sub(q, p)
            e = (p[0], p[1], 0)
            for d, v in DIRS.items():
                if step == v:
                    e = (p[0], p[1], d)
                elif step == (-v[0], -v[1]):
                    e = (q[0], q[1], d)
            run.append(e)
            if steps[(i + 1) % n] != step:
                flush(step)
                run = []
        return tuple(sides)

    @cached_property
    def size(self) -> int:
        return max(len(s) for s in self.sides)

    def side(self, cls: int, sign: str) -> Side:
        for s in self.sides:
            if s.cls == cls and s.sign == sign:
                return s
        raise KeyError((cls, sign))

    def translate(self, da: int, db: int) -> "ConvexGrid":
        return ConvexGrid.of((up, a + da, b + db) for up, a, b in self.triangles)

    def anchor_offset(self) -> Point:
        """Translation taking the lexicographically least vertex to (0, 0)."""
        a0, b0 = min(self.vertices)
        return (-a0, -b0)


def validate_grid(g: ConvexGrid) -> None:
    """Check the convex-grid invariants, raising on the first violation.

    The face encoding makes dangling edges impossible; the remaining
    failure modes are disconnection, holes/pinches and reflex boundary
    turns.
    """
    if not g.triangles:
        raise NotConvex("empty triangle set")
    tris = sorted(g.triangles)
    seen = {tris[0]}
    queue = [tris[0]]
    while queue:
        t = queue.pop()
        for e in triangle_edges(t):
            for t2 in g.edge_faces[e]:
                if t2 not in seen:
                    seen.add(t2)
                    queue.append(t2)
    if len(seen) != len(tris):
        raise NotConnected(f"{len(tris) - len(seen)} faces unreachable")
    walk = g.boundary_walk  # raises NotConvex on holes/pinches
    n = len(walk)
    for i in range(n):
        u = _sub(walk[(i + 1) % n], walk[i])
        v = _sub(walk[(i + 2) % n], walk[(i + 1) % n])
        c = _cross(u, v)
        if c < 0:
            raise NotConvex(f"reflex turn at {walk[(i + 1) % n]}")
        if c == 0 and (u[0] * v[0] + u[1] * v[1]) < 0:
            raise NotConvex(f"boundary reverses at {walk[(i + 1) % n]}")
    # A convex region's triangle count equals the polygon's lattice area,
    # so any missing interior face has already surfaced as a hole above.


def fill_convex_polygon(corners: list[Point]) -> frozenset[Triangle]:
    """All little triangles inside a convex anticlockwise lattice polygon."""
    pts = [corners[i] for i in range(len(corners)) if corners[i] != corners[i - 1]]
    if len(pts) < 3:
        return frozenset()

    def inside(p: Point) -> bool:
        return all(
            _cross(_sub(pts[(i + 1) % len(pts)], pts[i]), _sub(p, pts[i])) >= 0
            for i in range(len(pts))
        )

    amin = min(a for a, _ in pts) - 1
    amax = max(a for a, _ in pts) + 1
    bmin = min(b for _, b in pts) - 1
    bmax = max(b for _, b in pts) + 1
    out = set()
    for a in range(amin, amax + 1):
        for b in range(bmin, bmax + 1):
            for t in ((True, a, b), (False, a, b)):
                if all(inside(v) for v in triangle_vertices(t)):
                    out.add(t)
    return frozenset(out)


def three_side_grid(n: int) -> ConvexGrid:
    """The 3-side grid of size n spanning the big up-triangle."""
    if n < 1:
        raise ValueError("size must be positive")
    return ConvexGrid(fill_convex_polygon([(0, 0), (n, 0), (n, n)]))


def check_cocirculation(g: ConvexGrid, h: Mapping[Edge, Fraction]) -> None:
    for t in g.triangles:
        try:
            s = sum(h[e] for e in triangle_edges(t))
        except KeyError as missing:
            raise NotACocirculation(f"missing value on edge {missing}") from None
        if s != 0:
            raise NotACocirculation(f"circuit sum {s} on face {t}")


def little_rhombi(g: ConvexGrid) -> Iterator[tuple[Edge, Triangle, Triangle]]:
    """Interior edges with their two faces; each pair spans a little rhombus."""
    for e, ts in sorted(g.edge_faces.items()):
        if len(ts) == 2:
            yield e, ts[0], ts[1]


def rhombus_pairs(
    diag: Edge, t1: Triangle, t2: Triangle
) -> list[tuple[Edge, Edge]]:
    """The two parallel edge pairs of a rhombus as (dominant, other).

    The dominant edge is the one entering an obtuse rhombus vertex, i.e.
    an endpoint of the shared diagonal.
    """
    obtuse = {edge_tail(diag), edge_head(diag)}
    pairs = []
    for cls in (1, 2, 3):
        if cls == diag[2]:
            continue
        e1, e2 = triangle_edge(t1, cls), triangle_edge(t2, cls)
        in1, in2 = edge_head(e1) in obtuse, edge_head(e2) in obtuse
        assert in1 != in2, (diag, e1, e2)
        pairs.append((e1, e2) if in1 else (e2, e1))
    return pairs


def is_concave(g: ConvexGrid, h: Mapping[Edge, Fraction]) -> bool:
    """Whether every little rhombus satisfies the concavity inequality."""
    check_cocirculation(g, h)
    for diag, t1, t2 in little_rhombi(g):
        dom, other = rhombus_pairs(diag, t1, t2)[0]
        if h[dom] < h[other]:
            return False
    return True


def tiling_of(g: ConvexGrid, h: Mapping[Edge, Fraction]) -> Tiling:
    """Flatspace decomposition: faces joined across tight rhombi."""
    if not is_concave(g, h):
        raise NotConcave("tiling requested for a non-concave cocirculation")
    parent: dict[Triangle, Triangle] = {t: t for t in g.triangles}

    def find(t: Triangle) -> Triangle:
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for diag, t1, t2 in little_rhombi(g):
        dom, other = rhombus_pairs(diag, t1, t2)[0]
        if h[dom] == h[other]:
            parent[find(t1)] = find(t2)
    groups: dict[Triangle, set[Triangle]] = {}
    for t in g.triangles:
        groups.setdefault(find(t), set()).add(t)
    return tuple(sorted((frozenset(s) for s in groups.values()), key=min))


def integer_edge_sets(
    g: ConvexGrid, h: Mapping[Edge, Fraction]
) -> tuple[frozenset[Edge], frozenset[Edge]]:
    """Boundary edges with integer value; edges of all-integer faces."""
    check_cocirculation(g, h)
    o = frozenset(e for e in g.boundary_edges if h[e].denominator == 1)
    i = frozenset(
        e
        for t in g.triangles
        if all(h[x].denominator == 1 for x in triangle_edges(t))
        for e in triangle_edges(t)
    )
    return o, i


def cocirculation_from_quadratic(
    g: ConvexGrid,
    alpha: Fraction,
    beta: Fraction,
    lam: Fraction = Fraction(0),
    mu: Fraction = Fraction(0),
) -> Cocirculation:
    """Differences of ``-alpha*(2a-b)^2 - 3*beta*b^2 + lam*a + mu*b``.

    In plane coordinates this is the concave quadratic
    ``-4*alpha*x^2 - 4*beta*y^2`` plus a linear part.  Its lattice
    differences satisfy the rhombus condition iff ``alpha <= 3*beta``
    (the grid's fixed triangulation is only compatible with quadratics
    that are not too narrow along the xi1 axis).
    """

    def pot(p: Point) -> Fraction:
        a, b = p
        return -alpha * (2 * a - b) ** 2 - 3 * beta * b * b + lam * a + mu * b

    return {e: pot(edge_head(e)) - pot(edge_tail(e)) for e in g.edges}


def random_concave(g: ConvexGrid, seed: int, denom_bound: int = 12) -> Cocirculation:
    """Sample a concave cocirculation; deterministic in ``seed``.

    Value denominators divide ``denom_bound``.
    """
    rng = random.Random(seed)
    d = max(1, denom_bound)
    na = rng.randint(1, 3 * d)
    nb = rng.randint((na + 2) // 3, 3 * d)
    alpha, beta = Fraction(na, d), Fraction(nb, d)
    lam = Fraction(rng.randint(-3 * d, 3 * d), d)
    mu = Fraction(rng.randint(-3 * d, 3 * d), d)
    h = cocirculation_from_quadratic(g, alpha, beta, lam, mu)
    assert is_concave(g, h)
    return h
