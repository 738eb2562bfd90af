"""Polytope vertex tests for concave cocirculations.

A concave cocirculation is a vertex of the polyhedron with pinned edge set
F exactly when the equality system active at it (face circuit sums, the
tight rhombus equalities, and the pins) determines it uniquely.  Within a
flatspace all parallel edges are equal, so the unknowns collapse to one
value per (tile, direction class); tiles sharing a side share that side's
class value.  The reduced system is solved by exact elimination over the
rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import grid as gr
from .errors import FNotSubsetOfEdges
from .grid import Cocirculation, ConvexGrid, Edge, Tiling
from .honeycomb import HEdge, Honeycomb, dval, t_of

Row = tuple[dict[int, Fraction], Fraction]


def eliminate(rows: Iterable[Row], nvars: int) -> tuple[int, Optional[list[Fraction]]]:
    """Exact Gaussian elimination; returns (rank, solution or None).

    The solution is returned only when it is unique; an inconsistent
    system raises ValueError.
    """
    pivots: dict[int, tuple[dict[int, Fraction], Fraction]] = {}
    for coeffs, rhs in rows:
        coeffs = dict(coeffs)
        while coeffs:
            var = min(coeffs)
            if var not in pivots:
                inv = 1 / coeffs[var]
                coeffs = {k: v * inv for k, v in coeffs.items()}
                pivots[var] = (coeffs, rhs * inv)
                break
            pc, pr = pivots[var]
            factor = coeffs.pop(var)
            for k, v in pc.items():
                if k != var:
                    coeffs[k] = coeffs.get(k, Fraction(0)) + (-factor) * v
                    if coeffs[k] == 0:
                        del coeffs[k]
            rhs = rhs - factor * pr
        else:
            if rhs != 0:
                raise ValueError("inconsistent linear system")
    rank = len(pivots)
    if rank < nvars:
        return rank, None
    sol: list[Optional[Fraction]] = [None] * nvars
    for var in sorted(pivots, reverse=True):
        coeffs, rhs = pivots[var]
        acc = rhs
        for k, v in coeffs.items():
            if k != var:
                acc -= v * sol[k]
        sol[var] = acc
    return rank, sol  # type: ignore[return-value]


class _TileVars:
    """Union-find over (tile, class) slots with the shared-side merges."""

    def __init__(self, g: ConvexGrid, tiles: Tiling):
        self.g = g
        self.tiles = tiles
        self.tile_of = {t: i for i, ts in enumerate(tiles) for t in ts}
        self._parent = list(range(3 * len(tiles)))
        for diag, t1, t2 in gr.little_rhombi(g):
            i, j = self.tile_of[t1], self.tile_of[t2]
            if i != j:
                self._union(self._slot(i, diag[2]), self._slot(j, diag[2]))
        roots = sorted({self._find(k) for k in range(len(self._parent))})
        self.index = {r: n for n, r in enumerate(roots)}
        self.nvars = len(roots)

    @staticmethod
    def _slot(tile: int, cls: int) -> int:
        return 3 * tile + cls - 1

    def _find(self, k: int) -> int:
        while self._parent[k] != k:
            self._parent[k] = self._parent[self._parent[k]]
            k = self._parent[k]
        return k

    def _union(self, a: int, b: int) -> None:
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self._parent[ra] = rb

    def var(self, tile: int, cls: int) -> int:
        return self.index[self._find(self._slot(tile, cls))]

    def var_of_edge(self, e: Edge) -> int:
        face = self.g.edge_faces[e][0]
        return self.var(self.tile_of[face], e[2])

    def sum_rows(self) -> list[Row]:
        rows = []
        seen = set()
        one = Fraction(1)
        for i in range(len(self.tiles)):
            key = (self.var(i, 1), self.var(i, 2), self.var(i, 3))
            if key not in seen:
                seen.add(key)
                rows.append(({key[0]: one, key[1]: one, key[2]: one}, Fraction(0)))
        return rows


def _pin_rows(tv: _TileVars, pins: Mapping[Edge, Fraction]) -> list[Row]:
    return [({tv.var_of_edge(e): Fraction(1)}, Fraction(v)) for e, v in sorted(pins.items())]


def vertex_degrees_of_freedom(
    g: ConvexGrid, h: Cocirculation, fixed: Iterable[Edge]
) -> int:
    """Dimension of the solution space of the active equality system."""
    fixed = set(fixed)
    if not fixed <= g.edges:
        raise FNotSubsetOfEdges(sorted(fixed - g.edges)[:3])
    tiles = gr.tiling_of(g, h)  # raises NotConcave
    tv = _TileVars(g, tiles)
    rows = tv.sum_rows() + _pin_rows(tv, {e: h[e] for e in fixed})
    rank, _ = eliminate(rows, tv.nvars)
    return tv.nvars - rank


def is_vertex(g: ConvexGrid, h: Cocirculation, fixed: Iterable[Edge]) -> bool:
    """Whether ``h`` is a vertex of the concave cocirculations that agree
    with it on ``fixed``."""
    return vertex_degrees_of_freedom(g, h, fixed) == 0


def solve_flat_extension(
    g: ConvexGrid, tiles: Tiling, pins: Mapping[Edge, Fraction]
) -> Cocirculation:
    """The unique cocirculation flat on every tile with the given pins.

    Raises ValueError when the pins do not determine it uniquely or are
    inconsistent.
    """
    tv = _TileVars(g, tiles)
    rows = tv.sum_rows() + _pin_rows(tv, pins)
    rank, sol = eliminate(rows, tv.nvars)
    if sol is None:
        raise ValueError(f"pins leave {tv.nvars - rank} degrees of freedom")
    return {e: sol[tv.var_of_edge(e)] for e in g.edges}


def maximal_lines(h: Honeycomb) -> list[tuple[HEdge, ...]]:
    """Maximal stretches of collinear edges with no coverage gap."""
    per: dict[tuple[int, Fraction], list[HEdge]] = {}
    for e in h.edges:
        per.setdefault((e.cls, e.c), []).append(e)
    out = []
    for key in sorted(per):
        es = sorted(per[key], key=lambda e: (e.lo is not None, e.lo))
        run = [es[0]]
        for e in es[1:]:
            if run[-1].hi is not None and e.lo == run[-1].hi:
                run.append(e)
            else:
                out.append(tuple(run))
                run = [e]
        out.append(tuple(run))
    return out


def condition_c_extreme(h: Honeycomb, marked: Iterable[HEdge]) -> bool:
    """Sufficient two-lines test: every vertex lies on two maximal lines
    that each contain a marked edge."""
    marked = set(marked)
    lines = maximal_lines(h)
    good = []
    for run in lines:
        if any(e in marked for e in run):
            cls, c = run[0].cls, run[0].c
            lo, hi = run[0].lo, run[-1].hi
            good.append((cls, c, lo, hi))
    for v in h.vertices:
        n = 0
        for cls, c, lo, hi in good:
            if dval(v, cls) != c:
                continue
            t = t_of(cls, v)
            if (lo is None or lo <= t) and (hi is None or t <= hi):
                n += 1
        if n < 2:
            return False
    return True
