"""Rounding a concave cocirculation to an integer one.

The loop works on the dual honeycomb: while any nonintegral content
remains, find a legal path and deform it rightward (reversing a cycle
when needed).  The potential below drops by at least one per step and is
bounded, so the loop terminates after at most
``beta0 + delta0 + |E(G)|`` deformations.  Boundary edges with integer
values and edges of all-integer faces are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import grid as gr
from .deform import deform
from .duality import grid_to_honeycomb, honeycomb_to_grid
from .grid import Cocirculation, ConvexGrid
from .honeycomb import Honeycomb, excess, is_integral_point, nonintegral_sets
from .paths import find_legal_path


@dataclass(frozen=True)
class Potential:
    nonintegral_boundary: int  # weight of nonintegral semiinfinite edges
    nonintegral_excess: int  # total excess over nonintegral vertices
    integral_incident: int  # weight of edges touching integral vertices

    @property
    def value(self) -> int:
        return self.nonintegral_boundary + self.nonintegral_excess - self.integral_incident

    @property
    def settled(self) -> bool:
        return self.nonintegral_boundary == 0 and self.nonintegral_excess == 0


def potential(h: Honeycomb) -> Potential:
    vs, _ = nonintegral_sets(h)
    beta = sum(e.weight for e in h.boundary if e.nonintegral)
    delta = sum(excess(h, v) for v in vs)
    intverts = frozenset(v for v in h.vertices if is_integral_point(v))
    omega = sum(e.weight for e in h.edges if any(v in intverts for v in e.ends()))
    return Potential(beta, delta, omega)


@dataclass(frozen=True)
class TraceStep:
    eps: Fraction
    kinds: tuple[str, ...]
    cycle: bool
    before: Potential
    after: Potential


def dual_grid_edge_count(h: Honeycomb) -> int:
    """|E| of the grid determined by the boundary flows; this bounds the
    integral-incident weight from above."""
    from .duality import HEX_ORDER
    from .honeycomb import boundary_partition

    part, _ = boundary_partition(h)
    corner = (0, 0)
    corners = [corner]
    perimeter = 0
    for slot, (da, db) in HEX_ORDER:
        n = sum(e.weight for e in part[slot])
        perimeter += n
        corner = (corner[0] + n * da, corner[1] + n * db)
        corners.append(corner)
    assert corner == (0, 0)
    area2 = sum(
        a1 * b2 - a2 * b1
        for (a1, b1), (a2, b2) in zip(corners, corners[1:])
    )
    triangles = area2  # lattice shoelace equals the little-triangle count
    return (3 * triangles + perimeter) // 2


def integralize_honeycomb(h: Honeycomb) -> tuple[Honeycomb, list[TraceStep]]:
    pot = potential(h)
    budget = pot.nonintegral_boundary + pot.nonintegral_excess + dual_grid_edge_count(h)
    trace: list[TraceStep] = []
    while not pot.settled:
        path = find_legal_path(h)
        h2, ev = deform(h, path)
        pot2 = potential(h2)
        assert pot2.value < pot.value, "potential failed to decrease"
        assert pot2.nonintegral_boundary <= pot.nonintegral_boundary
        assert pot2.nonintegral_excess <= pot.nonintegral_excess
        assert pot2.integral_incident >= pot.integral_incident
        trace.append(TraceStep(ev.eps, ev.kinds, path.is_cycle, pot, pot2))
        h, pot = h2, pot2
        assert len(trace) <= budget, "iteration budget exceeded"
    return h, trace


def integralize(
    g: ConvexGrid, h: Cocirculation
) -> tuple[Cocirculation, list[TraceStep]]:
    """Integer concave cocirculation agreeing with ``h`` on integer
    boundary edges and on edges of all-integer faces."""
    o_set, i_set = gr.integer_edge_sets(g, h)
    hc = grid_to_honeycomb(g, h)  # raises NotConcave
    hc2, trace = integralize_honeycomb(hc)
    g2, vals = honeycomb_to_grid(hc2)
    da, db = g.anchor_offset()
    assert g.translate(da, db) == g2, "grid changed during rounding"
    out = {(a, b, d): vals[(a + da, b + db, d)] for (a, b, d) in g.edges}
    assert all(v.denominator == 1 for v in out.values())
    assert gr.is_concave(g, out)
    for e in o_set | i_set:
        assert out[e] == h[e], f"preserved edge {e} changed"
    return out, trace


def iteration_bound_check(
    g: ConvexGrid, trace: list[TraceStep], initial: Potential
) -> bool:
    """Audit a recorded run: monotone parts and the linear step budget."""
    if not trace:
        return True
    if trace[0].before != initial:
        return False
    pot = initial
    for step in trace:
        if step.before != pot:
            return False
        nxt = step.after
        if not (
            nxt.value < pot.value
            and nxt.nonintegral_boundary <= pot.nonintegral_boundary
            and nxt.nonintegral_excess <= pot.nonintegral_excess
            and nxt.integral_incident >= pot.integral_incident
        ):
            return False
        pot = nxt
    bound = initial.nonintegral_boundary + initial.nonintegral_excess + len(g.edges)
    return len(trace) <= bound
