"""Weighted Xi-line systems and honeycombs in exact dual coordinates.

A point is stored as ``(d1, d2)`` with ``d3 = -d1-d2`` implied; ``d_i`` is
minus the inner product with the generator ``xi_i``.  A class-``i`` line is
perpendicular to ``xi_i`` and keeps ``d_i`` constant; position along it is
parameterised by ``t = d_{i+1}``, which increases in the ``+`` ray
direction (``xi_i`` rotated clockwise by 90 degrees).  One ``t``-unit is
the scaled edge length used throughout, so all lengths and event times
stay rational.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import NotPreHoneycomb

Pt = tuple[Fraction, Fraction]

SIGNS = ("+", "-")


def nxt(cls: int) -> int:
    return cls % 3 + 1


def prv(cls: int) -> int:
    return (cls + 1) % 3 + 1


def dval(p: Pt, cls: int) -> Fraction:
    if cls == 1:
        return p[0]
    if cls == 2:
        return p[1]
    return -p[0] - p[1]


def as_pt(d1, d2) -> Pt:
    return (Fraction(d1), Fraction(d2))


def pt3(d1, d2, d3) -> Pt:
    p = (Fraction(d1), Fraction(d2))
    assert dval(p, 3) == Fraction(d3), "dual coordinates must sum to zero"
    return p


def point_from_two(cls1: int, c1: Fraction, cls2: int, c2: Fraction) -> Pt:
    d = {cls1: c1, cls2: c2, 6 - cls1 - cls2: -c1 - c2}
    return (d[1], d[2])


def point_on(cls: int, c: Fraction, t: Fraction) -> Pt:
    """The point on the class-``cls`` line ``d_cls = c`` with ``d_nxt = t``."""
    return point_from_two(cls, c, nxt(cls), t)


def t_of(cls: int, p: Pt) -> Fraction:
    return dval(p, nxt(cls))


def is_integral_point(p: Pt) -> bool:
    return p[0].denominator == 1 and p[1].denominator == 1


def _lo_key(x: Optional[Fraction]):
    return (0, 0) if x is None else (1, x)


def _hi_key(x: Optional[Fraction]):
    return (1, 0) if x is None else (0, x)


@dataclass(frozen=True)
class HLine:
    """A class-``cls`` line with span ``[lo, hi]`` in the ``t`` parameter.

    ``lo=None`` / ``hi=None`` mean infinite in that direction; a ray with
    ``hi=None`` is the ``+`` ray of its finite end.
    """

    cls: int
    c: Fraction
    lo: Optional[Fraction]
    hi: Optional[Fraction]

    @property
    def is_finite(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def is_ray(self) -> bool:
        return (self.lo is None) != (self.hi is None)

    @property
    def is_full(self) -> bool:
        return self.lo is None and self.hi is None

    @property
    def ray_sign(self) -> str:
        assert self.is_ray
        return "+" if self.hi is None else "-"

    def ends(self) -> tuple[Pt, ...]:
        out = []
        if self.lo is not None:
            out.append(point_on(self.cls, self.c, self.lo))
        if self.hi is not None:
            out.append(point_on(self.cls, self.c, self.hi))
        return tuple(out)

    def length(self) -> Fraction:
        assert self.is_finite
        return self.hi - self.lo

    def contains_t(self, t: Fraction) -> bool:
        return (self.lo is None or self.lo <= t) and (self.hi is None or t <= self.hi)

    def sort_key(self):
        return (self.cls, self.c, _lo_key(self.lo), _hi_key(self.hi))


@dataclass(frozen=True)
class HEdge:
    cls: int
    c: Fraction
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    weight: int

    @property
    def line(self) -> HLine:
        return HLine(self.cls, self.c, self.lo, self.hi)

    @property
    def is_ray(self) -> bool:
        return self.line.is_ray

    @property
    def is_finite(self) -> bool:
        return self.line.is_finite

    @property
    def ray_sign(self) -> str:
        return self.line.ray_sign

    @property
    def nonintegral(self) -> bool:
        return self.c.denominator != 1

    def ends(self) -> tuple[Pt, ...]:
        return self.line.ends()

    def length(self) -> Fraction:
        return self.line.length()

    def sign_at(self, v: Pt) -> str:
        """The sign s with this edge inside ``Xi_cls^s(v)``, for an end v."""
        t = t_of(self.cls, v)
        if self.lo == t:
            return "+"
        assert self.hi == t, (self, v)
        return "-"

    def other_end(self, v: Pt) -> Optional[Pt]:
        ends = self.ends()
        if len(ends) == 2:
            return ends[1] if ends[0] == v else ends[0]
        return None

    def sort_key(self):
        return (self.cls, self.c, _lo_key(self.lo), _hi_key(self.hi), self.weight)


XiSystem = list[tuple[HLine, int]]


class _Coverage:
    """Piecewise-constant total weight along one supporting line."""

    def __init__(self, intervals: list[tuple[Optional[Fraction], Optional[Fraction], int]]):
        self.base = sum(w for lo, _, w in intervals if lo is None)
        deltas: dict[Fraction, int] = {}
        for lo, hi, w in intervals:
            if lo is not None:
                deltas[lo] = deltas.get(lo, 0) + w
            if hi is not None:
                deltas[hi] = deltas.get(hi, 0) - w
        self.ts = sorted(deltas)
        self.vals = []
        running = self.base
        for t in self.ts:
            running += deltas[t]
            self.vals.append(running)

    def plus(self, t: Fraction) -> int:
        """Coverage just right of t."""
        i = bisect_right(self.ts, t) - 1
        return self.base if i < 0 else self.vals[i]

    def minus(self, t: Fraction) -> int:
        """Coverage just left of t."""
        i = bisect_left(self.ts, t) - 1
        return self.base if i < 0 else self.vals[i]

    def constant_on(self, a: Optional[Fraction], b: Optional[Fraction]) -> bool:
        """No coverage change at breakpoints strictly inside (a, b)."""
        i = 0 if a is None else bisect_right(self.ts, a)
        j = len(self.ts) if b is None else bisect_left(self.ts, b)
        if i >= j:
            return True
        before = self.base if i == 0 else self.vals[i - 1]
        return all(self.vals[k] == before for k in range(i, j))


def _supports(system: XiSystem) -> dict[tuple[int, Fraction], _Coverage]:
    per: dict[tuple[int, Fraction], list] = {}
    for line, w in system:
        if w == 0 or (line.is_finite and line.lo >= line.hi):
            continue
        per.setdefault((line.cls, line.c), []).append((line.lo, line.hi, w))
    return {key: _Coverage(iv) for key, iv in per.items()}


def _candidate_points(system: XiSystem, covs) -> set[Pt]:
    pts: set[Pt] = set()
    for line, w in system:
        if w != 0:
            pts.update(line.ends())
    keys = sorted(covs, key=lambda k: (k[0], k[1]))
    for i, (cls1, c1) in enumerate(keys):
        for cls2, c2 in keys[i + 1 :]:
            if cls1 != cls2:
                pts.add(point_from_two(cls1, c1, cls2, c2))
    return pts


def six_weights(covs, p: Pt) -> dict[tuple[int, str], int]:
    """The six ray weights w_i^s at a point, from precomputed coverages."""
    out = {}
    for cls in (1, 2, 3):
        cov = covs.get((cls, dval(p, cls)))
        if cov is None:
            out[(cls, "+")] = out[(cls, "-")] = 0
        else:
            t = t_of(cls, p)
            out[(cls, "+")] = cov.plus(t)
            out[(cls, "-")] = cov.minus(t)
    return out


def ray_weights(system: XiSystem, v: Pt) -> dict[tuple[int, str], int]:
    """Direct-scan ray weights of a Xi-system at a point."""
    out = {(cls, s): 0 for cls in (1, 2, 3) for s in SIGNS}
    for line, w in system:
        if dval(v, line.cls) != line.c:
            continue
        t = t_of(line.cls, v)
        if (line.lo is None or line.lo <= t) and (line.hi is None or t < line.hi):
            out[(line.cls, "+")] += w
        if (line.lo is None or line.lo < t) and (line.hi is None or t <= line.hi):
            out[(line.cls, "-")] += w
    return out


def _violation(system: XiSystem) -> Optional[str]:
    covs = _supports(system)
    for p in _candidate_points(system, covs):
        w6 = six_weights(covs, p)
        if any(v < 0 for v in w6.values()):
            return f"negative ray weight at {p}"
        divs = {cls: w6[(cls, "+")] - w6[(cls, "-")] for cls in (1, 2, 3)}
        if len(set(divs.values())) != 1:
            return f"unequal tension {divs} at {p}"
    return None


def is_prehoneycomb(system: XiSystem) -> bool:
    """Nonnegative ray weights and equal divergency everywhere.

    Checking the finite candidate set (all endpoints plus pairwise support
    crossings) suffices: between candidates every coverage is constant, so
    interior points see w_i^+ = w_i^- on one class and zeros elsewhere.
    """
    return _violation(system) is None


@dataclass(frozen=True)
class Honeycomb:
    vertices: tuple[Pt, ...]
    edges: tuple[HEdge, ...]

    @cached_property
    def incidence(self) -> dict[Pt, dict[tuple[int, str], HEdge]]:
        inc: dict[Pt, dict[tuple[int, str], HEdge]] = {v: {} for v in self.vertices}
        for e in self.edges:
            for v in e.ends():
                if v in inc:
                    slot = (e.cls, e.sign_at(v))
                    assert slot not in inc[v], "two edges share a ray slot"
                    inc[v][slot] = e
        return inc

    @cached_property
    def vertex_set(self) -> frozenset[Pt]:
        return frozenset(self.vertices)

    def weights_at(self, v: Pt) -> dict[tuple[int, str], int]:
        w6 = {(cls, s): 0 for cls in (1, 2, 3) for s in SIGNS}
        for (cls, s), e in self.incidence[v].items():
            w6[(cls, s)] = e.weight
        return w6

    @cached_property
    def boundary(self) -> tuple[HEdge, ...]:
        return tuple(e for e in self.edges if e.is_ray)

    def as_system(self) -> XiSystem:
        return [(e.line, e.weight) for e in self.edges]


def divergency(h: Honeycomb, v: Pt) -> int:
    w6 = h.weights_at(v)
    divs = {w6[(cls, "+")] - w6[(cls, "-")] for cls in (1, 2, 3)}
    assert len(divs) == 1, f"tension violated at {v}"
    return divs.pop()


def excess(h: Honeycomb, v: Pt) -> int:
    return abs(divergency(h, v))


def canonicalize(system: XiSystem) -> Honeycomb:
    """The unique honeycomb with the same ray weights everywhere.

    Vertices are the points with at least three nonzero ray weights; edges
    are the maximal covered stretches between them.  Raises
    NotPreHoneycomb when the system violates nonnegativity or tension, and
    when the covered set has a fully infinite line or no vertex at all.
    """
    covs = _supports(system)
    verts: list[Pt] = []
    for p in _candidate_points(system, covs):
        w6 = six_weights(covs, p)
        if any(v < 0 for v in w6.values()):
            raise NotPreHoneycomb(f"negative ray weight at {p}")
        divs = {cls: w6[(cls, "+")] - w6[(cls, "-")] for cls in (1, 2, 3)}
        if len(set(divs.values())) != 1:
            raise NotPreHoneycomb(f"unequal tension {divs} at {p}")
        if sum(1 for v in w6.values() if v != 0) >= 3:
            verts.append(p)
    if not verts:
        raise NotPreHoneycomb("covered set has no vertex")
    edges: list[HEdge] = []
    for (cls, c), cov in sorted(covs.items()):
        ts = sorted(t_of(cls, v) for v in verts if dval(v, cls) == c)
        if not ts:
            if cov.base != 0 or any(v != 0 for v in cov.vals):
                raise NotPreHoneycomb(f"fully infinite covered line {(cls, c)}")
            continue
        cuts: list[Optional[Fraction]] = [None] + ts + [None]
        for a, b in zip(cuts, cuts[1:]):
            w = cov.minus(b) if a is None else cov.plus(a)
            if w == 0:
                continue
            if w < 0:
                raise NotPreHoneycomb(f"negative coverage on {(cls, c)}")
            if not cov.constant_on(a, b):
                raise NotPreHoneycomb(f"coverage step without a vertex on {(cls, c)}")
            edges.append(HEdge(cls, c, a, b, w))
    hc = Honeycomb(tuple(sorted(verts)), tuple(sorted(edges, key=HEdge.sort_key)))
    for v in hc.vertices:
        assert len(hc.incidence[v]) >= 3
        divergency(hc, v)
    return hc


def boundary_partition(h: Honeycomb) -> tuple[dict[tuple[int, str], tuple[HEdge, ...]], int]:
    """Semiinfinite edges grouped by (class, sign) plus the common net flow."""
    part: dict[tuple[int, str], list[HEdge]] = {(cls, s): [] for cls in (1, 2, 3) for s in SIGNS}
    for e in h.boundary:
        part[(e.cls, e.ray_sign)].append(e)
    flows = {
        cls: sum(e.weight for e in part[(cls, "+")]) - sum(e.weight for e in part[(cls, "-")])
        for cls in (1, 2, 3)
    }
    assert len(set(flows.values())) == 1, f"boundary flow mismatch {flows}"
    return {k: tuple(v) for k, v in part.items()}, flows[1]


def nonintegral_sets(h: Honeycomb) -> tuple[frozenset[Pt], frozenset[HEdge]]:
    """Vertices with a fractional coordinate; edges with fractional d^c."""
    vs = frozenset(v for v in h.vertices if not is_integral_point(v))
    for v in vs:
        fractional = sum(1 for cls in (1, 2, 3) if dval(v, cls).denominator != 1)
        assert fractional >= 2, f"{v} has a single fractional coordinate"
    return vs, frozenset(e for e in h.edges if e.nonintegral)


def honeycomb_sum(a: Honeycomb, b: Honeycomb) -> Honeycomb:
    """Canonical form of the union system; always a pre-honeycomb."""
    return canonicalize(a.as_system() + b.as_system())


def claw(center: Pt, weight: int = 1, sign: str = "+") -> Honeycomb:
    """Three equal rays of one sign from a single point."""
    lines = []
    for cls in (1, 2, 3):
        t = t_of(cls, center)
        line = HLine(cls, dval(center, cls), t, None) if sign == "+" else HLine(
            cls, dval(center, cls), None, t
        )
        lines.append((line, weight))
    return canonicalize(lines)
