"""Bidirectional conversion between concave cocirculations and honeycombs.

A honeycomb vertex v expands to a local grid whose boundary runs are the
six ray weights of v, walked anticlockwise in the order
(1,+), (3,-), (2,+), (1,-), (3,+), (2,-); local grids glue along the sides
dual to finite edges.  Conversely each flatspace of a concave
cocirculation contributes the vertex whose dual coordinates are its three
per-class values.
"""

from __future__ import annotations

from . import grid as gr
from .grid import ConvexGrid, Cocirculation, Point, Triangle
from .honeycomb import (
    HLine,
    Honeycomb,
    Pt,
    canonicalize,
    dval,
    t_of,
)

# Anticlockwise hexagon walk: ray slot -> lattice step of that boundary run.
HEX_ORDER: list[tuple[tuple[int, str], Point]] = [
    ((1, "+"), (1, 0)),
    ((3, "-"), (1, 1)),
    ((2, "+"), (0, 1)),
    ((1, "-"), (-1, 0)),
    ((3, "+"), (-1, -1)),
    ((2, "-"), (0, -1)),
]


def _local_grid(w6: dict[tuple[int, str], int]):
    """Triangles and per-side corner spans of one vertex's local grid."""
    corner = (0, 0)
    corners = [corner]
    spans = {}
    for slot, (da, db) in HEX_ORDER:
        n = w6[slot]
        end = (corner[0] + n * da, corner[1] + n * db)
        spans[slot] = (corner, end)
        corner = end
        corners.append(corner)
    assert corner == (0, 0), "ray weights do not close up"
    return gr.fill_convex_polygon(corners[:-1]), spans


def honeycomb_to_grid(h: Honeycomb) -> tuple[ConvexGrid, Cocirculation]:
    """Glue the local grids of all vertices; anchor at the least vertex."""
    local = {v: _local_grid(h.weights_at(v)) for v in h.vertices}
    offsets: dict[Pt, Point] = {h.vertices[0]: (0, 0)}
    queue = [h.vertices[0]]
    while queue:
        v = queue.pop()
        ov = offsets[v]
        for e in h.incidence[v].values():
            u = e.other_end(v)
            if u is None:
                continue
            sv, su = e.sign_at(v), e.sign_at(u)
            start_v, end_v = local[v][1][(e.cls, sv)]
            start_u, _ = local[u][1][(e.cls, su)]
            off = (ov[0] + end_v[0] - start_u[0], ov[1] + end_v[1] - start_u[1])
            if u in offsets:
                assert offsets[u] == off, "inconsistent gluing"
            else:
                offsets[u] = off
                queue.append(u)
    assert len(offsets) == len(h.vertices), "honeycomb not edge-connected"

    tris: dict[Triangle, Pt] = {}
    values: Cocirculation = {}
    for v in h.vertices:
        oa, ob = offsets[v]
        for up, a, b in local[v][0]:
            t = (up, a + oa, b + ob)
            assert t not in tris, "overlapping local grids"
            tris[t] = v
            for cls in (1, 2, 3):
                e = gr.triangle_edge(t, cls)
                val = dval(v, cls)
                assert values.get(e, val) == val, "gluing value mismatch"
                values[e] = val
    g = ConvexGrid.of(tris)
    da, db = g.anchor_offset()
    g = g.translate(da, db)
    values = {(a + da, b + db, d): x for (a, b, d), x in values.items()}
    gr.validate_grid(g)
    assert gr.is_concave(g, values)
    return g, values


def tile_points(
    g: ConvexGrid, h: Cocirculation, tiles: gr.Tiling
) -> tuple[dict[Triangle, int], list[Pt]]:
    """Map each face to its tile index and each tile to its dual point."""
    tile_of = {t: i for i, ts in enumerate(tiles) for t in ts}
    pts: list[Pt] = []
    for ts in tiles:
        vals = {}
        for t in ts:
            for cls in (1, 2, 3):
                v = h[gr.triangle_edge(t, cls)]
                assert vals.setdefault(cls, v) == v, "tile is not flat"
        pts.append((vals[1], vals[2]))
    return tile_of, pts


def grid_to_honeycomb(g: ConvexGrid, h: Cocirculation) -> Honeycomb:
    """One vertex per flatspace, finite edges across shared tile sides,
    rays for tile sides on the grid boundary."""
    tiles = gr.tiling_of(g, h)  # raises NotConcave
    tile_of, pts = tile_points(g, h, tiles)

    shared: dict[tuple[int, int], tuple[int, int]] = {}
    for diag, t1, t2 in gr.little_rhombi(g):
        i, j = tile_of[t1], tile_of[t2]
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        cls, n = shared.get(key, (diag[2], 0))
        assert cls == diag[2], "tile pair shares sides of two classes"
        shared[key] = (cls, n + 1)

    lines: list[tuple[HLine, int]] = []
    for (i, j), (cls, n) in sorted(shared.items()):
        pi, pj = pts[i], pts[j]
        c = dval(pi, cls)
        assert c == dval(pj, cls)
        ti, tj = sorted((t_of(cls, pi), t_of(cls, pj)))
        lines.append((HLine(cls, c, ti, tj), n))

    rays: dict[tuple[int, int, str], int] = {}
    for side in g.sides:
        for e in side.edges:
            (face,) = g.edge_faces[e]
            key = (tile_of[face], side.cls, side.sign)
            rays[key] = rays.get(key, 0) + 1
    for (i, cls, sign), n in sorted(rays.items()):
        p = pts[i]
        t = t_of(cls, p)
        span = (t, None) if sign == "+" else (None, t)
        lines.append((HLine(cls, dval(p, cls), *span), n))

    hc = canonicalize(lines)
    assert set(hc.vertices) == set(pts), "tiles and vertices disagree"
    return hc
