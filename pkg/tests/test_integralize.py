from fractions import Fraction

import pytest

from conftest import corpus
from cocirc.constructions import counterexample_instance, hexagon_instance
from cocirc.duality import grid_to_honeycomb
from cocirc.errors import NotConcave
from cocirc.grid import (
    cocirculation_from_quadratic,
    integer_edge_sets,
    is_concave,
    three_side_grid,
    triangle_edges,
)
from cocirc.honeycomb import is_integral_point
from cocirc.integralize import (
    Potential,
    integralize,
    iteration_bound_check,
    potential,
)

F = Fraction


def test_potential_integral_honeycomb():
    g = three_side_grid(2)
    h = cocirculation_from_quadratic(g, F(1), F(1))
    pot = potential(grid_to_honeycomb(g, h))
    assert pot.nonintegral_boundary == 0
    assert pot.nonintegral_excess == 0
    assert pot.integral_incident > 0
    assert pot.settled


def test_potential_shifted_claw():
    from cocirc.honeycomb import claw

    pot = potential(claw((F(1, 2), F(-1, 2))))
    assert pot == Potential(2, 1, 0)
    assert pot.value == 3


def test_potential_hexagon_regression():
    pot = potential(grid_to_honeycomb(*hexagon_instance(2)))
    # pinned by a definition scan of the k=2 honeycomb
    beta = sum(
        e.weight
        for e in grid_to_honeycomb(*hexagon_instance(2)).boundary
        if e.c.denominator != 1
    )
    assert pot.nonintegral_boundary == beta
    assert pot.value == pot.nonintegral_boundary + pot.nonintegral_excess - pot.integral_incident


def test_integral_input_zero_iterations():
    g = three_side_grid(3)
    h = cocirculation_from_quadratic(g, F(2), F(1), F(3))
    out, trace = integralize(g, h)
    assert out == h and trace == []


def test_nonconcave_rejected():
    g = three_side_grid(2)
    h = cocirculation_from_quadratic(g, F(30), F(1))
    with pytest.raises(NotConcave):
        integralize(g, h)


def test_counterexample_rounds_but_moves_an_integral_edge():
    g, h = counterexample_instance()
    o_set, i_set = integer_edge_sets(g, h)
    out, trace = integralize(g, h)
    assert trace
    assert all(v.denominator == 1 for v in out.values())
    assert is_concave(g, out)
    assert all(out[e] == h[e] for e in o_set | i_set)
    integral = [e for e in g.edges if h[e].denominator == 1]
    assert any(out[e] != h[e] for e in integral)


def test_integral_faces_keep_values(small_corpus):
    for g, h in small_corpus[:10]:
        out, _ = integralize(g, h)
        _, i_set = integer_edge_sets(g, h)
        for t in g.triangles:
            es = triangle_edges(t)
            if all(h[e].denominator == 1 for e in es):
                assert all(out[e] == h[e] for e in es)


def test_trace_audit_on_corpus(small_corpus):
    for g, h in small_corpus[:10]:
        hc = grid_to_honeycomb(g, h)
        out, trace = integralize(g, h)
        assert iteration_bound_check(g, trace, potential(hc))


def test_integral_vertices_never_move_or_split():
    for g, h in corpus(6, seed0=777):
        hc = grid_to_honeycomb(g, h)
        while not potential(hc).settled:
            from cocirc.deform import deform
            from cocirc.paths import find_legal_path

            frozen = {v for v in hc.vertices if is_integral_point(v)}
            hc, _ = deform(hc, find_legal_path(hc))
            assert frozen <= set(hc.vertices)


def test_hexagon_instance_rounds():
    g, h = hexagon_instance(3)
    out, trace = integralize(g, h)
    assert all(v.denominator == 1 for v in out.values())
    assert iteration_bound_check(g, trace, potential(grid_to_honeycomb(g, h)))


def test_integral_vertex_capture_grows_anchored_weight():
    # a stop on an integral vertex always anchors new weight there
    seen = 0
    for g, h in corpus(60, seed0=5150):
        _, trace = integralize(g, h)
        for s in trace:
            if "integral_vertex_hit" in s.kinds:
                assert s.after.integral_incident > s.before.integral_incident
                seen += 1
    assert seen > 0
