from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespace.errors import NotProbability, UnbalancedProblem
from cyclespace.graphs import hamming_graph, shortest_path_distances, torus_graph
from cyclespace.transport import (
    TransportationProblem,
    bounds_from_projection,
    check_plan,
    dual_certificate,
    particular_flow,
    quotient_norm,
    tc_norm,
    wasserstein1,
)

F = Fraction
GRAPHS = [torus_graph(2), torus_graph(3), hamming_graph(2, 3)]


def test_c4_examples():
    C4 = torus_graph(2)
    # vertices are (0,0), (0,1), (1,0), (1,1): 0 and 3 are opposite corners
    norm, plan = tc_norm([1, 0, 0, -1], C4)
    assert norm == 2 and check_plan([1, 0, 0, -1], C4, plan)
    assert tc_norm([1, -1, 0, 0], C4)[0] == 1
    assert tc_norm([0, 0, 0, 0], C4)[0] == 0
    assert wasserstein1([F(1, 4)] * 4, [1, 0, 0, 0], C4) == 1


def test_input_errors():
    with pytest.raises(UnbalancedProblem):
        TransportationProblem((1, 0, 0))
    with pytest.raises(NotProbability):
        wasserstein1([F(1, 2), F(1, 2), 0, 0], [1, 1, -1, 0], torus_graph(2))
    with pytest.raises(ValueError):
        tc_norm([1, -1], torus_graph(2))


@st.composite
def problems(draw):
    G = draw(st.sampled_from(GRAPHS))
    n = G.vertex_count
    vals = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=n - 1, max_size=n - 1))
    other = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=n - 1, max_size=n - 1))
    f = TransportationProblem(tuple(vals) + (-sum(vals, F(0)),))
    g = TransportationProblem(tuple(other) + (-sum(other, F(0)),))
    return G, f, g


@settings(max_examples=40, deadline=None)
@given(problems())
def test_duality_and_quotient(data):
    G, f, _ = data
    norm, plan = tc_norm(f, G)
    w = dual_certificate(f, G)
    assert w.lipschitz_ok(G) and w.pairing(f) == norm
    assert check_plan(f, G, plan)
    assert quotient_norm(particular_flow(f, G), G) == norm


@settings(max_examples=40, deadline=None)
@given(problems())
def test_norm_axioms(data):
    G, f, g = data
    nf, ng = tc_norm(f, G)[0], tc_norm(g, G)[0]
    s = TransportationProblem(tuple(a + b for a, b in zip(f.values, g.values)))
    assert tc_norm(s, G)[0] <= nf + ng
    neg = TransportationProblem(tuple(-3 * a for a in f.values))
    assert tc_norm(neg, G)[0] == 3 * nf
    assert (nf == 0) == (not any(f.values))


@pytest.mark.parametrize("G", GRAPHS)
def test_point_masses_give_distances(G):
    d = shortest_path_distances(G)
    n = G.vertex_count
    for u in range(n):
        for v in range(u + 1, n):
            assert tc_norm(TransportationProblem.point_masses(u, v, n), G)[0] == d[u][v]


def test_bounds_from_projection():
    b = bounds_from_projection(torus_graph(6), F(109, 36), F(3), lambda_exact=F(3))
    assert b.dimension == 35
    assert b.c1_upper == 3 and b.lambda_lower == F(73, 36) and b.bm_lower == 3
    assert b.bm_upper is None
    cube = bounds_from_projection(hamming_graph(2, 3), F(11, 6), F(2), lambda_exact=F(2), cube_dimension=3)
    assert cube.bm_upper == 6
    assert cube.to_json()["bm_lower"] == "2"
