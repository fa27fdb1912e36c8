from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespace.errors import (
    DisconnectedGraph,
    InvalidMetric,
    NonpositiveWeight,
    ParallelEdge,
    SelfLoop,
    UnsupportedParameter,
)
from cyclespace.graphs import (
    CutProjector,
    MetricSpace,
    build_graph,
    canonical_graph,
    cut_basis,
    cut_vector,
    cycle_basis,
    divergence,
    graph_from_json,
    graph_to_json,
    gradient,
    hamming_graph,
    incidence_matrix,
    metric_from_json,
    metric_to_json,
    orthogonal_projection,
    shortest_path_distances,
    torus_graph,
)
from cyclespace.invariant import operator_norms
from cyclespace.linalg import (
    dot,
    identity,
    mat_sub,
    matmul,
    orth_project_onto_span,
    rank,
    transpose,
)

F = Fraction


def test_constructor_errors():
    with pytest.raises(SelfLoop):
        build_graph(2, [(0, 0), (0, 1)])
    with pytest.raises(ParallelEdge):
        build_graph(2, [(0, 1), (1, 0)])
    with pytest.raises(NonpositiveWeight):
        build_graph(2, [(0, 1, 0)])
    with pytest.raises(DisconnectedGraph):
        build_graph(3, [(0, 1)])
    with pytest.raises(UnsupportedParameter):
        torus_graph(2, 3)


def test_family_sizes():
    assert (torus_graph(2).vertex_count, torus_graph(2).edge_count) == (4, 4)
    T3 = torus_graph(3)
    assert (T3.vertex_count, T3.edge_count, T3.cycle_rank) == (9, 18, 10)
    A = hamming_graph(3, 2)
    assert (A.vertex_count, A.edge_count) == (9, 18)
    assert hamming_graph(2, 4).edge_count == 32


def test_incidence_conventions():
    G = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    D = incidence_matrix(G)
    assert [row[0] for row in D] == [-1, 1, 0]
    # the cut vector is +1 on edges leaving v and equals -D^T delta_v
    assert cut_vector(G, 0) == [1, 0, -1]
    assert gradient(G, [1, 0, 0]) == [-1, 0, 1]


@pytest.mark.parametrize("G", [torus_graph(2), torus_graph(3), hamming_graph(2, 3), hamming_graph(3, 2)])
def test_cycle_and_cut_spaces(G):
    D = incidence_matrix(G)
    Z = cycle_basis(G)
    B = cut_basis(G)
    assert len(Z) == G.cycle_rank
    assert rank(Z) == len(Z) and rank(B) == len(B) == G.vertex_count - 1
    assert all(divergence(G, z) == [0] * G.vertex_count for z in Z)
    assert all(dot(z, b) == 0 for z in Z for b in B)
    assert rank(D) == G.vertex_count - 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projection_matches_gram_oracle(n):
    G = torus_graph(n)
    P = orthogonal_projection(G)
    assert P == orth_project_onto_span(cycle_basis(G))
    PB = CutProjector(G).matrix()
    assert mat_sub(identity(G.edge_count), PB) == P


@pytest.mark.parametrize(
    "n, expected",
    [(2, (F(1), F(3, 2))), (3, (F(19, 9), F(2))), (4, (F(41, 16), F(5, 2)))],
)
def test_torus_projection_norms_dense(n, expected):
    assert operator_norms(orthogonal_projection(torus_graph(n))) == expected


def test_projection_is_symmetric_idempotent():
    P = orthogonal_projection(hamming_graph(2, 3))
    assert matmul(P, P) == P and transpose(P) == P


def test_metric_validation():
    with pytest.raises(InvalidMetric):
        MetricSpace(((0, 1, 3), (1, 0, 1), (3, 1, 0)))
    with pytest.raises(InvalidMetric):
        MetricSpace(((0, 1), (2, 0)))


@st.composite
def metrics(draw):
    n = draw(st.integers(2, 6))
    w = {p: F(draw(st.integers(1, 6)), draw(st.integers(1, 2))) for p in itertools.combinations(range(n), 2)}
    G = build_graph(n, [(u, v, x) for (u, v), x in w.items()])
    return MetricSpace(tuple(map(tuple, shortest_path_distances(G))))


@settings(max_examples=60, deadline=None)
@given(metrics())
def test_canonical_graph_recovers_metric(X):
    G = canonical_graph(X)
    assert shortest_path_distances(G) == [list(r) for r in X.distances]
    assert metric_from_json(metric_to_json(X)) == X


@settings(max_examples=30, deadline=None)
@given(metrics())
def test_graph_json_round_trip(X):
    G = canonical_graph(X)
    H = graph_from_json(graph_to_json(G))
    assert H.edges == G.edges
