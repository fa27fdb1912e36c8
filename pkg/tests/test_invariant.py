from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespace.graphs import incidence_matrix, torus_graph
from cyclespace.invariant import (
    average_projection,
    column_norms_equal,
    commutant_family,
    is_invariant,
    minimize_l1,
    operator_norms,
    projection_report,
    spanning_tree_projection,
)
from cyclespace.linalg import is_zero, matmul, span_rank
from cyclespace.symmetry import edge_action, hamming_generators, torus_generators

F = Fraction


def character_dimension(group) -> Fraction:
    """``dim Hom_G(B, Z)`` from characters: ``(1/|G|) sum chi_B(g) chi_Z(g)``.

    ``B`` is the vertex permutation module minus the trivial one, so
    ``chi_B(g) = fix(g) - 1``; ``chi_Z = tr(g^) - chi_B``.
    """
    G = group.graph
    total = 0
    elements = group.enumerate()
    for g in elements:
        m = edge_action(g, G)
        trace = sum(s for e, (f, s) in enumerate(zip(m.image, m.sign)) if f == e)
        chi_b = sum(1 for v, w in enumerate(g) if v == w) - 1
        total += chi_b * (trace - chi_b)
    return F(total, len(elements))


GROUPS = {
    "C4": torus_generators(2),
    "T3": torus_generators(3),
    "T4": torus_generators(4),
    "T5": torus_generators(5),
    "T6": torus_generators(6),
    "A22": hamming_generators(2, 2),
    "A23": hamming_generators(2, 3),
    "A32": hamming_generators(3, 2),
    "T7": torus_generators(7),
}

_families = {}


def family(name, method="averaging"):
    key = (name, method)
    if key not in _families:
        group = GROUPS[name]
        _families[key] = commutant_family(group.graph, group, method)
    return _families[key]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_dimension_matches_character_oracle(name):
    assert family(name).dimension == character_dimension(GROUPS[name])


@pytest.mark.parametrize("name", ["T3", "T4", "T5", "T6", "A23"])
def test_averaging_and_nullspace_agree(name):
    a, b = family(name), family(name, "nullspace")
    assert a.dimension == b.dimension
    if a.dimension:
        x = [F(0)] * a.graph.edge_count
        x[0] = F(1)
        va = [op(x) for op in a.basis_ops]
        vb = [op(x) for op in b.basis_ops]
        assert span_rank(va + vb) == span_rank(va) == a.dimension


def test_family_method_is_validated():
    with pytest.raises(ValueError):
        commutant_family(GROUPS["T3"].graph, GROUPS["T3"], "guess")


@settings(max_examples=15, deadline=None)
@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=3, max_size=3))
def test_every_family_member_is_an_invariant_projection(params):
    fam = family("T6")
    P = fam.matrix(params)
    G = fam.graph
    assert is_zero(matmul(incidence_matrix(G), P))
    assert matmul(P, P) == P
    assert is_invariant(P, GROUPS["T6"].generators)
    assert column_norms_equal(P)
    assert fam.norms(params) == operator_norms(P)


def test_averaging_lands_in_the_family():
    """On the 5x5 torus the averaged tree projection is invariant but need not be orthogonal."""
    fam = family("T5")
    A = average_projection(spanning_tree_projection(fam.graph), GROUPS["T5"])
    assert is_invariant(A, GROUPS["T5"].generators)
    assert matmul(A, A) == A
    diff = [[a - b for a, b in zip(r, s)] for r, s in zip(A, fam.P_orth)]
    members = [fam.matrix([F(int(i == k)) for i in range(fam.dimension)]) for k in range(fam.dimension)]
    members = [[[a - b for a, b in zip(r, s)] for r, s in zip(M, fam.P_orth)] for M in members]
    flat = lambda M: [x for row in M for x in row]  # noqa: E731
    assert span_rank([flat(M) for M in members] + [flat(diff)]) == fam.dimension


@pytest.mark.parametrize(
    "n, p_min, i_min, unique",
    [
        (3, F(19, 9), F(2), True),
        (5, F(69, 25), F(68, 25), True),
        (6, F(109, 36), F(3), False),
        (7, F(67, 21), F(466, 147), False),
    ],
)
def test_torus_minimal_projections(n, p_min, i_min, unique):
    """Values for n = 7 and the uniqueness flags are frozen exact LP outputs."""
    group = torus_generators(n)
    best = minimize_l1(commutant_family(group.graph, group))
    assert (best.norm, best.i_minus_norm, best.unique) == (p_min, i_min, unique)


@pytest.mark.parametrize(
    "name, faces, norms",
    [
        ("T6", ([F(-5, 16), F(-5, 48), F(1, 72)], [F(1, 6), F(-1, 8), F(5, 72)]), (F(109, 36), F(3))),
        ("T7", ([F(1, 14), F(-1, 49), F(16, 147)], [F(1, 6), F(-1, 7), F(2, 21)]), (F(67, 21), F(466, 147))),
    ],
)
def test_optimal_face_has_distinct_members(name, faces, norms):
    """Two different invariant projections attain the minimum, checked on the dense matrices."""
    fam = family(name)
    mats = [fam.matrix(p) for p in faces]
    assert mats[0] != mats[1]
    for P in mats:
        assert operator_norms(P) == norms
        assert matmul(P, P) == P
        assert is_invariant(P, GROUPS[name].generators)


def test_projection_report_bounds():
    rep = projection_report(torus_graph(4), GROUPS["T4"])
    assert rep.lambda_lip0 == F(5, 2)
    assert rep.bounds.bm_lower == F(5, 2)
    assert rep.bounds.c1_upper == F(5, 2)
    assert rep.bounds.lambda_lower == F(25, 16)
    assert rep.trace_value == family("T4").P_orth[0][0]
