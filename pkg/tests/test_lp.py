from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespace.lp import LpProblem, linprog, solve

F = Fraction


def test_textbook_maximisation():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    res = linprog([-3, -5], A_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18])
    assert res.status == "optimal"
    assert res.value == -36
    assert res.x == [2, 6]


def test_infeasible_and_unbounded():
    assert solve(LpProblem([1, 1], [[1, 1]], [-1])).status == "infeasible"
    assert linprog([-1, 0], A_ub=[[0, 1]], b_ub=[1]).status == "unbounded"


def test_free_variables_and_equalities():
    # min |x - 5/3| written as u + w with x free, x - u + w = 5/3
    res = linprog([0, 1, 1], A_eq=[[1, -1, 1]], b_eq=[F(5, 3)], free=[0])
    assert res.status == "optimal" and res.value == 0 and res.x[0] == F(5, 3)


def test_redundant_equality_rows():
    res = solve(LpProblem([1, 2], [[1, 1], [2, 2]], [3, 6]))
    assert res.status == "optimal" and res.value == 3


@st.composite
def covering_lps(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    A = [draw(st.lists(st.integers(0, 4), min_size=n, max_size=n)) for _ in range(m)]
    for row in A:
        if not any(row):
            row[draw(st.integers(0, n - 1))] = 1
    b = draw(st.lists(st.integers(1, 5), min_size=m, max_size=m))
    c = draw(st.lists(st.integers(1, 5), min_size=n, max_size=n))
    return A, b, c


@settings(max_examples=80, deadline=None)
@given(covering_lps())
def test_strong_duality(lp):
    """min c.x, Ax >= b, x >= 0 has the same value as max b.y, A^T y <= c, y >= 0."""
    A, b, c = lp
    primal = linprog(c, A_ub=[[-a for a in row] for row in A], b_ub=[-x for x in b])
    At = [list(col) for col in zip(*A)]
    dual = linprog([-x for x in b], A_ub=At, b_ub=c)
    assert primal.status == dual.status == "optimal"
    assert primal.value == -dual.value
    x = primal.x
    assert all(v >= 0 for v in x)
    assert all(sum(a * v for a, v in zip(row, x)) >= bi for row, bi in zip(A, b))
