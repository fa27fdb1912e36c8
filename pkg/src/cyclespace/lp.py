"""Exact rational simplex method.

Two-phase dense tableau simplex with Bland's rule.  With exact arithmetic
degeneracy cannot corrupt the answer, and Bland's rule guarantees
termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .caps import DEFAULT_CAPS, check
from .errors import LpError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LpProblem:
    """``minimize c.x  subject to  A x = b,  x >= 0``."""

    objective: list
    constraints: list
    rhs: list

    def __post_init__(self):
        self.objective = [Fraction(c) for c in self.objective]
        self.constraints = [[Fraction(a) for a in row] for row in self.constraints]
        self.rhs = [Fraction(b) for b in self.rhs]
        n = len(self.objective)
        if len(self.constraints) != len(self.rhs):
            raise ValueError("constraint rows and right-hand side differ in length")
        if any(len(row) != n for row in self.constraints):
            raise ValueError("constraint row length differs from objective length")


@dataclass
class LpResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: list = field(default_factory=list)
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int, cost: list, value: list) -> None:
        prow = self.rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = self.rows[r] = [x * inv for x in prow]
            self.rhs[r] *= inv
        support = [j for j, x in enumerate(prow) if x]
        b = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in support:
                        row[j] -= f * prow[j]
                    self.rhs[i] -= f * b
        f = cost[c]
        if f:
            for j in support:
                cost[j] -= f * prow[j]
            value[0] -= f * b
        self.basis[r] = c
        self.pivots += 1

    def run(self, cost: list, value: list, allowed: int) -> str:
        """Minimise with reduced costs ``cost`` over columns ``< allowed``."""
        while True:
            enter = next((j for j in range(allowed) if cost[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter, cost, value)


def solve(problem: LpProblem, caps=DEFAULT_CAPS) -> LpResult:
    c, A, b = problem.objective, problem.constraints, problem.rhs
    m, n = len(A), len(c)
    check(m * (n + m), caps.max_lp_size, "simplex tableau size")
    rows = []
    rhs = []
    for row, bi in zip(A, b):
        if bi < 0:
            rows.append([-x for x in row])
            rhs.append(-bi)
        else:
            rows.append(list(row))
            rhs.append(bi)

    # reuse unit columns as the starting basis where possible
    basis: list[int | None] = [None] * m
    for j in range(n):
        nz = [i for i in range(m) if rows[i][j]]
        if len(nz) == 1 and rows[nz[0]][j] == 1 and basis[nz[0]] is None:
            basis[nz[0]] = j
    artificial_rows = [i for i in range(m) if basis[i] is None]
    n_art = len(artificial_rows)
    for i in range(m):
        rows[i].extend([ZERO] * n_art)
    for k, i in enumerate(artificial_rows):
        rows[i][n + k] = ONE
        basis[i] = n + k
    tab = _Tableau(rows, rhs, basis)
    total = n + n_art

    if n_art:
        cost = [ZERO] * n + [ONE] * n_art
        value = [ZERO]
        for i in artificial_rows:
            for j in range(total):
                if rows[i][j]:
                    cost[j] -= rows[i][j]
            value[0] -= rhs[i]
        tab.run(cost, value, total)
        if -value[0] != 0:
            return LpResult("infeasible", pivots=tab.pivots)
        # drive zero-level artificials out of the basis, drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n:
                j = next((j for j in range(n) if tab.rows[i][j]), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j, cost, value)
            i += 1
        for row in tab.rows:
            del row[n:]

    cost = list(c)
    value = [ZERO]
    for i, j in enumerate(tab.basis):
        f = cost[j]
        if f:
            row = tab.rows[i]
            for k in range(n):
                if row[k]:
                    cost[k] -= f * row[k]
            value[0] -= f * tab.rhs[i]
    status = tab.run(cost, value, n)
    if status == "unbounded":
        return LpResult("unbounded", pivots=tab.pivots)
    x = [ZERO] * n
    for i, j in enumerate(tab.basis):
        x[j] = tab.rhs[i]
    opt = sum((ci * xi for ci, xi in zip(c, x) if ci and xi), ZERO)
    if opt != -value[0]:
        raise LpError("objective bookkeeping mismatch")
    return LpResult("optimal", opt, x, tab.pivots)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
    caps=DEFAULT_CAPS,
) -> LpResult:
    """``minimize c.x`` with ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are nonnegative except the indices listed in ``free``, which
    are split into positive and negative parts internally.  The returned
    ``x`` is in the caller's variable order.
    """
    n = len(c)
    free = sorted(set(free))
    extra = {j: n + k for k, j in enumerate(free)}
    width = n + len(free) + len(A_ub)

    def expand(row, slack=None):
        out = [Fraction(a) for a in row] + [ZERO] * (width - n)
        for j, k in extra.items():
            out[k] = -out[j]
        if slack is not None:
            out[n + len(free) + slack] = ONE
        return out

    constraints = [expand(row, s) for s, row in enumerate(A_ub)]
    constraints += [expand(row) for row in A_eq]
    rhs = [Fraction(v) for v in b_ub] + [Fraction(v) for v in b_eq]
    obj = expand(c)
    res = solve(LpProblem(obj, constraints, rhs), caps)
    if res.status != "optimal":
        return res
    x = res.x[:n]
    for j, k in extra.items():
        x[j] -= res.x[k]
    return LpResult("optimal", res.value, x, res.pivots)
