"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; a matrix is a list of rows.  All
routines are exact, so pivoting only has to find a nonzero entry.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DependentBasis

Rational = Fraction
Vector = list
Matrix = list  # list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(q) -> str:
    return str(Fraction(q))


def matrix_to_json(M: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in M]


# ----------------------------------------------------------------------------
# construction and arithmetic


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = ONE
    return M


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [ZERO] * cols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence) -> Vector:
    return [sum((a * x for a, x in zip(row, v) if a and x), ZERO) for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A: Matrix) -> Matrix:
    c = Fraction(c)
    return [[c * a for a in row] for row in A]


def column(M: Matrix, j: int) -> Vector:
    return [row[j] for row in M]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(M: Matrix) -> bool:
    return all(not x for row in M for x in row)


# ----------------------------------------------------------------------------
# elimination


def rref(M: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    Pivot rule: scan columns left to right, take the first row at or below
    the current one with a nonzero entry.
    """
    R = [list(map(Fraction, row)) for row in M]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        prow = R[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = R[r] = [x * inv for x in prow]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = R[i][c]
                if f:
                    row = R[i]
                    for j in support:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return R, pivots, r


def rank(M: Matrix) -> int:
    if not M:
        return 0
    return _echelon_rank([list(row) for row in M])


def _echelon_rank(R: Matrix) -> int:
    # forward elimination only
    nrows, ncols = len(R), len(R[0]) if R else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        prow = R[r]
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(r + 1, nrows):
            f = R[i][c]
            if f:
                f = f / prow[c]
                row = R[i]
                for j in support:
                    row[j] -= f * prow[j]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(M: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of ``ker M``; one vector per free column."""
    if not M:
        n = cols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    R, pivots, r = rref(M)
    n = len(M[0])
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for fcol in free:
        v = [ZERO] * n
        v[fcol] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fcol]
        basis.append(v)
    return basis


def independent_rows(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    kept: list[int] = []
    reduced: list[tuple[int, list]] = []  # (pivot, normalised row)
    for idx, v in enumerate(vectors):
        w = [Fraction(x) for x in v]
        for p, row in reduced:
            f = w[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= f * x
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            continue
        inv = 1 / w[p]
        w = [x * inv for x in w]
        # keep earlier rows reduced against the new pivot
        for k, (q, row) in enumerate(reduced):
            f = row[p]
            if f:
                reduced[k] = (q, [a - f * b for a, b in zip(row, w)])
        reduced.append((p, w))
        kept.append(idx)
    return kept


def span_rank(vectors: Sequence[Sequence]) -> int:
    return len(independent_rows(vectors))


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(map(Fraction, row)) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(M)]
    R, pivots, r = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class LUSolver:
    """LU factorisation of a nonsingular square matrix, reused across solves."""

    def __init__(self, M: Matrix):
        n = len(M)
        A = [list(map(Fraction, row)) for row in M]
        perm = list(range(n))
        for k in range(n):
            p = next((i for i in range(k, n) if A[i][k]), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            if p != k:
                A[k], A[p] = A[p], A[k]
                perm[k], perm[p] = perm[p], perm[k]
            pivot_row = A[k]
            inv = 1 / pivot_row[k]
            support = [j for j in range(k + 1, n) if pivot_row[j]]
            for i in range(k + 1, n):
                row = A[i]
                if row[k]:
                    f = row[k] * inv
                    row[k] = f
                    for j in support:
                        row[j] -= f * pivot_row[j]
        self.n = n
        self.lu = A
        self.perm = perm

    def solve(self, b: Sequence) -> Vector:
        n, A = self.n, self.lu
        y = [Fraction(b[self.perm[i]]) for i in range(n)]
        for i in range(n):
            row = A[i]
            s = y[i]
            for j in range(i):
                if row[j] and y[j]:
                    s -= row[j] * y[j]
            y[i] = s
        for i in range(n - 1, -1, -1):
            row = A[i]
            s = y[i]
            for j in range(i + 1, n):
                if row[j] and y[j]:
                    s -= row[j] * y[j]
            y[i] = s / row[i]
        return y


def sparse_nullspace(rows: Iterable[dict], ncols: int) -> list[Vector]:
    """Nullspace of a sparse system given as ``{column: coefficient}`` rows.

    Rows are eliminated one at a time against the pivots found so far, so
    the working set never exceeds ``ncols`` rows.
    """
    pivots: dict[int, dict] = {}  # pivot column -> row with coefficient 1 there
    for raw in rows:
        row = {j: Fraction(v) for j, v in raw.items() if v}
        while row:
            hit = next((j for j in row if j in pivots), None)
            if hit is None:
                break
            f = row[hit]
            for j, v in pivots[hit].items():
                nv = row.get(j, ZERO) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {j: v * inv for j, v in row.items()}
        # back-substitute into existing pivot rows
        for q, prow in pivots.items():
            f = prow.get(p)
            if f:
                for j, v in row.items():
                    nv = prow.get(j, ZERO) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[p] = row
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for p, prow in pivots.items():
            c = prow.get(fcol)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


# ----------------------------------------------------------------------------
# projections and norms


def orth_project_onto_span(basis: Sequence[Sequence]) -> Matrix:
    """Orthogonal projection onto ``span(basis)`` as ``B^T (B B^T)^{-1} B``."""
    B = [list(map(Fraction, v)) for v in basis]
    if not B:
        raise DependentBasis("empty basis has no ambient dimension")
    n = len(B[0])
    if any(len(v) != n for v in B):
        raise ValueError("basis vectors have different lengths")
    gram = [[dot(u, v) for v in B] for u in B]
    try:
        gram_inv = inverse(gram)
    except ZeroDivisionError:
        raise DependentBasis("basis vectors are linearly dependent") from None
    W = matmul(gram_inv, B)
    return matmul(transpose(B), W)


def l1_operator_norm(M: Matrix) -> Fraction:
    """Norm of ``M`` on l1: the largest absolute column sum."""
    if not M:
        return ZERO
    return max(sum(abs(x) for x in col) for col in zip(*M))


def linf_operator_norm(M: Matrix) -> Fraction:
    """Norm of ``M`` on l-infinity: the largest absolute row sum."""
    if not M:
        return ZERO
    return max(sum(abs(x) for x in row) for row in M)


def l1_norm(v: Sequence) -> Fraction:
    return sum((abs(x) for x in v), ZERO)


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        d = lcm(d, x.denominator)
    return d
