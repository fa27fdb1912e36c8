"""The orthogonal projection onto the cut space of the cube ``{0,1}^n``.

``Q_n e_0`` (with ``e_0`` the edge from the origin along coordinate 0) takes
only three kinds of values, by symmetry:

* ``b_k`` on edges flipping coordinate 0 whose tail has weight ``k``;
* ``a_k`` on edges with coordinate 0 equal to 1, tail weight ``k``;
* ``c_k`` on edges with coordinate 0 equal to 0, tail weight ``k``.

``b_0`` and ``b_1`` have closed forms, ``b_2 .. b_{n-1}`` follow from a
three-term recurrence and ``a, c`` follow from ``b``.  The dense projection
of :mod:`cyclespace.graphs` is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import IdentityViolation, UnsupportedParameter
from .graphs import CutProjector, hamming_graph
from .linalg import ONE, ZERO, l1_norm


@dataclass(frozen=True)
class CubeCoefficients:
    n: int
    a: tuple  # a[k] for k = 1..n-1, stored at index k (index 0 unused: None)
    b: tuple  # b[k] for k = 0..n-1
    c: tuple  # c[k] for k = 0..n-2

    def check(self) -> list[str]:
        """Names of the structural identities that fail (empty when all hold)."""
        n, a, b, c = self.n, self.a, self.b, self.c
        bad = []
        if any(a[k] != -c[k - 1] for k in range(1, n)):
            bad.append("a_k = -c_{k-1}")
        if any(a[k] != (b[k] - b[k - 1]) / 2 for k in range(1, n)):
            bad.append("a_k = (b_k - b_{k-1})/2")
        if any(b[k] <= 0 for k in range(n)) or any(b[k] >= b[k - 1] for k in range(1, n)):
            bad.append("b positive and strictly decreasing")
        if b[n - 2] != Fraction(n + 1, n - 1) * b[n - 1]:
            bad.append("b_{n-2} = (n+1)/(n-1) b_{n-1}")
        if b[0] + (n - 1) * c[0] != 1:
            bad.append("b_0 + (n-1) c_0 = 1")
        if any(a[k] >= 0 for k in range(1, n)) or any(x <= 0 for x in c):
            bad.append("a_k < 0 < c_k")
        for k in range(2, n):
            # a-recurrence from the cut vector at a weight-k vertex
            if (n - k) * a[k] - (k - 1) * a[k - 1] - b[k - 1] != 0:
                bad.append(f"(n-k) a_k - (k-1) a_(k-1) = b_(k-1) at k={k}")
                break
        return bad


def b0_closed_form(n: int) -> Fraction:
    return Fraction(2, n) - Fraction(1, n * 2 ** (n - 1))


def b1_closed_form(n: int) -> Fraction:
    return (
        Fraction(2, n * (n - 1))
        - Fraction(1, 2 ** (n - 2) * n * (n - 1))
        - Fraction(1, n * 2 ** (n - 1))
    )


def cube_coefficients(n: int) -> CubeCoefficients:
    if n < 3:
        raise UnsupportedParameter("cube coefficients need n >= 3")
    b = [b0_closed_form(n), b1_closed_form(n)]
    for k in range(2, n):
        b.append(((n + 1) * b[k - 1] - (k - 1) * b[k - 2]) / (n - k))
    a = [None] + [(b[k] - b[k - 1]) / 2 for k in range(1, n)]
    c = [-a[k + 1] for k in range(n - 1)]
    return CubeCoefficients(n, tuple(a), tuple(b), tuple(c))


def F_sum(co: CubeCoefficients) -> Fraction:
    return sum((comb(co.n - 1, k) * co.b[k] for k in range(co.n)), ZERO)


def G_sum(co: CubeCoefficients) -> Fraction:
    n = co.n
    return sum(((n - 1 - k) * comb(n - 1, k) * co.c[k] for k in range(n - 1)), ZERO)


def l1_of_column(co: CubeCoefficients) -> Fraction:
    """``||Q_n e_0||_1`` counting every edge of each type with its absolute value."""
    n = co.n
    total = sum((comb(n - 1, k) * abs(co.b[k]) for k in range(n)), ZERO)
    total += sum(((n - 1 - k) * comb(n - 1, k) * abs(co.c[k]) for k in range(n - 1)), ZERO)
    total += sum(((n - k) * comb(n - 1, k - 1) * abs(co.a[k]) for k in range(1, n)), ZERO)
    return total


def q_norm(n: int) -> Fraction:
    """``||Q_n||_1 = F(n) + 2 G(n)``, with the closed values enforced."""
    co = cube_coefficients(n)
    bad = co.check()
    if bad:
        raise IdentityViolation(f"n={n}: " + "; ".join(bad))
    F, G = F_sum(co), G_sum(co)
    if F != 1:
        raise IdentityViolation(f"n={n}: F(n) = {F}, expected 1")
    if G != Fraction(n - 1, 4):
        raise IdentityViolation(f"n={n}: G(n) = {G}, expected {Fraction(n - 1, 4)}")
    value = F + 2 * G
    if value != Fraction(n + 1, 2) or l1_of_column(co) != value:
        raise IdentityViolation(f"n={n}: ||Q_n||_1 = {value}, expected {Fraction(n + 1, 2)}")
    return value


def p_norm(n: int) -> Fraction:
    """``||I - Q_n||_1``, the norm of the orthogonal projection onto ``Z``."""
    if n < 3:
        raise UnsupportedParameter("p_norm needs n >= 3")
    return Fraction(n + 3, 2) - Fraction(4, n) + Fraction(1, n * 2 ** (n - 2))


def lambda_lip0(n: int) -> Fraction:
    """Projection constant of ``Lip_0`` of the cube: equal to ``||Q_n||_1``."""
    return q_norm(n)


def bm_bounds(n: int) -> tuple[Fraction, Fraction]:
    return lambda_lip0(n), Fraction(2 * n)


# ----------------------------------------------------------------------------
# dense oracle


def edge_type(tail: tuple, head: tuple) -> tuple[str, int]:
    """``("a"|"b"|"c", k)`` for an edge of the cube relative to coordinate 0."""
    k = sum(tail)
    if tail[0] != head[0]:
        return "b", k
    return ("a", k) if tail[0] == 1 else ("c", k)


@dataclass
class DenseCheck:
    n: int
    coefficients_match: bool
    q_norm: Fraction
    p_norm: Fraction
    xj_identity: bool

    @property
    def ok(self) -> bool:
        return (
            self.coefficients_match
            and self.q_norm == Fraction(self.n + 1, 2)
            and self.p_norm == p_norm(self.n)
            and self.xj_identity
        )


def dense_check(n: int) -> DenseCheck:
    G = hamming_graph(2, n)
    E = G.edge_count
    proj = CutProjector(G)
    cols = []
    for f in range(E):
        unit = [ZERO] * E
        unit[f] = ONE
        cols.append(proj.apply(unit))
    co = cube_coefficients(n)
    table = {"a": co.a, "b": co.b, "c": co.c}
    q0 = cols[0]
    match = True
    for e, (t, h, _) in enumerate(G.edges):
        kind, k = edge_type(G.vertices[t], G.vertices[h])
        if q0[e] != table[kind][k]:
            match = False
            break
    qn = max(l1_norm(c) for c in cols)
    pn = max(l1_norm([(ONE if i == f else ZERO) - x for i, x in enumerate(c)]) for f, c in enumerate(cols))

    ident = True
    for j in range(1, n):
        x = [ZERO] * E
        u, y, z = list(x), list(x), list(x)
        for e, (t, h, _) in enumerate(G.edges):
            vt, vh = G.vertices[t], G.vertices[h]
            if vt[j] != vh[j]:  # j-parallel
                (x if vt[0] == 0 else u)[e] = ONE
            elif vt[0] != vh[0]:  # parallel to coordinate 0
                (y if vt[j] == 0 else z)[e] = ONE
        lhs = proj.apply(x)
        rhs = [Fraction(3, 4) * a + Fraction(1, 4) * (b + c - d) for a, b, c, d in zip(x, u, y, z)]
        if lhs != rhs:
            ident = False
            break
    return DenseCheck(n, match, qn, pn, ident)


def cube_cross_check(n: int) -> bool:
    """Dense projection agrees with the recurrence path in every respect."""
    if n > 6:
        raise UnsupportedParameter("the dense cross-check is limited to n <= 6")
    return dense_check(n).ok
