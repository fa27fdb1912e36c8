"""Invariant projections onto the cycle space and their minimal norms.

A projection ``P`` onto ``Z(G)`` commuting with a group of signed edge
permutations has the form ``P = P_orth + M`` where ``M = A P_B`` for an
intertwining map ``A: B(G) -> Z(G)``.  Such ``M`` form a linear space; its
dimension is 0 exactly when the invariant projection is unique.

Two independent solvers produce that space:

``averaging``
    Averages the elementary maps over an enumerated group.  The averages are
    the signed orbital matrices ``C`` of the edge action, and the invariant
    maps are spanned by ``P_orth C P_B``.  Orbitals are built one edge orbit
    at a time from the stabiliser of a representative edge, so no
    ``|E| x |E|`` system is ever formed.
``nullspace``
    Solves ``Q A_B(g) = A_Z(g) Q`` for every generator, with ``A_B`` and
    ``A_Z`` the generator's matrices in the cut and cycle bases.

An invariant ``M`` is determined by its columns at one edge per orbit
(``M e_{g r} = g^ M e_r``), so everything downstream works with those
columns and only materialises full matrices on request.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .caps import DEFAULT_CAPS
from .errors import GroupNotEnumerated, LpError, SizeCapExceeded
from .graphs import (
    CutProjector,
    OrientedGraph,
    cycle_basis,
    spanning_tree,
    torus_graph,
)
from .linalg import (
    ONE,
    ZERO,
    common_denominator,
    independent_rows,
    l1_norm,
    l1_operator_norm,
    matmul,
    sparse_nullspace,
)
from .lp import linprog
from .symmetry import GroupSpec, SignedEdgeMap, edge_orbits, small_square
from .transport import ProjectionBounds, bounds_from_projection

Vector = list
Apply = Callable[[Sequence], Vector]


def _unit(E: int, e: int) -> Vector:
    v = [ZERO] * E
    v[e] = ONE
    return v


def _sub(x: Sequence, y: Sequence) -> Vector:
    return [a - b for a, b in zip(x, y)]


@dataclass
class ProjectionFamily:
    """``P(x) = P_orth + sum_k x_k M_k``: all invariant projections onto ``Z``."""

    graph: OrientedGraph
    group: GroupSpec
    method: str
    projector: CutProjector
    orbits: list  # edge orbits, each sorted
    orth_columns: dict  # rep -> P_orth e_rep
    basis_columns: list  # per basis map: {rep -> M_k e_rep}
    basis_ops: list = field(repr=False)  # per basis map: x -> M_k x
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis_columns)

    @property
    def reps(self) -> list[int]:
        return [o[0] for o in self.orbits]

    @property
    def edge_transitive(self) -> bool:
        return len(self.orbits) == 1

    def p_b_apply(self, x: Sequence) -> Vector:
        return self.projector.apply(x)

    def p_orth_apply(self, x: Sequence) -> Vector:
        return _sub(x, self.projector.apply(x))

    def apply(self, params: Sequence, x: Sequence) -> Vector:
        out = self.p_orth_apply(x)
        for c, op in zip(params, self.basis_ops):
            if c:
                out = [a + c * b for a, b in zip(out, op(x))]
        return out

    def column(self, params: Sequence, r: int) -> Vector:
        """``P(params) e_r`` for an orbit representative ``r``."""
        out = list(self.orth_columns[r])
        for c, cols in zip(params, self.basis_columns):
            if c:
                out = [a + c * b for a, b in zip(out, cols[r])]
        return out

    def _full(self, key, op: Apply) -> list[list[Fraction]]:
        if key not in self._cache:
            E = self.graph.edge_count
            cols = [op(_unit(E, f)) for f in range(E)]
            self._cache[key] = [list(row) for row in zip(*cols)]
        return self._cache[key]

    @property
    def P_B(self) -> list[list[Fraction]]:
        return self._full("P_B", self.p_b_apply)

    @property
    def P_orth(self) -> list[list[Fraction]]:
        return self._full("P_orth", self.p_orth_apply)

    @property
    def family_basis(self) -> list[list[list[Fraction]]]:
        return [self._full(("M", k), op) for k, op in enumerate(self.basis_ops)]

    def matrix(self, params: Sequence | None = None) -> list[list[Fraction]]:
        params = list(params or [ZERO] * self.dimension)
        if not any(params):
            return self.P_orth
        P = [row[:] for row in self.P_orth]
        for c, M in zip(params, self.family_basis):
            if c:
                for i, row in enumerate(M):
                    Pi = P[i]
                    for j, v in enumerate(row):
                        if v:
                            Pi[j] += c * v
        return P

    def norms(self, params: Sequence | None = None) -> tuple[Fraction, Fraction]:
        """``(||P||_1, ||I - P||_1)`` from the representative columns."""
        params = list(params or [ZERO] * self.dimension)
        E = self.graph.edge_count
        p = ZERO
        q = ZERO
        for r in self.reps:
            col = self.column(params, r)
            p = max(p, l1_norm(col))
            q = max(q, l1_norm(_sub(_unit(E, r), col)))
        return p, q


# ----------------------------------------------------------------------------
# averaging path


def _orbital_ops(
    E: int, maps: Sequence[SignedEdgeMap], rep: int
) -> tuple[dict, list[dict]]:
    """Coset representatives for ``rep`` and the live orbitals through it.

    ``coset[e]`` is a group element sending ``rep`` to ``e``.

    Each returned pattern ``{f: +-1}`` is one orbital: the matrix ``C`` with
    ``C[g rep, g f] = s_g(rep) s_g(f) pattern[f]``.
    """
    coset: dict[int, SignedEdgeMap] = {}
    stab = []
    for g in maps:
        e = g.image[rep]
        if e not in coset:
            coset[e] = g
        if e == rep:
            stab.append(g)
    seen = [False] * E
    patterns = []
    for f0 in range(E):
        if seen[f0]:
            continue
        pat: dict[int, int] = {}
        dead = False
        for h in stab:
            f = h.image[f0]
            val = h.sign[rep] * h.sign[f0]
            seen[f] = True
            old = pat.get(f)
            if old is None:
                pat[f] = val
            elif old != val:
                dead = True
        if not dead:
            patterns.append(pat)
    return coset, patterns


def _orbital_apply(coset: dict, pattern: dict, rep: int, v: Sequence) -> Vector:
    out = [ZERO] * len(v)
    for e, g in coset.items():
        acc = ZERO
        img, sgn = g.image, g.sign
        for f, p in pattern.items():
            x = v[img[f]]
            if x:
                acc += x if p * sgn[f] > 0 else -x
        if acc:
            out[e] = acc if sgn[rep] > 0 else -acc
    return out


def _averaging_candidates(G, group, projector, orbits, caps):
    try:
        maps = group.element_maps(caps)
    except SizeCapExceeded as exc:
        raise GroupNotEnumerated(str(exc)) from exc
    E = G.edge_count
    ops: list[Apply] = []
    for orbit in orbits:
        rep = orbit[0]
        coset, patterns = _orbital_ops(E, maps, rep)
        for pat in patterns:
            def op(x, coset=coset, pat=pat, rep=rep):
                w = projector.apply(x)
                y = _orbital_apply(coset, pat, rep, w)
                return _sub(y, projector.apply(y))
            ops.append(op)
    return ops


# ----------------------------------------------------------------------------
# nullspace path


def _cycle_coordinates(chords: Sequence[int], z: Sequence) -> list:
    return [z[c] for c in chords]


def _nullspace_candidates(G, group, projector):
    T = spanning_tree(G)
    Z = cycle_basis(G)
    chords = T.chords
    c = len(Z)
    nb = G.vertex_count - 1
    ncols = c * nb
    rows = []
    for vperm, emap in zip(group.vertex_generators, group.generators):
        # A_B(g): column v (cut vertex v+1) is the coordinate vector of X(g(v+1))
        AB_cols = []
        for v in range(1, G.vertex_count):
            gv = vperm[v]
            AB_cols.append({gv - 1: 1} if gv else {u: -1 for u in range(nb)})
        # A_Z(g): column k is g^ z_k in cycle coordinates
        AZ = [_cycle_coordinates(chords, emap.apply(z)) for z in Z]  # AZ[k][i]
        for i in range(c):
            for v in range(nb):
                row: dict[int, Fraction] = {}
                for u, a in AB_cols[v].items():
                    key = i * nb + u
                    row[key] = row.get(key, ZERO) + a
                for j in range(c):
                    a = AZ[j][i]
                    if a:
                        key = j * nb + v
                        row[key] = row.get(key, ZERO) - a
                rows.append(row)
    sols = sparse_nullspace(rows, ncols)
    ops: list[Apply] = []
    for q in sols:
        Q = [q[i * nb : (i + 1) * nb] for i in range(c)]

        def op(x, Q=Q):
            coords = [-p for p in projector.potential(x)[1:]]
            y = [sum((a * b for a, b in zip(row, coords) if a and b), ZERO) for row in Q]
            out = [ZERO] * G.edge_count
            for k, yk in enumerate(y):
                if yk:
                    for e, ze in enumerate(Z[k]):
                        if ze:
                            out[e] += yk * ze
            return out
        ops.append(op)
    return ops


# ----------------------------------------------------------------------------


def commutant_family(
    G: OrientedGraph, group: GroupSpec, method: str = "auto", caps=DEFAULT_CAPS
) -> ProjectionFamily:
    """All invariant projections onto ``Z(G)`` for ``group``.

    ``method`` is ``"averaging"``, ``"nullspace"`` or ``"auto"`` (averaging
    when the group closes within ``caps.enumerate_limit`` elements).
    """
    if group.graph is not G and group.graph.edges != G.edges:
        raise ValueError("group acts on a different graph")
    projector = CutProjector(G)
    orbits = edge_orbits(G, group.generators)
    if method == "auto":
        try:
            group.enumerate(replace(caps, max_group=min(caps.max_group, caps.enumerate_limit)))
            method = "averaging"
        except SizeCapExceeded:
            method = "nullspace"
    if method == "averaging":
        ops = _averaging_candidates(G, group, projector, orbits, caps)
    elif method == "nullspace":
        ops = _nullspace_candidates(G, group, projector)
    else:
        raise ValueError(f"unknown method {method!r}")

    E = G.edge_count
    reps = [o[0] for o in orbits]
    pb_cols = {r: projector.apply(_unit(E, r)) for r in reps}
    orth_cols = {r: _sub(_unit(E, r), pb_cols[r]) for r in reps}
    cand_cols = [{r: op(_unit(E, r)) for r in reps} for op in ops]
    stacked = [[x for r in reps for x in cols[r]] for cols in cand_cols]
    keep = independent_rows(stacked)
    return ProjectionFamily(
        graph=G,
        group=group,
        method=method,
        projector=projector,
        orbits=orbits,
        orth_columns=orth_cols,
        basis_columns=[cand_cols[k] for k in keep],
        basis_ops=[ops[k] for k in keep],
    )


def average_projection(P0: Sequence[Sequence], group: GroupSpec, caps=DEFAULT_CAPS) -> list:
    """``(1/|G|) sum_g g^{-1} P0 g`` over the enumerated group."""
    try:
        maps = group.element_maps(caps)
    except SizeCapExceeded as exc:
        raise GroupNotEnumerated(str(exc)) from exc
    E = len(P0)
    den = common_denominator(x for row in P0 for x in row)
    Pint = [[int(x * den) for x in row] for row in P0]
    acc = [[0] * E for _ in range(E)]
    for g in maps:
        img, sgn = g.image, g.sign
        for x in range(E):
            src = Pint[img[x]]
            sx = sgn[x]
            row = acc[x]
            for f in range(E):
                v = src[img[f]]
                if v:
                    row[f] += v if sx * sgn[f] > 0 else -v
    total = den * len(maps)
    return [[Fraction(v, total) for v in row] for row in acc]


# ----------------------------------------------------------------------------
# minimisation


@dataclass
class MinimalProjection:
    family: ProjectionFamily
    parameters: list
    norm: Fraction
    i_minus_norm: Fraction
    unique: bool

    def matrix(self) -> list[list[Fraction]]:
        return self.family.matrix(self.parameters)

    @property
    def is_orthogonal(self) -> bool:
        return not any(self.parameters)


def _l1_lp(family: ProjectionFamily, caps, extra_eq=None, objective=None):
    """LP data for ``min max_r ||P(x) e_r||_1``.

    Variable layout: ``x`` (free), then ``u_r, w_r`` per representative,
    then ``t`` when there are several representatives.
    """
    K = family.dimension
    E = family.graph.edge_count
    reps = family.reps
    R = len(reps)
    nvar = K + 2 * E * R + (1 if R > 1 else 0)
    A_eq, b_eq = [], []
    for ri, r in enumerate(reps):
        base = K + 2 * E * ri
        p = family.orth_columns[r]
        for e in range(E):
            row = [ZERO] * nvar
            for k in range(K):
                row[k] = family.basis_columns[k][r][e]
            row[base + e] = -ONE
            row[base + E + e] = ONE
            A_eq.append(row)
            b_eq.append(-p[e])
    A_ub, b_ub = [], []
    cost = [ZERO] * nvar
    if R == 1:
        for j in range(K, nvar):
            cost[j] = ONE
    else:
        cost[-1] = ONE
        for ri in range(R):
            row = [ZERO] * nvar
            base = K + 2 * E * ri
            for j in range(base, base + 2 * E):
                row[j] = ONE
            row[-1] = -ONE
            A_ub.append(row)
            b_ub.append(ZERO)
    if extra_eq is not None:
        A_eq.append(list(cost))
        b_eq.append(extra_eq)
    if objective is not None:
        cost = objective(nvar)
    return linprog(cost, A_ub, b_ub, A_eq, b_eq, free=range(K), caps=caps)


def minimize_l1(family: ProjectionFamily, check_unique: bool = True, caps=DEFAULT_CAPS) -> MinimalProjection:
    """Exact minimiser of ``||P||_1`` over the invariant family.

    Uniqueness is decided by minimising and maximising every parameter over
    the optimal face; the minimiser is unique iff each range is a point.
    """
    K = family.dimension
    if K == 0:
        p, q = family.norms()
        return MinimalProjection(family, [], p, q, True)
    res = _l1_lp(family, caps)
    if res.status != "optimal":
        raise LpError(f"l1 minimisation LP is {res.status}")
    params = res.x[:K]
    opt = res.value
    unique = True
    if check_unique:
        for k in range(K):
            ends = []
            for sign in (ONE, -ONE):
                def obj(nvar, k=k, sign=sign):
                    c = [ZERO] * nvar
                    c[k] = sign
                    return c
                r = _l1_lp(family, caps, extra_eq=opt, objective=obj)
                if r.status != "optimal":
                    raise LpError(f"face LP is {r.status}")
                ends.append(r.x[k])
            if ends[0] != ends[1]:
                unique = False
                break
    p, q = family.norms(params)
    if p != opt:
        raise LpError("LP optimum disagrees with the recomputed norm")
    return MinimalProjection(family, params, p, q, unique)


# ----------------------------------------------------------------------------
# torus specifics


def _u_orbit(n: int, i: int, j: int) -> list[tuple[int, tuple[int, int]]]:
    """Signed images of ``S((i, j))`` under the reflection/swap group."""
    m = lambda a: a % n  # noqa: E731
    return [
        (1, (i, j)),
        (-1, (m(-i - 1), j)),
        (-1, (j, i)),
        (1, (m(-j - 1), i)),
        (-1, (i, m(-j - 1))),
        (1, (m(-i - 1), m(-j - 1))),
        (-1, (m(-j - 1), m(-i - 1))),
        (1, (j, m(-i - 1))),
    ]


def torus_invariant_pairs(n: int) -> list[tuple[int, int]]:
    """One ``(i, j)`` per orbit of admissible small-square corners."""
    k = n // 2
    seen = set()
    out = []
    for i in range(n):
        for j in range(n):
            if j == i or j == (-i - 1) % n:
                continue
            if n % 2 and (i == k or j == k):
                continue
            if (i, j) in seen:
                continue
            orbit = {p for _, p in _u_orbit(n, i, j)}
            seen |= orbit
            out.append((i, j))
    return out


def torus_invariant_basis(n: int) -> list[list[Fraction]]:
    """Reflection/swap invariant cycle vectors built from small squares."""
    if n < 5:
        raise ValueError("the small-square construction is used for n >= 5")
    G = torus_graph(n)
    out = []
    for i, j in torus_invariant_pairs(n):
        v = [ZERO] * G.edge_count
        for s, corner in _u_orbit(n, i, j):
            for e, x in enumerate(small_square(G, corner)):
                if x:
                    v[e] += s * x
        out.append(v)
    return out


def family_values_at(family: ProjectionFamily, x: Sequence) -> list[Vector]:
    """``[M_k x]`` for every basis map."""
    return [op(x) for op in family.basis_ops]


# ----------------------------------------------------------------------------
# non-invariant projections used as test inputs


def spanning_tree_projection(G: OrientedGraph) -> list[list[Fraction]]:
    """Projection onto ``Z`` killing tree edges and sending each chord to its cycle."""
    T = spanning_tree(G)
    Z = cycle_basis(G)
    E = G.edge_count
    P = [[ZERO] * E for _ in range(E)]
    for c, z in zip(T.chords, Z):
        for e, v in enumerate(z):
            P[e][c] = v
    return P


def random_projection(family: ProjectionFamily, rng: random.Random, spread: int = 2) -> list:
    """``P_orth + P_orth X P_B`` for a random integer matrix ``X``."""
    E = family.graph.edge_count
    X = [[Fraction(rng.randint(-spread, spread)) for _ in range(E)] for _ in range(E)]
    Porth, PB = family.P_orth, family.P_B
    Y = matmul(matmul(Porth, X), PB)
    return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(Porth, Y)]


def is_invariant(P: Sequence[Sequence], maps: Sequence[SignedEdgeMap]) -> bool:
    """``P g^ = g^ P`` for every map, checked entrywise."""
    E = len(P)
    for g in maps:
        img, sgn = g.image, g.sign
        for x in range(E):
            row = P[img[x]]
            for f in range(E):
                if row[img[f]] != sgn[x] * sgn[f] * P[x][f]:
                    return False
    return True


def column_norms_equal(P: Sequence[Sequence]) -> bool:
    norms = {sum(abs(x) for x in col) for col in zip(*P)}
    return len(norms) == 1


def operator_norms(P: Sequence[Sequence]) -> tuple[Fraction, Fraction]:
    E = len(P)
    IminusP = [[(ONE if i == j else ZERO) - P[i][j] for j in range(E)] for i in range(E)]
    return l1_operator_norm(P), l1_operator_norm(IminusP)


# ----------------------------------------------------------------------------
# reports


@dataclass
class ProjectionReport:
    vertices: int
    edges: int
    group_order: int | None
    edge_transitive: bool
    dimension: int
    method: str
    p_orth_norm: Fraction
    i_minus_p_orth_norm: Fraction
    p_min_norm: Fraction
    i_minus_p_min_norm: Fraction
    unique_minimizer: bool
    parameters: list
    trace_value: Fraction | None  # <P e, e>, the same for every invariant P
    bounds: ProjectionBounds

    @property
    def lambda_lip0(self) -> Fraction | None:
        return self.bounds.lambda_exact


def projection_report(
    G: OrientedGraph, group: GroupSpec, method: str = "auto", caps=DEFAULT_CAPS,
    family: ProjectionFamily | None = None,
) -> ProjectionReport:
    """Norms of the orthogonal and the minimal invariant projection, with bounds.

    On an edge-transitive group the projection constant of ``Lip_0(G)`` is
    exactly ``||I - P_min||_1``; otherwise only the lower bound is reported.
    """
    fam = family or commutant_family(G, group, method, caps)
    p_orth, i_orth = fam.norms()
    best = minimize_l1(fam, caps=caps)
    r0 = fam.reps[0]
    trace = fam.column(best.parameters, r0)[r0] if fam.edge_transitive else None
    lam = best.i_minus_norm if fam.edge_transitive else None
    bounds = bounds_from_projection(G, best.norm, best.i_minus_norm, lambda_exact=lam)
    return ProjectionReport(
        vertices=G.vertex_count,
        edges=G.edge_count,
        group_order=len(group.elements) if group.elements is not None else None,
        edge_transitive=fam.edge_transitive,
        dimension=fam.dimension,
        method=fam.method,
        p_orth_norm=p_orth,
        i_minus_p_orth_norm=i_orth,
        p_min_norm=best.norm,
        i_minus_p_min_norm=best.i_minus_norm,
        unique_minimizer=best.unique,
        parameters=list(best.parameters),
        trace_value=trace,
        bounds=bounds,
    )
