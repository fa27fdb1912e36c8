"""Transportation cost norms, Wasserstein-1 distances and Lipschitz duals.

For a zero-sum ``f`` on the vertices, ``||f||_tc`` is the least weighted
cost ``sum_e w_e |F(e)|`` of a flow with ``D F = f``.  The dual problem
maximises ``<f, g>`` over potentials with ``|g(h) - g(t)| <= w`` on every
edge and ``g(0) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .caps import DEFAULT_CAPS
from .errors import LpError, NotProbability, UnbalancedProblem
from .graphs import OrientedGraph, cycle_basis, divergence, spanning_tree
from .linalg import ONE, ZERO, parse_rational
from .lp import LpProblem, linprog, solve


@dataclass(frozen=True)
class TransportationProblem:
    values: tuple  # one Rational per vertex

    def __post_init__(self):
        vals = tuple(parse_rational(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if sum(vals, ZERO) != 0:
            raise UnbalancedProblem(f"values sum to {sum(vals, ZERO)}, not 0")

    @classmethod
    def from_mapping(cls, values: Mapping, vertex_count: int) -> TransportationProblem:
        out = [ZERO] * vertex_count
        for k, v in values.items():
            idx = int(k)
            if not 0 <= idx < vertex_count:
                raise ValueError(f"vertex {k} out of range")
            out[idx] = parse_rational(v)
        return cls(tuple(out))

    @classmethod
    def point_masses(cls, u: int, v: int, vertex_count: int) -> TransportationProblem:
        out = [ZERO] * vertex_count
        out[u] += 1
        out[v] -= 1
        return cls(tuple(out))


@dataclass(frozen=True)
class TransportPlan:
    flow: tuple
    cost: Fraction


@dataclass(frozen=True)
class LipschitzWitness:
    potentials: tuple  # potentials[0] == 0

    def pairing(self, f: TransportationProblem) -> Fraction:
        return sum((a * b for a, b in zip(f.values, self.potentials)), ZERO)

    def lipschitz_ok(self, G: OrientedGraph) -> bool:
        g = self.potentials
        return g[0] == 0 and all(abs(g[h] - g[t]) <= w for t, h, w in G.edges)


def _as_problem(f, G: OrientedGraph) -> TransportationProblem:
    if not isinstance(f, TransportationProblem):
        f = TransportationProblem(tuple(f))
    if len(f.values) != G.vertex_count:
        raise ValueError(f"problem has {len(f.values)} values for {G.vertex_count} vertices")
    return f


def flow_cost(G: OrientedGraph, flow: Sequence) -> Fraction:
    return sum((w * abs(x) for (_, _, w), x in zip(G.edges, flow)), ZERO)


def tc_norm(f, G: OrientedGraph, caps=DEFAULT_CAPS) -> tuple[Fraction, TransportPlan]:
    """Least cost of a flow ``F`` with ``D F = f``, with an optimal flow."""
    f = _as_problem(f, G)
    E = G.edge_count
    if not any(f.values):
        return ZERO, TransportPlan((ZERO,) * E, ZERO)
    # F = F+ - F-; the balance row of vertex 0 is implied by the others
    rows = []
    for v in range(1, G.vertex_count):
        row = [ZERO] * (2 * E)
        for e in G.incident(v):
            s = ONE if G.edges[e][1] == v else -ONE
            row[e] = s
            row[E + e] = -s
        rows.append(row)
    w = G.weights()
    res = solve(LpProblem(w + w, rows, list(f.values[1:])), caps)
    if res.status != "optimal":
        raise LpError(f"transport LP is {res.status}")
    flow = tuple(a - b for a, b in zip(res.x[:E], res.x[E:]))
    return res.value, TransportPlan(flow, flow_cost(G, flow))


def dual_certificate(f, G: OrientedGraph, caps=DEFAULT_CAPS) -> LipschitzWitness:
    """A 1-Lipschitz potential attaining ``<f, g> = ||f||_tc``, from the dual LP."""
    f = _as_problem(f, G)
    n = G.vertex_count
    if not any(f.values):
        return LipschitzWitness((ZERO,) * n)
    A_ub, b_ub = [], []
    for t, h, w in G.edges:
        for sign in (ONE, -ONE):
            row = [ZERO] * (n - 1)
            if h:
                row[h - 1] += sign
            if t:
                row[t - 1] -= sign
            A_ub.append(row)
            b_ub.append(w)
    cost = [-v for v in f.values[1:]]
    res = linprog(cost, A_ub, b_ub, free=range(n - 1), caps=caps)
    if res.status != "optimal":
        raise LpError(f"dual transport LP is {res.status}")
    return LipschitzWitness((ZERO,) + tuple(res.x))


def particular_flow(f, G: OrientedGraph) -> list[Fraction]:
    """The unique flow supported on the BFS spanning tree with ``D x = f``."""
    f = _as_problem(f, G)
    T = spanning_tree(G)
    order = sorted(range(G.vertex_count), key=lambda v: -T.depth[v])
    demand = list(f.values)  # inflow still required inside each subtree
    x = [ZERO] * G.edge_count
    for v in order:
        p = T.parent[v]
        if p < 0:
            continue
        e = T.parent_edge[v]
        amount = demand[v]  # must flow from p into v
        x[e] = amount if G.edges[e][1] == v else -amount
        demand[p] += amount
    return x


def quotient_norm(x: Sequence, G: OrientedGraph, caps=DEFAULT_CAPS) -> Fraction:
    """``min_y ||x + Z y||_{1,w}`` over the cycle space, as its own LP."""
    Z = cycle_basis(G)
    E, c = G.edge_count, len(Z)
    if c == 0:
        return flow_cost(G, x)
    # x + Z y = u - v, u, v >= 0
    A_eq, b_eq = [], []
    for e in range(E):
        row = [ZERO] * (c + 2 * E)
        for k in range(c):
            row[k] = Z[k][e]
        row[c + e] = -ONE
        row[c + E + e] = ONE
        A_eq.append(row)
        b_eq.append(-Fraction(x[e]))
    w = G.weights()
    cost = [ZERO] * c + w + w
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, free=range(c), caps=caps)
    if res.status != "optimal":
        raise LpError(f"quotient LP is {res.status}")
    return res.value


def _probability(p: Sequence) -> list[Fraction]:
    vals = [parse_rational(v) for v in p]
    if any(v < 0 for v in vals):
        raise NotProbability("negative mass")
    if sum(vals, ZERO) != 1:
        raise NotProbability(f"masses sum to {sum(vals, ZERO)}, not 1")
    return vals


def wasserstein1(mu: Sequence, nu: Sequence, G: OrientedGraph, caps=DEFAULT_CAPS) -> Fraction:
    p, q = _probability(mu), _probability(nu)
    if len(p) != G.vertex_count or len(q) != G.vertex_count:
        raise ValueError("measures must have one mass per vertex")
    return tc_norm(TransportationProblem(tuple(a - b for a, b in zip(p, q))), G, caps)[0]


def check_plan(f, G: OrientedGraph, plan: TransportPlan) -> bool:
    f = _as_problem(f, G)
    return divergence(G, plan.flow) == list(f.values) and plan.cost == flow_cost(G, plan.flow)


# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionBounds:
    """Bounds derived from the norm of a minimal projection onto ``Z(G)``."""

    dimension: int  # N = |V| - 1
    c1_upper: Fraction  # L1 distortion of the transportation cost space
    c1_wasserstein_upper: Fraction  # same bound for (P(G), W1); rests on a cited equality
    lambda_lower: Fraction  # projection constant of Lip_0(G)
    lambda_exact: Fraction | None
    bm_lower: Fraction  # Banach-Mazur distance to l1^N
    bm_upper: Fraction | None = None

    def to_json(self) -> dict:
        def s(q):
            return None if q is None else str(q)

        return {
            "N": self.dimension,
            "c1_upper": s(self.c1_upper),
            "c1_wasserstein_upper": s(self.c1_wasserstein_upper),
            "lambda_lower": s(self.lambda_lower),
            "lambda_exact": s(self.lambda_exact),
            "bm_lower": s(self.bm_lower),
            "bm_upper": s(self.bm_upper),
        }


def bounds_from_projection(
    G: OrientedGraph,
    p_min_norm,
    i_minus_p_min_norm,
    lambda_exact=None,
    cube_dimension: int | None = None,
) -> ProjectionBounds:
    """Distortion, projection-constant and Banach-Mazur bounds.

    ``lambda_exact`` is supplied when it is known (for an edge-transitive
    symmetry group it equals ``||I - P_min||_1``); the Banach-Mazur distance
    is at least the projection constant, so it sharpens that bound.  For the
    cube ``{0,1}^n`` pass ``cube_dimension = n`` to add the upper bound
    ``2n``.
    """
    p = parse_rational(p_min_norm)
    q = parse_rational(i_minus_p_min_norm)
    lam = None if lambda_exact is None else parse_rational(lambda_exact)
    lower = p - 1
    bm = lower if lam is None else max(lower, lam)
    upper = None if cube_dimension is None else Fraction(2 * cube_dimension)
    return ProjectionBounds(G.vertex_count - 1, q, q, lower, lam, bm, upper)
