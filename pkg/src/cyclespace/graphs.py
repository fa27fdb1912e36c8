"""Oriented graphs, incidence matrices, cycle/cut bases and canonical graphs.

Edges are stored in input order and that order indexes every edge vector
and matrix in the package.  An edge ``(t, h, w)`` is oriented from its tail
``t`` to its head ``h``; the incidence matrix has ``+1`` at the head and
``-1`` at the tail.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .caps import DEFAULT_CAPS, check
from .errors import (
    DisconnectedGraph,
    InvalidMetric,
    NonpositiveWeight,
    ParallelEdge,
    SelfLoop,
    UnsupportedParameter,
)
from .linalg import ONE, ZERO, LUSolver, format_rational, parse_rational


@dataclass(frozen=True)
class OrientedGraph:
    vertices: tuple
    edges: tuple  # ((tail, head, weight), ...)
    _pairs: dict = field(repr=False, compare=False)
    _labels: dict = field(repr=False, compare=False)
    _incident: tuple = field(repr=False, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def index(self, label: Hashable) -> int:
        return self._labels[label]

    def edge_between(self, u: int, v: int) -> tuple[int, int] | None:
        """``(edge index, +1 if oriented u -> v else -1)`` or ``None``."""
        e = self._pairs.get((u, v) if u < v else (v, u))
        if e is None:
            return None
        return e, (1 if self.edges[e][0] == u else -1)

    def incident(self, v: int) -> tuple[int, ...]:
        """Indices of edges at ``v``, increasing."""
        return self._incident[v]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for e in self._incident[v]:
            t, h, _ = self.edges[e]
            out.append(h if t == v else t)
        return out

    def weights(self) -> list[Fraction]:
        return [w for _, _, w in self.edges]

    @property
    def cycle_rank(self) -> int:
        return self.edge_count - self.vertex_count + 1


def build_graph(vertices, edge_list: Iterable[Sequence]) -> OrientedGraph:
    """Validate and index a simple connected graph.

    ``vertices`` is a vertex count or a sequence of distinct labels; edges
    are ``(tail, head)`` or ``(tail, head, weight)`` with vertex indices.
    """
    if isinstance(vertices, int):
        labels = tuple(range(vertices))
    else:
        labels = tuple(vertices)
    n = len(labels)
    if n < 1:
        raise DisconnectedGraph("graph has no vertices")
    label_index = {lab: i for i, lab in enumerate(labels)}
    if len(label_index) != n:
        raise ValueError("vertex labels are not distinct")
    edges = []
    pairs: dict = {}
    incident: list[list[int]] = [[] for _ in range(n)]
    for item in edge_list:
        if len(item) == 2:
            t, h = item
            w = ONE
        else:
            t, h, w = item
            w = parse_rational(w)
        t, h = int(t), int(h)
        if not (0 <= t < n and 0 <= h < n):
            raise ValueError(f"edge ({t}, {h}) has an endpoint out of range")
        if t == h:
            raise SelfLoop(f"self-loop at vertex {t}")
        if w <= 0:
            raise NonpositiveWeight(f"edge ({t}, {h}) has weight {w}")
        key = (t, h) if t < h else (h, t)
        if key in pairs:
            raise ParallelEdge(f"repeated vertex pair {key}")
        pairs[key] = len(edges)
        incident[t].append(len(edges))
        incident[h].append(len(edges))
        edges.append((t, h, w))
    g = OrientedGraph(labels, tuple(edges), pairs, label_index, tuple(map(tuple, incident)))
    if len(_bfs_order(g)) != n:
        raise DisconnectedGraph("graph is not connected")
    return g


def _bfs_order(G: OrientedGraph, root: int = 0) -> list[int]:
    seen = [False] * G.vertex_count
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in G.neighbors(v):
            if not seen[u]:
                seen[u] = True
                order.append(u)
                queue.append(u)
    return order


# ----------------------------------------------------------------------------
# families


def torus_graph(n: int, m: int = 2, caps=DEFAULT_CAPS) -> OrientedGraph:
    """The discrete torus on ``Z_n^m`` with coordinate-increment orientation.

    ``n = 2`` is only accepted with ``m = 2`` and gives the 4-cycle: each
    pair ``v, v + e_j`` is joined once, oriented from the endpoint whose
    ``j``-th coordinate is 0.
    """
    if n < 2 or m < 1:
        raise UnsupportedParameter(f"torus needs n >= 2 and m >= 1, got n={n}, m={m}")
    if n == 2 and m != 2:
        raise UnsupportedParameter("n = 2 is only supported for m = 2 (the 4-cycle)")
    check(n**m, caps.max_graph_vertices, "torus vertex count")
    verts = list(itertools.product(range(n), repeat=m))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for j in range(m):
            if n == 2 and v[j] != 0:
                continue
            w = v[:j] + ((v[j] + 1) % n,) + v[j + 1 :]
            edges.append((index[v], index[w]))
    return build_graph(verts, edges)


def hamming_graph(n: int, m: int, caps=DEFAULT_CAPS) -> OrientedGraph:
    """Words of length ``m`` over ``{0..n-1}``, adjacent at Hamming distance 1.

    Edges run from the smaller to the larger symbol in the differing
    coordinate.
    """
    if n < 2 or m < 1:
        raise UnsupportedParameter(f"Hamming graph needs n >= 2 and m >= 1, got n={n}, m={m}")
    check(n**m, caps.max_graph_vertices, "Hamming graph vertex count")
    verts = list(itertools.product(range(n), repeat=m))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for j in range(m):
            for s in range(v[j] + 1, n):
                w = v[:j] + (s,) + v[j + 1 :]
                edges.append((index[v], index[w]))
    return build_graph(verts, edges)


# ----------------------------------------------------------------------------
# incidence, bases, projections


def incidence_matrix(G: OrientedGraph) -> list[list[Fraction]]:
    D = [[ZERO] * G.edge_count for _ in range(G.vertex_count)]
    for e, (t, h, _) in enumerate(G.edges):
        D[h][e] = ONE
        D[t][e] = -ONE
    return D


def divergence(G: OrientedGraph, x: Sequence) -> list:
    """``D x``: net inflow at each vertex."""
    out = [ZERO] * G.vertex_count
    for (t, h, _), v in zip(G.edges, x):
        if v:
            out[h] += v
            out[t] -= v
    return out


def gradient(G: OrientedGraph, phi: Sequence) -> list:
    """``D^T phi``: head minus tail along every edge."""
    return [phi[h] - phi[t] for t, h, _ in G.edges]


@dataclass(frozen=True)
class SpanningTree:
    parent: tuple  # parent vertex, -1 at the root
    parent_edge: tuple  # edge to the parent, -1 at the root
    depth: tuple
    chords: tuple  # non-tree edges in edge order


def spanning_tree(G: OrientedGraph) -> SpanningTree:
    """Breadth-first tree rooted at vertex 0, scanning edges in index order."""
    n = G.vertex_count
    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[0] = True
    in_tree = [False] * G.edge_count
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in G.incident(v):
            t, h, _ = G.edges[e]
            u = h if t == v else t
            if not seen[u]:
                seen[u] = True
                parent[u], parent_edge[u], depth[u] = v, e, depth[v] + 1
                in_tree[e] = True
                queue.append(u)
    chords = tuple(e for e in range(G.edge_count) if not in_tree[e])
    return SpanningTree(tuple(parent), tuple(parent_edge), tuple(depth), chords)


def tree_path_flow(G: OrientedGraph, T: SpanningTree, src: int, dst: int) -> dict[int, int]:
    """Unit flow from ``src`` to ``dst`` along the tree, as ``{edge: sign}``."""
    flow: dict[int, int] = {}
    a, b = src, dst
    while a != b:
        if T.depth[a] >= T.depth[b]:
            e = T.parent_edge[a]
            flow[e] = 1 if G.edges[e][0] == a else -1  # a -> parent(a)
            a = T.parent[a]
        else:
            e = T.parent_edge[b]
            flow[e] = 1 if G.edges[e][1] == b else -1  # parent(b) -> b
            b = T.parent[b]
    return flow


def cycle_basis(G: OrientedGraph) -> list[list[Fraction]]:
    """Fundamental cycles of the BFS tree, one per chord, chord entry ``+1``."""
    T = spanning_tree(G)
    basis = []
    for c in T.chords:
        t, h, _ = G.edges[c]
        z = [ZERO] * G.edge_count
        z[c] = ONE
        for e, s in tree_path_flow(G, T, h, t).items():
            z[e] = Fraction(s)
        basis.append(z)
    return basis


def cut_vector(G: OrientedGraph, v: int) -> list[Fraction]:
    """``X(v)``: ``+1`` on edges leaving ``v``, ``-1`` on edges entering it."""
    x = [ZERO] * G.edge_count
    for e in G.incident(v):
        x[e] = ONE if G.edges[e][0] == v else -ONE
    return x


def cut_basis(G: OrientedGraph) -> list[list[Fraction]]:
    return [cut_vector(G, v) for v in range(1, G.vertex_count)]


class CutProjector:
    """Orthogonal projection ``P_B`` onto the cut space.

    ``P_B = D0^T L0^{-1} D0`` where ``D0`` is the incidence matrix without
    the row of vertex 0 and ``L0 = D0 D0^T`` is the reduced Laplacian.
    """

    def __init__(self, G: OrientedGraph):
        self.G = G
        n = G.vertex_count
        L = [[ZERO] * (n - 1) for _ in range(n - 1)]
        for t, h, _ in G.edges:
            for a in (t, h):
                if a:
                    L[a - 1][a - 1] += 1
            if t and h:
                L[t - 1][h - 1] -= 1
                L[h - 1][t - 1] -= 1
        self._lu = LUSolver(L) if n > 1 else None

    def potential(self, x: Sequence) -> list:
        """Potential ``phi`` with ``phi(0) = 0`` whose gradient is ``P_B x``."""
        div = divergence(self.G, x)
        if self._lu is None:
            return [ZERO]
        return [ZERO] + self._lu.solve(div[1:])

    def apply(self, x: Sequence) -> list:
        return gradient(self.G, self.potential(x))

    def matrix(self) -> list[list[Fraction]]:
        E = self.G.edge_count
        cols = []
        for f in range(E):
            unit = [ZERO] * E
            unit[f] = ONE
            cols.append(self.apply(unit))
        # P_B is symmetric, so its columns are its rows
        return cols


def orthogonal_projection(G: OrientedGraph) -> list[list[Fraction]]:
    """``P_orth``: the orthogonal projection of the edge space onto ``Z(G)``."""
    PB = CutProjector(G).matrix()
    E = G.edge_count
    return [[(ONE if i == j else ZERO) - PB[i][j] for j in range(E)] for i in range(E)]


# ----------------------------------------------------------------------------
# metric spaces


@dataclass(frozen=True)
class MetricSpace:
    distances: tuple  # tuple of tuples of Fractions

    def __post_init__(self):
        d = tuple(tuple(parse_rational(x) for x in row) for row in self.distances)
        object.__setattr__(self, "distances", d)
        n = len(d)
        if n < 1:
            raise InvalidMetric("metric space has no points")
        for i in range(n):
            if len(d[i]) != n:
                raise InvalidMetric("distance matrix is not square")
            if d[i][i] != 0:
                raise InvalidMetric(f"d({i},{i}) is not 0")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise InvalidMetric(f"d({i},{j}) != d({j},{i})")
                if d[i][j] <= 0:
                    raise InvalidMetric(f"d({i},{j}) is not positive")
        for i, j, k in itertools.permutations(range(n), 3):
            if d[i][j] > d[i][k] + d[k][j]:
                raise InvalidMetric(f"triangle inequality fails for ({i},{k},{j})")

    @property
    def point_count(self) -> int:
        return len(self.distances)

    def d(self, u: int, v: int) -> Fraction:
        return self.distances[u][v]


def canonical_graph(X: MetricSpace) -> OrientedGraph:
    """Complete graph on the points minus every pair with a metric midpoint."""
    n = X.point_count
    d = X.distances
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            duv = d[u][v]
            if not any(d[u][w] + d[w][v] == duv for w in range(n) if w != u and w != v):
                edges.append((u, v, duv))
    return build_graph(n, edges)


def shortest_path_distances(G: OrientedGraph) -> list[list[Fraction]]:
    """All-pairs weighted shortest paths (Floyd-Warshall, exact)."""
    n = G.vertex_count
    dist: list[list] = [[None] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = ZERO
    for t, h, w in G.edges:
        dist[t][h] = dist[h][t] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is not None and (di[j] is None or dik + dkj < di[j]):
                    di[j] = dik + dkj
    return dist


def graph_metric(G: OrientedGraph) -> MetricSpace:
    return MetricSpace(tuple(map(tuple, shortest_path_distances(G))))


# ----------------------------------------------------------------------------
# JSON


def graph_from_json(obj: dict) -> OrientedGraph:
    return build_graph(int(obj["vertices"]), [tuple(e) for e in obj["edges"]])


def graph_to_json(G: OrientedGraph) -> dict:
    return {
        "vertices": G.vertex_count,
        "edges": [[t, h, format_rational(w)] for t, h, w in G.edges],
    }


def metric_from_json(obj: dict) -> MetricSpace:
    d = obj["d"]
    if "points" in obj and int(obj["points"]) != len(d):
        raise InvalidMetric("'points' does not match the distance matrix")
    return MetricSpace(tuple(tuple(row) for row in d))


def metric_to_json(X: MetricSpace) -> dict:
    return {
        "points": X.point_count,
        "d": [[format_rational(x) for x in row] for row in X.distances],
    }


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
