"""Graph automorphisms and their signed action on edge vectors.

A vertex automorphism ``g`` acts on the edge space by ``g^ e_f = s e_{g f}``
where ``s = -1`` exactly when ``g`` reverses the reference orientation of
``f``.  With cut vectors oriented outwards this gives ``g^ X(v) = X(g v)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .caps import DEFAULT_CAPS, check
from .errors import NotAnAutomorphism, NotClosed, UnsupportedParameter
from .graphs import OrientedGraph, hamming_graph, torus_graph
from .linalg import ZERO

Perm = tuple  # vertex permutation: perm[v] is the image of v


@dataclass(frozen=True)
class GraphAutomorphism:
    permutation: tuple

    def __call__(self, v: int) -> int:
        return self.permutation[v]


def compose(g: Sequence[int], h: Sequence[int]) -> Perm:
    """``g o h``: apply ``h`` first."""
    return tuple(g[x] for x in h)


def invert(g: Sequence[int]) -> Perm:
    out = [0] * len(g)
    for v, w in enumerate(g):
        out[w] = v
    return tuple(out)


def is_automorphism(G: OrientedGraph, perm: Sequence[int]) -> bool:
    n = G.vertex_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        return False
    for t, h, w in G.edges:
        hit = G.edge_between(perm[t], perm[h])
        if hit is None or G.edges[hit[0]][2] != w:
            return False
    return True


@dataclass(frozen=True)
class SignedEdgeMap:
    """Signed permutation of edges: ``e_f -> sign[f] * e_{image[f]}``."""

    image: tuple
    sign: tuple

    @classmethod
    def identity(cls, edge_count: int) -> SignedEdgeMap:
        return cls(tuple(range(edge_count)), (1,) * edge_count)

    @classmethod
    def negation(cls, edge_count: int) -> SignedEdgeMap:
        return cls(tuple(range(edge_count)), (-1,) * edge_count)

    def __len__(self) -> int:
        return len(self.image)

    def apply(self, x: Sequence) -> list:
        out = [ZERO] * len(self.image)
        for f, v in enumerate(x):
            if v:
                out[self.image[f]] = v if self.sign[f] > 0 else -v
        return out

    def matrix(self) -> list[list[Fraction]]:
        E = len(self.image)
        M = [[ZERO] * E for _ in range(E)]
        for f, (e, s) in enumerate(zip(self.image, self.sign)):
            M[e][f] = Fraction(s)
        return M

    def compose(self, other: SignedEdgeMap) -> SignedEdgeMap:
        """``self o other``."""
        image = tuple(self.image[e] for e in other.image)
        sign = tuple(s * self.sign[e] for e, s in zip(other.image, other.sign))
        return SignedEdgeMap(image, sign)

    def inverse(self) -> SignedEdgeMap:
        E = len(self.image)
        image = [0] * E
        sign = [1] * E
        for f, (e, s) in enumerate(zip(self.image, self.sign)):
            image[e] = f
            sign[e] = s
        return SignedEdgeMap(tuple(image), tuple(sign))


def edge_action(g, G: OrientedGraph) -> SignedEdgeMap:
    perm = g.permutation if isinstance(g, GraphAutomorphism) else tuple(g)
    n = G.vertex_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotAnAutomorphism("not a permutation of the vertices")
    image = []
    sign = []
    for t, h, _ in G.edges:
        hit = G.edge_between(perm[t], perm[h])
        if hit is None:
            raise NotAnAutomorphism(f"edge ({t}, {h}) is not mapped to an edge")
        image.append(hit[0])
        sign.append(hit[1])
    return SignedEdgeMap(tuple(image), tuple(sign))


def closure(generators: Sequence[Sequence[int]], caps=DEFAULT_CAPS) -> list[Perm]:
    """All products of the generators, breadth first from the identity."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return []
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                check(len(order), caps.max_group, "group order")
                queue.append(y)
    return order


def edge_orbits(G: OrientedGraph, maps: Sequence[SignedEdgeMap]) -> list[list[int]]:
    """Orbits of the unsigned edge permutations, each sorted, by least edge."""
    E = G.edge_count
    orbit_of = [-1] * E
    orbits = []
    for start in range(E):
        if orbit_of[start] >= 0:
            continue
        k = len(orbits)
        orbit_of[start] = k
        members = [start]
        queue = deque([start])
        while queue:
            e = queue.popleft()
            for m in maps:
                f = m.image[e]
                if orbit_of[f] < 0:
                    orbit_of[f] = k
                    members.append(f)
                    queue.append(f)
        orbits.append(sorted(members))
    return orbits


@dataclass
class GroupSpec:
    """A group of edge-space isometries induced by vertex automorphisms.

    ``includes_negation`` records that ``-I`` belongs to the group as well;
    it is kept out of the element list because it commutes with every map
    and does not change any commutant.
    """

    graph: OrientedGraph
    vertex_generators: list
    includes_negation: bool = False
    elements: list | None = None
    _edge_generators: list | None = field(default=None, repr=False)
    _element_maps: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self.vertex_generators = [tuple(g) for g in self.vertex_generators]
        for g in self.vertex_generators:
            if not is_automorphism(self.graph, g):
                raise NotAnAutomorphism(f"generator {g} is not an automorphism")

    @property
    def generators(self) -> list[SignedEdgeMap]:
        if self._edge_generators is None:
            self._edge_generators = [edge_action(g, self.graph) for g in self.vertex_generators]
        return self._edge_generators

    def enumerate(self, caps=DEFAULT_CAPS) -> list[Perm]:
        if self.elements is None:
            gens = self.vertex_generators or [tuple(range(self.graph.vertex_count))]
            self.elements = closure(gens, caps)
        return self.elements

    @property
    def order(self) -> int:
        return len(self.enumerate())

    def element_maps(self, caps=DEFAULT_CAPS) -> list[SignedEdgeMap]:
        if self._element_maps is None:
            self._element_maps = [edge_action(g, self.graph) for g in self.enumerate(caps)]
        return self._element_maps

    def edge_orbits(self) -> list[list[int]]:
        return edge_orbits(self.graph, self.generators)

    @property
    def edge_transitive(self) -> bool:
        return len(self.edge_orbits()) == 1


# ----------------------------------------------------------------------------
# automorphism search


def _bfs_distances(G: OrientedGraph) -> list[list[int]]:
    n = G.vertex_count
    out = []
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        out.append(dist)
    return out


def find_automorphisms(G: OrientedGraph, caps=DEFAULT_CAPS) -> list[GraphAutomorphism]:
    """Every weight-preserving automorphism of ``G``, sorted.

    The search runs on the unweighted underlying graph and weighted graphs
    are filtered afterwards.  Backtracking in breadth-first order from vertex 0.  Each later vertex is
    sent to a neighbour of its parent's image; candidates must share the
    (degree, distance profile) invariant and all distances to vertices
    already placed.
    """
    n = G.vertex_count
    check(n, caps.max_vertices, "vertex count for automorphism search")
    dist = _bfs_distances(G)
    profile = []
    for v in range(n):
        counts: dict[int, int] = {}
        for d in dist[v]:
            counts[d] = counts.get(d, 0) + 1
        profile.append((len(G.incident(v)), tuple(sorted(counts.items()))))

    order = [0]
    parent = {0: -1}
    for v in order:
        for u in G.neighbors(v):
            if u not in parent:
                parent[u] = v
                order.append(u)

    image = [-1] * n
    used = [False] * n
    found: list[Perm] = []
    weighted = not G.unweighted

    def extend(k: int) -> None:
        if k == n:
            if not weighted or is_automorphism(G, image):
                found.append(tuple(image))
            check(len(found), caps.max_group, "automorphism group order")
            return
        v = order[k]
        p = parent[v]
        pool = range(n) if p < 0 else G.neighbors(image[p])
        for w in pool:
            if used[w] or profile[w] != profile[v]:
                continue
            dv, dw = dist[v], dist[w]
            if all(dw[image[u]] == dv[u] for u in order[:k]):
                image[v] = w
                used[w] = True
                extend(k + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    found.sort()
    return [GraphAutomorphism(p) for p in found]


def generating_set(elements: Sequence[Perm], caps=DEFAULT_CAPS) -> list[Perm]:
    """A greedy generating set: keep each element not yet generated."""
    gens: list[Perm] = []
    reached: set = set()
    for g in elements:
        if g in reached or g == tuple(range(len(g))):
            continue
        gens.append(g)
        reached = set(closure(gens, caps))
    return gens


def automorphism_group(G: OrientedGraph, caps=DEFAULT_CAPS) -> GroupSpec:
    """The full automorphism group of ``G`` as an enumerated GroupSpec."""
    autos = [a.permutation for a in find_automorphisms(G, caps)]
    spec = GroupSpec(G, generating_set(autos, caps))
    spec.elements = autos
    return spec


# ----------------------------------------------------------------------------
# family generators


def _perm_from_map(G: OrientedGraph, fn: Callable[[Hashable], Hashable]) -> Perm:
    return tuple(G.index(fn(lab)) for lab in G.vertices)


def _phi4(v: tuple) -> tuple:
    # exceptional automorphism of the 4 x 4 torus, acting on the first two
    # coordinates
    table = {
        (2, 0): (1, 3), (3, 0): (0, 3), (2, 1): (1, 2), (3, 1): (0, 2),
        (0, 2): (3, 1), (1, 2): (2, 1), (0, 3): (3, 0), (1, 3): (2, 0),
    }
    head = table.get(v[:2], v[:2])
    return head + v[2:]


def torus_generators(n: int, m: int = 2, caps=DEFAULT_CAPS) -> GroupSpec:
    """Generators of the symmetry group of the torus ``Z_n^m``.

    For ``m = 2``: the reflection ``(i, j) -> (-i, j)``, the swap
    ``(i, j) -> (j, i)`` and the two unit translations; for ``n = 4`` also
    the exceptional automorphism that sends a small square onto a row
    cycle.  For larger ``m`` the reflection of the first coordinate, the
    adjacent coordinate swaps and every unit translation.  ``n = 2`` (the
    4-cycle) gets its full automorphism group.
    """
    G = torus_graph(n, m, caps)
    if n == 2:
        spec = automorphism_group(G, caps)
        spec.includes_negation = True
        return spec
    if n < 3:
        raise UnsupportedParameter("torus generators need n >= 2")

    def reflect(v):
        return ((-v[0]) % n,) + v[1:]

    def swapper(j):
        return lambda v: v[:j] + (v[j + 1], v[j]) + v[j + 2 :]

    def shifter(j):
        return lambda v: v[:j] + ((v[j] + 1) % n,) + v[j + 1 :]

    maps = [reflect, swapper(0)] if m >= 2 else [reflect]
    maps += [swapper(j) for j in range(1, m - 1)]
    maps += [shifter(j) for j in range(m)]
    if n == 4 and m >= 2:
        maps.append(_phi4)
    gens = [_perm_from_map(G, fn) for fn in maps]
    return GroupSpec(G, gens, includes_negation=True)


def hamming_generators(n: int, m: int, caps=DEFAULT_CAPS) -> GroupSpec:
    """Adjacent coordinate swaps and adjacent symbol swaps in every coordinate."""
    G = hamming_graph(n, m, caps)
    maps = []
    for j in range(m - 1):
        maps.append(lambda v, j=j: v[:j] + (v[j + 1], v[j]) + v[j + 2 :])
    for j in range(m):
        for a in range(n - 1):
            swap = {a: a + 1, a + 1: a}
            maps.append(lambda v, j=j, swap=swap: v[:j] + (swap.get(v[j], v[j]),) + v[j + 1 :])
    gens = [_perm_from_map(G, fn) for fn in maps]
    return GroupSpec(G, gens)


# ----------------------------------------------------------------------------
# relator cycles


def relator_cycle_vectors(G: OrientedGraph, base, word: Sequence) -> list[Fraction]:
    """Signed indicator vector of the closed walk spelled by ``word``.

    ``base`` is a vertex label (or an index for integer-labelled graphs).
    Each step is either a callable on labels or a pair ``(coord, delta)``
    adding ``delta`` to a tuple label's coordinate, modulo the number of
    values that coordinate takes.
    """
    labels = G.vertices
    if isinstance(labels[0], tuple):
        width = len(labels[0])
        moduli = [max(lab[j] for lab in labels) + 1 for j in range(width)]
    else:
        moduli = []
    cur = G.index(base) if base in G._labels else int(base)
    start = cur
    z = [ZERO] * G.edge_count
    for step in word:
        lab = labels[cur]
        if callable(step):
            nxt_lab = step(lab)
        else:
            j, delta = step
            nxt_lab = lab[:j] + ((lab[j] + delta) % moduli[j],) + lab[j + 1 :]
        nxt = G.index(nxt_lab)
        hit = G.edge_between(cur, nxt)
        if hit is None:
            raise ValueError(f"step {lab} -> {nxt_lab} is not an edge")
        e, s = hit
        z[e] += s
        cur = nxt
    if cur != start:
        raise NotClosed(f"walk ends at {labels[cur]}, not at {labels[start]}")
    return z


def small_square(G: OrientedGraph, corner: tuple, i: int = 0, j: int = 1) -> list[Fraction]:
    """``S(corner)``: the unit square spanned by coordinates ``i`` and ``j``.

    Traversed ``+i, +j, -i, -j`` from ``corner`` so that the row edge at the
    corner enters with sign ``+1``.
    """
    return relator_cycle_vectors(G, corner, [(i, 1), (j, 1), (i, -1), (j, -1)])


def row_cycle(G: OrientedGraph, start: tuple, coord: int = 0) -> list[Fraction]:
    n = max(lab[coord] for lab in G.vertices) + 1
    return relator_cycle_vectors(G, start, [(coord, 1)] * n)

