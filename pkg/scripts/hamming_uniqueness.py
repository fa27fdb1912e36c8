"""Commutant dimensions for Hamming graphs and discrete tori.

A dimension of 0 means the orthogonal projection is the only invariant
projection onto the cycle space.
"""

from __future__ import annotations

import time

from cyclespace.invariant import commutant_family
from cyclespace.symmetry import hamming_generators, torus_generators

CASES = [
    ("A_2^2", hamming_generators, 2, 2),
    ("A_2^3", hamming_generators, 2, 3),
    ("A_3^2", hamming_generators, 3, 2),
    ("A_3^3", hamming_generators, 3, 3),
    ("A_4^2", hamming_generators, 4, 2),
    ("Z_4^2", torus_generators, 4, 2),
    ("Z_5^2", torus_generators, 5, 2),
    ("Z_5^3", torus_generators, 5, 3),
]


def main() -> None:
    for name, make, n, m in CASES:
        t0 = time.perf_counter()
        group = make(n, m)
        fam = commutant_family(group.graph, group)
        verdict = "unique" if fam.dimension == 0 else "non-unique"
        print(f"{name:6} |E| = {group.graph.edge_count:4}  dim = {fam.dimension}  {verdict:10}"
              f" ({fam.method}, {time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
