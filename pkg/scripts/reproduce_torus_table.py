"""Print the projection norms of the tori T_2 .. T_N as a table.

    python3 scripts/reproduce_torus_table.py --n-max 6
"""

from __future__ import annotations

import argparse
import time

from cyclespace.graphs import torus_graph
from cyclespace.invariant import projection_report
from cyclespace.symmetry import torus_generators


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=6)
    args = parser.parse_args()

    header = ("n", "dim", "|P_orth|", "|I-P_orth|", "|P_min|", "|I-P_min|", "unique", "sec")
    print("  ".join(f"{h:>12}" for h in header))
    for n in range(2, args.n_max + 1):
        t0 = time.perf_counter()
        rep = projection_report(torus_graph(n), torus_generators(n))
        row = (
            n, rep.dimension, rep.p_orth_norm, rep.i_minus_p_orth_norm,
            rep.p_min_norm, rep.i_minus_p_min_norm, rep.unique_minimizer,
            f"{time.perf_counter() - t0:.2f}",
        )
        print("  ".join(f"{str(x):>12}" for x in row))


if __name__ == "__main__":
    main()
