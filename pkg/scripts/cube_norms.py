"""Norms of the cut and cycle projections on the cube {0,1}^n.

    python3 scripts/cube_norms.py --n-max 16 --dense-max 5
"""

from __future__ import annotations

import argparse

from cyclespace.cube import cube_coefficients, dense_check, p_norm, q_norm


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=16)
    parser.add_argument("--dense-max", type=int, default=5, help="largest n for the dense cross-check")
    args = parser.parse_args()

    for n in range(3, args.n_max + 1):
        co = cube_coefficients(n)
        line = f"n = {n:2}  ||Q_n|| = {q_norm(n)!s:>5}  ||I - Q_n|| = {p_norm(n)!s:>14}  b_0 = {co.b[0]}"
        if n <= args.dense_max:
            line += "  dense: " + ("ok" if dense_check(n).ok else "MISMATCH")
        print(line)


if __name__ == "__main__":
    main()
