#!/usr/bin/env python3
"""Print a small atlas of every nilpotent orbit of so_N / sp_N up to a bound:
dimension, rigidity, centraliser data and the Lagrangian half-rank.

Usage: python scripts/orbit_atlas.py [max_N]
"""

import sys

from orbitforge.partitions import admissible_partitions, is_almost_rigid, is_rigid
from orbitforge.orbits import build_nilpotent, orbit_dim_formula
from orbitforge.centralizer import compute_centralizer, derived_subalgebra
from orbitforge.slices import split_lagrangian


def main(max_n: int) -> None:
    header = f"{'algebra':>8}  {'partition':>14} {'dimO':>5} {'rigid':>6} {'AR':>3} {'dim g^e':>8} {'codim':>6} {'s':>3}"
    print(header)
    print("-" * len(header))
    for n in range(2, max_n + 1):
        for eps in (1, -1):
            if eps == -1 and n % 2:
                continue
            name = f"{'so' if eps == 1 else 'sp'}_{n}"
            for lam in admissible_partitions(n, eps):
                rep = build_nilpotent(lam, eps)
                cb = compute_centralizer(rep)
                der = derived_subalgebra(cb)
                pair = split_lagrangian(rep)
                print(
                    f"{name:>8}  {str(lam):>14} {orbit_dim_formula(lam, eps):>5} "
                    f"{str(is_rigid(lam, eps)):>6} {str(is_almost_rigid(lam))[0]:>3} "
                    f"{cb.dim:>8} {der.codim:>6} {len(pair.z_minus):>3}"
                )


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
