"""Build the potential F two ways and probe its identities.

    python demos/frobenius_potential.py
"""

import time
from fractions import Fraction

from merodiff.algebra import format_poly
from merodiff.dkp import compute_R
from merodiff.frobenius import (
    FTrunc,
    build_F_from_counts,
    build_F_residue,
    check_euler,
    check_wdvv_F,
    second_derivative_in_w,
    subsystem_sign,
)

trunc = FTrunc(max_pos=2, max_weight=6)
F = build_F_from_counts(trunc)
print(f"F at {trunc} has {len(F.poly)} terms; the first few:")
for line in format_poly(F.poly).split(" + ")[:6]:
    print("   ", line)

start = time.perf_counter()
same = build_F_residue(FTrunc(4, 10)) == build_F_from_counts(FTrunc(4, 10))
print(f"\ncounts and residues agree at FTrunc(4, 10): {same} ({time.perf_counter() - start:.1f}s)")
print("E F = 2F, Etilde F = -2F:", check_euler(FTrunc(4, 10)))
print("WDVV at (1, 1, -2, -2):", check_wdvv_F(1, 1, -2, -2, bound=10))

# the restriction to nonnegative indices reproduces R, up to an overall sign
print("\nd2F/dt^1 dt^1 =", format_poly(second_derivative_in_w(1, 1)))
print("R_2,2 / 4     =", format_poly(compute_R(2, 2).scale(Fraction(1, 4))))
signs = {(a, b): subsystem_sign(a, b) for a in range(4) for b in range(a, 4)}
print("sign relating d2F to R/((a+1)(b+1)):", sorted(set(signs.values())))
