#!/usr/bin/env python3
"""Local exponents of one-parameter period systems for the A_k series.

For f = u1^2 + u2^(k+1) the staircase basis has weights l_j, and the system
on the critical-value line has exponents (l_j - p0) / p0; classically these
are j/(k+1) - 1/2 for j = 1..k.  The table below is computed from scratch
and compared against that closed form.
"""

from fractions import Fraction
from math import gcd

from lerayfront.brieskorn import gm_matrices
from lerayfront.gaussmanin import assemble_system, residue_exponents_K1
from lerayfront.phase import make_icis
from lerayfront.poly import MultiPoly


def a_k(k: int):
    ring = ("u1", "u2")
    u1 = MultiPoly.variable(ring, "u1")
    u2 = MultiPoly.variable(ring, "u2")
    g = gcd(k + 1, 2)
    return make_icis([u1**2 + u2 ** (k + 1)], ((k + 1) // g, 2 // g))


def main():
    print(f"{'k':>2} {'mu':>3}  computed exponents      closed form")
    for k in range(1, 7):
        icis = a_k(k)
        gm = gm_matrices(icis)
        data = assemble_system(gm, icis)
        got = residue_exponents_K1(data)
        expected = sorted(Fraction(j, k + 1) - Fraction(1, 2) for j in range(1, k + 1))
        mark = "ok" if got == expected else "MISMATCH"
        print(f"{k:>2} {data.mu:>3}  {[str(e) for e in got]}  {mark}")


if __name__ == "__main__":
    main()
