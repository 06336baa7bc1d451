#!/usr/bin/env python3
"""End-to-end experiment: wave operator, cuspidal cubic front, s = 1.

Builds the phase expansion and the singularity mapping, assembles the
parameter-space system, pulls its discriminant back to (x, t), and checks
the result against independently sampled characteristic rays.  Writes the
artifacts next to the console summary.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

from lerayfront.brieskorn import f_basis, gm_matrices, phi_basis
from lerayfront.gaussmanin import assemble_system, flatness_check
from lerayfront.jsonio import dump_json, poly_to_json
from lerayfront.oracle import eval_front_on_samples, sample_front
from lerayfront.parser import parse_poly, poly_to_text
from lerayfront.phase import (
    HyperbolicSymbol,
    build_mapping,
    build_phase,
    check_c3,
    check_strict_hyperbolicity,
    discover_weights,
    expand_phase,
)
from lerayfront.wavefront import front_polynomial, t_zero_check


def main(out_dir="out_wave_cusp"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t_start = time.time()

    F = parse_poly("x1^2 + x2^3")
    P = HyperbolicSymbol.from_poly(
        parse_poly("tau^2 - xi1^2 - xi2^2", ring=("tau", "xi1", "xi2")),
        irreducible_attested=True,
    )
    w = discover_weights(F)
    print(f"weights {w.weights}, w(F) = {w.total}, C3 dim = {check_c3(F, w)}")
    print(check_strict_hyperbolicity(P, 25, seed=1))

    psi = build_phase(P, F)
    exp = expand_phase(psi, F, w)
    print(f"phase: {exp.case}, mu' = {exp.mu_prime}, mu = {exp.mu}, bound = {exp.bound}")

    icis = build_mapping(exp, power=2)
    phi = phi_basis(icis)
    print(f"mapping: K = {icis.K}, vars = {len(icis.ring)}, Milnor number = {phi.mu}")

    fb = f_basis(icis)
    gm = gm_matrices(icis, phi, fb)
    data = assemble_system(gm, icis)
    print(f"system weights L_V = {data.l_weights}")

    rep = flatness_check(data, sample_points=2, seed=5)
    print(f"flatness: {rep.checked_pairs} pairs at {len(rep.points)} points, all zero")

    t0 = time.time()
    fr = front_polynomial(data, icis, s_value=Fraction(1), strategy="substitute-first")
    print(
        f"front polynomial: {len(fr.phi.terms)} terms, "
        f"deg(x1, x2, t) = ({fr.phi.degree_in('x1')}, {fr.phi.degree_in('x2')}, "
        f"{fr.phi.degree_in('t')}) in {time.time()-t0:.1f}s"
    )

    tz = t_zero_check(fr, F, Fraction(1), samples=50, seed=3)
    print(f"t = 0 slice vanishes on the front curve: max residual {tz.max_scaled_residual:.2e}")

    rays = sample_front(P, F, Fraction(1), t_values=[0.1, 0.5, 1.0], count=20, seed=5)
    ev = eval_front_on_samples(fr.phi, rays.samples, Fraction(1))
    print(f"ray check: {ev.count} samples, max residual {ev.max_scaled_residual:.2e}")

    for tv in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
        vals = [
            fr.phi.eval_exact({"x1": 1 + sgn * tv, "x2": Fraction(0), "t": tv})
            for sgn in (1, -1)
        ]
        print(f"exact ray x = (1 +/- {tv}, 0): phi values {vals}")

    dump_json(
        {"phi": poly_to_json(fr.phi), "phi_text": poly_to_text(fr.phi)},
        out / "front.json",
    )
    print(f"total {time.time()-t_start:.1f}s; front written to {out/'front.json'}")


if __name__ == "__main__":
    main(*sys.argv[1:])
