#!/usr/bin/env python3
"""Emit characteristic-ray samples as CSV for external plotting.

Usage: front_samples_csv.py [problem.json] [out.csv]

Defaults to the wave/cusp problem at s = 1 with t in {0.2, 0.4, ..., 1.0}.
Columns: z1..zn, sheet, t, x1..xn, residual_root, residual_level.
"""

import csv
import json
import sys
from fractions import Fraction

from lerayfront.oracle import sample_front
from lerayfront.parser import parse_poly
from lerayfront.phase import HyperbolicSymbol


def main(spec_path=None, out_path="front_samples.csv"):
    if spec_path:
        spec = json.load(open(spec_path))
        front_text = spec["front"]
        op_text = spec["operator"]
        s = Fraction(str(spec.get("options", {}).get("s", "1")))
    else:
        front_text, op_text, s = "x1^2 + x2^3", "tau^2 - xi1^2 - xi2^2", Fraction(1)
    F = parse_poly(front_text)
    n = len(F.ring)
    P = HyperbolicSymbol.from_poly(
        parse_poly(op_text, ring=("tau",) + tuple(f"xi{i+1}" for i in range(n)))
    )
    t_values = [0.2 * k for k in range(1, 6)]
    rep = sample_front(P, F, s, t_values, count=60, seed=5)
    with open(out_path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(
            [f"z{i+1}" for i in range(n)]
            + ["sheet", "t"]
            + [f"x{i+1}" for i in range(n)]
            + ["residual_root", "residual_level"]
        )
        for smp in rep.samples:
            wr.writerow(
                list(smp.z)
                + [smp.sheet, smp.t]
                + list(smp.x)
                + [smp.residual_root, smp.residual_level]
            )
    print(f"{len(rep.samples)} samples -> {out_path} (skipped {rep.skipped_collisions})")


if __name__ == "__main__":
    main(*sys.argv[1:])
