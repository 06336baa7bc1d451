from fractions import Fraction

import pytest

from lerayfront.errors import MismatchError
from lerayfront.gaussmanin import discriminant
from lerayfront.oracle import (
    compare_discriminants,
    critical_locus_eliminant,
    eval_front_on_samples,
    sample_front,
    sample_level_set,
)
from lerayfront.phase import HyperbolicSymbol
from lerayfront.poly import MultiPoly

R = ("x1", "x2")
X1 = MultiPoly.variable(R, "x1")
X2 = MultiPoly.variable(R, "x2")
CUSP = X1**2 + X2**3

SR = ("tau", "xi1", "xi2")
TAU = MultiPoly.variable(SR, "tau")
XI1 = MultiPoly.variable(SR, "xi1")
XI2 = MultiPoly.variable(SR, "xi2")
WAVE = HyperbolicSymbol.from_poly(TAU**2 - XI1**2 - XI2**2)


class TestEliminant:
    def test_cusp(self, cusp_icis, cusp_system):
        el = critical_locus_eliminant(cusp_icis)
        assert [p.pretty() for p in el] == ["y0"]
        _, data = cusp_system
        if data.delta is None:
            discriminant(data)
        assert compare_discriminants(data.delta, el).verdict == "equal radicals (exact)"

    def test_a1(self, a1_icis, a1_system):
        el = critical_locus_eliminant(a1_icis)
        assert [p.pretty() for p in el] == ["y0"]
        _, data = a1_system
        if data.delta is None:
            discriminant(data)
        assert compare_discriminants(data.delta, el).verdict == "equal radicals (exact)"

    def test_a4(self, a4_icis, a4_system):
        el = critical_locus_eliminant(a4_icis)
        assert [p.pretty() for p in el] == ["y0"]
        _, data = a4_system
        if data.delta is None:
            discriminant(data)
        assert compare_discriminants(data.delta, el).verdict == "equal radicals (exact)"

    def test_quadric_sampled(self, quadric_icis, quadric_system):
        el = critical_locus_eliminant(quadric_icis)
        # critical values: the three lines y1 = y0, y1 = 2 y0, y1 = 3 y0
        assert len(el) == 1
        gen = el[0]
        for c in (1, 2, 3):
            val = gen.eval_exact({"y0": Fraction(1), "y1": Fraction(c)})
            assert val == 0
        _, data = quadric_system
        if data.delta is None:
            discriminant(data)
        cmp = compare_discriminants(data.delta, el, seed=17)
        assert cmp.verdict == "mutual sampled containment"

    def test_mismatch_witness(self):
        y = ("y0",)
        y0 = MultiPoly.variable(y, "y0")
        one = MultiPoly.constant(y, 1)
        with pytest.raises(MismatchError):
            compare_discriminants(y0, [y0 - one])


class TestLevelSet:
    def test_points_on_level_set(self):
        pts = sample_level_set(CUSP, Fraction(1), 20, seed=3)
        assert len(pts) == 20
        for z in pts:
            val = z[0] ** 2 + z[1] ** 3
            assert abs(val - 1.0) < 1e-10


class TestRays:
    def test_hand_example(self):
        # z = (1, 0): grad F = (2, 0), lambda = +/-2, grad lambda = (+/-1, 0)
        rep = sample_front(WAVE, CUSP, Fraction(1), [0.5], count=5, seed=5)
        # synthesize the hand-checkable start point by direct construction
        import numpy as np

        found = [s for s in rep.samples if abs(s.z[0] - 1) < 1e-9 and abs(s.z[1]) < 1e-9]
        # the sampler may not hit exactly z = (1, 0); verify the ray law instead
        for s in rep.samples:
            gf = np.array([2 * s.z[0], 3 * s.z[1] ** 2])
            norm = float(np.hypot(*gf))
            lam = s.lam
            assert abs(abs(lam) - norm) < 1e-7
            direction = (np.array(s.x) - np.array(s.z)) / s.t
            # unit speed: |dx/dt| = |grad lambda| = 1 for the wave operator
            assert abs(float(np.hypot(*direction)) - 1.0) < 1e-7

    def test_t_zero_is_start(self):
        rep = sample_front(WAVE, CUSP, Fraction(1), [0.0], count=5, seed=5)
        for s in rep.samples:
            assert s.x == s.z

    def test_m1_rays_stay_put(self):
        P = HyperbolicSymbol.from_poly(TAU)
        rep = sample_front(P, CUSP, Fraction(1), [0.0, 1.0], count=5, seed=5)
        assert rep.samples
        for s in rep.samples:
            assert abs(s.lam) < 1e-12
            for a, b in zip(s.x, s.z):
                assert abs(a - b) < 1e-12

    def test_residuals_small(self):
        rep = sample_front(WAVE, CUSP, Fraction(1), [0.1, 0.5], count=10, seed=5)
        for s in rep.samples:
            assert s.residual_root < 1e-10
            assert s.residual_level < 1e-10


class TestEvalFront:
    def test_vacuous(self):
        ring = ("x1", "x2", "t")
        rep = eval_front_on_samples(MultiPoly.constant(ring, 1), [], Fraction(1))
        assert rep.vacuous

    def test_corrupted_detected(self):
        ring = ("x1", "x2", "t")
        one = MultiPoly.constant(ring, 1)
        rep_rays = sample_front(WAVE, CUSP, Fraction(1), [0.5], count=5, seed=5)
        rep = eval_front_on_samples(one, rep_rays.samples, Fraction(1), tol=1e-6)
        assert rep.max_scaled_residual > 0.5
