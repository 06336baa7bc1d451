from fractions import Fraction

import pytest

from lerayfront.gaussmanin import discriminant
from lerayfront.phase import (
    HyperbolicSymbol,
    build_mapping,
    build_phase,
    discover_weights,
    expand_phase,
)
from lerayfront.poly import MultiPoly, poly_substitute
from lerayfront.wavefront import (
    FrontResult,
    front_polynomial,
    front_substitution,
    t_zero_check,
)

SR = ("tau", "xi1", "xi2")


def _m1_cusp_pipeline():
    R = ("x1", "x2")
    x1 = MultiPoly.variable(R, "x1")
    x2 = MultiPoly.variable(R, "x2")
    F = x1**2 + x2**3
    w = discover_weights(F)
    P = HyperbolicSymbol.from_poly(MultiPoly.variable(SR, "tau"))
    exp = expand_phase(build_phase(P, F), F, w)
    icis = build_mapping(exp, 2)
    from lerayfront.brieskorn import gm_matrices
    from lerayfront.gaussmanin import assemble_system

    gm = gm_matrices(icis)
    return F, icis, assemble_system(gm, icis)


@pytest.fixture(scope="module")
def m1_pipeline():
    return _m1_cusp_pipeline()


class TestSubstitution:
    def test_case2_bindings(self, m1_pipeline):
        F, icis, data = m1_pipeline
        ring, bindings = front_substitution(icis, Fraction(1))
        assert bindings["y1"].is_zero()
        assert bindings["y0"] == MultiPoly.constant(ring, 1)
        # couplings carry the sign normalization (m = 1 is odd)
        assert icis.sign == -1

    def test_symbolic_s(self, m1_pipeline):
        F, icis, data = m1_pipeline
        ring, bindings = front_substitution(icis, None)
        assert "s" in ring
        assert bindings["y0"] == MultiPoly.variable(ring, "s")

    def test_round_trip_on_det_first(self, m1_pipeline):
        F, icis, data = m1_pipeline
        fr = front_polynomial(data, icis, s_value=None, strategy="det-first")
        redo = poly_substitute(data.delta_raw, fr.substitution)
        assert redo == fr.raw


class TestFrontPolynomial:
    def test_strategies_agree(self, m1_pipeline):
        F, icis, data = m1_pipeline
        fr1 = front_polynomial(data, icis, s_value=Fraction(1), strategy="det-first")
        fr2 = front_polynomial(
            data, icis, s_value=Fraction(1), strategy="substitute-first"
        )
        assert fr1.phi == fr2.phi

    def test_normalization_idempotent(self, m1_pipeline):
        F, icis, data = m1_pipeline
        fr = front_polynomial(data, icis, s_value=Fraction(1))
        assert fr.phi.primitive_part() == fr.phi
        assert fr.phi.leading()[1] > 0

    def test_squarefree_divides(self, m1_pipeline):
        F, icis, data = m1_pipeline
        fr = front_polynomial(data, icis, s_value=Fraction(1))
        if fr.squarefree is not None:
            q = fr.phi.exact_div(fr.squarefree)
            assert q is not None

    def test_front_vanishes_on_level_set_all_t(self, m1_pipeline):
        # m = 1: rays do not move, the front is the level set for every t
        F, icis, data = m1_pipeline
        fr = front_polynomial(data, icis, s_value=Fraction(1))
        rep0 = t_zero_check(fr, F, Fraction(1), samples=25, seed=3)
        assert rep0.samples > 0
        assert rep0.max_scaled_residual < 1e-9

    def test_smoke_k1_delta(self, cusp_system, cusp_icis):
        # degenerate smoke test: delta = 36 y0^2 pulled back along y0 -> s
        _, data = cusp_system
        if data.delta is None:
            discriminant(data)
        ring = ("s",)
        s = MultiPoly.variable(ring, "s")
        out = poly_substitute(data.delta_raw, {"y0": s})
        assert out == (s * s).scale(36)
        assert out.primitive_part() == s * s


class TestCase1EndToEnd:
    def test_parabola_front_is_level_set(self):
        # Case 1 (constant phase term): for a first-order operator the front
        # never moves, and the pulled-back discriminant is a power of the
        # defining equation of the level set.
        from lerayfront.brieskorn import gm_matrices
        from lerayfront.gaussmanin import assemble_system

        R = ("x1", "x2")
        x1 = MultiPoly.variable(R, "x1")
        x2 = MultiPoly.variable(R, "x2")
        F = x1 + x2**2
        w = discover_weights(F)
        P = HyperbolicSymbol.from_poly(MultiPoly.variable(SR, "tau"))
        exp = expand_phase(build_phase(P, F), F, w)
        assert exp.case == "case1"
        icis = build_mapping(exp, 3)
        gm = gm_matrices(icis)
        data = assemble_system(gm, icis)
        fr = front_polynomial(data, icis, s_value=None, strategy="det-first")
        ring = fr.phi.ring
        level = (
            MultiPoly.variable(ring, "x2") ** 2
            + MultiPoly.variable(ring, "x1")
            - MultiPoly.variable(ring, "s")
        )
        assert fr.phi == level * level
        assert fr.squarefree == level


class TestTZero:
    def test_no_real_points(self, m1_pipeline):
        F, icis, data = m1_pipeline
        fr = front_polynomial(data, icis, s_value=Fraction(-1))
        rep = t_zero_check(fr, F, Fraction(-10**6), samples=10, seed=3, box=1.0)
        assert rep.no_real_points or rep.samples == 0

    def test_corrupted_front_fails(self, m1_pipeline):
        F, icis, data = m1_pipeline
        ring = ("x1", "x2", "t")
        bogus = FrontResult(
            phi=MultiPoly.constant(ring, 1),
            raw=MultiPoly.constant(ring, 1),
            squarefree=None,
            case="case2",
            substitution={},
            power=2,
            strategy="det-first",
        )
        rep = t_zero_check(bogus, F, Fraction(1), samples=10, seed=3)
        assert rep.max_scaled_residual > 0.5
