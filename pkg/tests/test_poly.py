from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lerayfront.errors import RingMismatchError
from lerayfront.poly import (
    Monomial,
    MultiPoly,
    monomials_of_weight,
    poly_substitute,
    weighted_graded_parts,
)

R2 = ("x1", "x2")
X1 = MultiPoly.variable(R2, "x1")
X2 = MultiPoly.variable(R2, "x2")


def small_polys(ring=R2, max_terms=5, max_exp=4):
    coeff = st.fractions(
        st.integers(-9, 9).map(Fraction), st.integers(1, 4)
    ).map(lambda f: Fraction(f))
    exps = st.tuples(*[st.integers(0, max_exp) for _ in ring])
    term = st.tuples(exps, st.integers(-9, 9))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: MultiPoly(ring, {e: Fraction(c) for e, c in ts})
    )


class TestBasics:
    def test_zero_and_constant(self):
        assert MultiPoly.zero(R2).is_zero()
        c = MultiPoly.constant(R2, Fraction(3, 4))
        assert c.constant_value() == Fraction(3, 4)

    def test_no_zero_terms_stored(self):
        p = X1 - X1
        assert p.terms == {}

    def test_ring_mismatch(self):
        q = MultiPoly.variable(("y",), "y")
        with pytest.raises(RingMismatchError):
            X1 + q

    def test_partial(self):
        p = X1**2 * X2 + X2**3
        assert p.partial("x1") == 2 * X1 * X2
        assert p.partial("x2") == X1**2 + 3 * X2**2

    def test_exact_div(self):
        p = (X1 + X2) * (X1**2 - X2)
        assert p.exact_div(X1 + X2) == X1**2 - X2
        with pytest.raises(ValueError):
            (X1 + MultiPoly.constant(R2, 1)).exact_div(X2)

    def test_primitive_part(self):
        p = 6 * X1 - 9 * X2
        pp = p.primitive_part()
        assert pp == 2 * X1 - 3 * X2 or pp == -(2 * X1 - 3 * X2)
        assert pp.leading()[1] > 0


class TestSubstitute:
    def test_binomial_identity(self):
        ring = ("x",)
        x = MultiPoly.variable(ring, "x")
        target = ("a", "b")
        a = MultiPoly.variable(target, "a")
        b = MultiPoly.variable(target, "b")
        out = poly_substitute(x**2, {"x": a + b})
        assert out == a**2 + 2 * a * b + b**2

    def test_empty_bindings_identity(self):
        p = X1**3 + X2
        assert poly_substitute(p, {}) == p

    def test_wave_cusp_expansion(self):
        # tau^2 - xi1^2 - xi2^2 under the phase substitution for x1^2 + x2^3
        ring = ("tau", "xi1", "xi2")
        tau = MultiPoly.variable(ring, "tau")
        xi1 = MultiPoly.variable(ring, "xi1")
        xi2 = MultiPoly.variable(ring, "xi2")
        p = tau**2 - xi1**2 - xi2**2
        PR = ("x1", "x2", "t", "z1", "z2")

        def v(n):
            return MultiPoly.variable(PR, n)

        x1, x2, t, z1, z2 = (v(n) for n in PR)
        gF = [2 * z1, 3 * z2**2]
        tau_img = (x1 - z1) * gF[0] + (x2 - z2) * gF[1]
        out = poly_substitute(
            p, {"tau": tau_img, "xi1": t * gF[0], "xi2": t * gF[1]}
        )
        hand = (
            2 * x1 * z1 + 3 * x2 * z2**2 - 2 * z1**2 - 3 * z2**3
        ) ** 2 - t**2 * (4 * z1**2 + 9 * z2**4)
        assert out == hand
        assert len(out.terms) == 12

    def test_collision_rejected(self):
        p = X1 * X2
        img = MultiPoly.variable(("a",), "a")
        with pytest.raises(RingMismatchError):
            poly_substitute(p, {"x1": img})  # x2 missing from target ring

    @settings(max_examples=60)
    @given(small_polys(), small_polys())
    def test_substitution_is_homomorphism(self, p, q):
        target = ("a", "b")
        a = MultiPoly.variable(target, "a")
        b = MultiPoly.variable(target, "b")
        bind = {"x1": a + b, "x2": a * b - b}
        assert poly_substitute(p * q, bind) == poly_substitute(p, bind) * poly_substitute(q, bind)
        assert poly_substitute(p + q, bind) == poly_substitute(p, bind) + poly_substitute(q, bind)


class TestGradedParts:
    def test_cusp_single_part(self):
        parts = weighted_graded_parts(X1**2 + X2**3, (3, 2))
        assert parts == [(6, X1**2 + X2**3)]

    def test_two_parts(self):
        parts = weighted_graded_parts(X1**2 + X2**2, (3, 2))
        assert [w for w, _ in parts] == [4, 6]
        assert parts[0][1] == X2**2

    def test_zero(self):
        assert weighted_graded_parts(MultiPoly.zero(R2), (3, 2)) == []

    @settings(max_examples=40)
    @given(small_polys())
    def test_parts_sum_to_input(self, p):
        parts = weighted_graded_parts(p, (3, 2))
        acc = MultiPoly.zero(R2)
        for _, q in parts:
            acc = acc + q
        assert acc == p


class TestRingAxioms:
    @settings(max_examples=50)
    @given(small_polys(), small_polys(), small_polys())
    def test_associativity_and_distributivity(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)


def test_monomials_of_weight():
    out = monomials_of_weight((3, 2), 6)
    assert set(out) == {(2, 0), (0, 3)}
    assert monomials_of_weight((3, 2), 1) == []
    assert monomials_of_weight((3, 2), 0) == [(0, 0)]


def test_monomial_type():
    m = Monomial((1, 2))
    assert m.degree() == 3
    assert m.weight((3, 2)) == 7
    with pytest.raises(ValueError):
        Monomial((-1, 0))
