from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lerayfront.errors import ResourceLimitError
from lerayfront.groebner import (
    GREVLEX,
    LEX,
    MonomialOrder,
    eliminate,
    groebner,
    normal_form,
    standard_monomials,
)
from lerayfront.poly import MultiPoly

R = ("x1", "x2")
X1 = MultiPoly.variable(R, "x1")
X2 = MultiPoly.variable(R, "x2")


class TestGroebner:
    def test_already_basis(self):
        ring = ("x", "y")
        x = MultiPoly.variable(ring, "x")
        y = MultiPoly.variable(ring, "y")
        gb = groebner([x**2, y], LEX)
        assert sorted(p.pretty() for p in gb.generators) == ["x^2", "y"]

    def test_cusp_critical_ideal(self):
        gb = groebner([2 * X1, 3 * X2**2, X1**2 + X2**3], GREVLEX)
        lts = {p.leading()[0] for p in gb.generators}
        assert lts == {(1, 0), (0, 2)}
        assert [p.pretty() for p in gb.generators] == ["x1", "x2^2"]

    def test_unit_ideal(self):
        one = MultiPoly.constant(R, 1)
        gb = groebner([X1 - one, X1], GREVLEX)
        assert [p.pretty() for p in gb.generators] == ["1"]

    def test_generators_reduce_to_zero(self):
        gens = [X1**2 + X2**3, 2 * X1 * X2, X2**4 - X1]
        gb = groebner(gens, GREVLEX)
        for g in gens:
            assert normal_form(g, gb).is_zero()

    def test_pair_cap(self):
        with pytest.raises(ResourceLimitError):
            groebner([X1**2 + X2**3, X1 * X2**2 - X1], max_pairs=1)


class TestStaircase:
    def test_cusp(self):
        gb = groebner([X1, X2**2], GREVLEX)
        sc = standard_monomials(gb)
        assert sc.finite
        assert [m.exps for m in sc.monomials] == [(0, 0), (0, 1)]
        assert sc.dimension == 2

    def test_infinite(self):
        gb = groebner([X1**2], GREVLEX)
        sc = standard_monomials(gb)
        assert not sc.finite
        assert sc.witness_variable == "x2"

    def test_unit_ideal_empty(self):
        gb = groebner([MultiPoly.constant(R, 1)], GREVLEX)
        sc = standard_monomials(gb)
        assert sc.finite and sc.dimension == 0

    @pytest.mark.parametrize(
        "gens,expected",
        [
            ([2 * X1, 3 * X2**2, X1**2 + X2**3], 2),
            ([2 * X1, 5 * X2**4, X1**2 + X2**5], 4),
            ([X1**3 - X2, X2**2], 6),
        ],
    )
    def test_dimension_order_independent(self, gens, expected):
        for order in (GREVLEX, LEX):
            sc = standard_monomials(groebner(gens, order))
            assert sc.finite and sc.dimension == expected


class TestNormalForm:
    def test_member_reduces_to_zero(self):
        gb = groebner([X1, X2**2], GREVLEX)
        assert normal_form(X2**3, gb).is_zero()
        assert normal_form(X1 * X2 + X2**2, gb).is_zero()

    @settings(max_examples=30)
    @given(
        st.lists(
            st.tuples(
                st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5)
            ),
            max_size=4,
        )
    )
    def test_idempotent(self, terms):
        p = MultiPoly(R, {e: Fraction(c) for e, c in terms})
        gb = groebner([X1**2 - X2, X2**3], GREVLEX)
        r = normal_form(p, gb)
        assert normal_form(r, gb) == r

    def test_difference_in_ideal(self):
        gb = groebner([X1**2 - X2, X2**3], GREVLEX)
        p = X1**4 + X2 * X1
        r = normal_form(p, gb)
        assert normal_form(p - r, gb).is_zero()


class TestEliminate:
    def test_simple(self):
        ring = ("u", "y")
        u = MultiPoly.variable(ring, "u")
        y = MultiPoly.variable(ring, "y")
        out = eliminate([u**2 - y, 2 * u], ["u"])
        assert [p.pretty() for p in out] == ["y"]

    def test_zero_ideal(self):
        ring = ("u", "y")
        u = MultiPoly.variable(ring, "u")
        y = MultiPoly.variable(ring, "y")
        assert eliminate([u - y], ["u"]) == []

    def test_cusp_critical_value(self):
        ring = ("u1", "u2", "y")
        u1 = MultiPoly.variable(ring, "u1")
        u2 = MultiPoly.variable(ring, "u2")
        y = MultiPoly.variable(ring, "y")
        out = eliminate([u1**2 + u2**3 - y, 2 * u1, 3 * u2**2], ["u1", "u2"])
        assert [p.pretty() for p in out] == ["y"]


def test_block_order_key():
    key = MonomialOrder("block", split=1).key()
    # (1, 0) > (0, 5) in the elimination block order: first block dominates
    assert key((1, 0)) > key((0, 5))
