from fractions import Fraction

import pytest

from lerayfront.errors import (
    ExpressionSyntaxError,
    NegativeExponentError,
    UnknownVariableError,
)
from lerayfront.jsonio import (
    form_from_json,
    form_to_json,
    matrix_from_json,
    matrix_to_json,
    poly_from_json,
    poly_to_json,
)
from lerayfront.parser import parse_poly, poly_to_text
from lerayfront.poly import MultiPoly


class TestParse:
    def test_cusp(self):
        p = parse_poly("x1^2 + x2^3")
        ring = ("x1", "x2")
        x1 = MultiPoly.variable(ring, "x1")
        x2 = MultiPoly.variable(ring, "x2")
        assert p == x1**2 + x2**3

    def test_wave_symbol(self):
        p = parse_poly("tau^2 - xi1^2 - xi2^2")
        assert p.ring == ("tau", "xi1", "xi2")
        assert p.total_degree() == 2

    def test_negative_exponent(self):
        with pytest.raises(NegativeExponentError):
            parse_poly("x1^-1")

    def test_rational_literal(self):
        p = parse_poly("3/4*x + 1/2", ring=("x",))
        x = MultiPoly.variable(("x",), "x")
        assert p == x.scale(Fraction(3, 4)) + MultiPoly.constant(("x",), Fraction(1, 2))

    def test_parentheses_and_unary(self):
        p = parse_poly("-(x - 2)*(x + 2)", ring=("x",))
        x = MultiPoly.variable(("x",), "x")
        assert p == -(x**2) + MultiPoly.constant(("x",), 4)

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            parse_poly("x + q", ring=("x",))

    def test_syntax_error_position(self):
        with pytest.raises(ExpressionSyntaxError) as ei:
            parse_poly("x1 + + ^")
        assert ei.value.line == 1

    def test_round_trip(self):
        texts = ["x1^2 + x2^3", "2*x1*x2 - 7", "1/3*x1^4 - x2 + 5/2"]
        for t in texts:
            p = parse_poly(t, ring=("x1", "x2"))
            assert parse_poly(poly_to_text(p), ring=("x1", "x2")) == p


class TestJson:
    def test_poly_round_trip(self):
        p = parse_poly("1/3*x1^4 - x2 + 5/2", ring=("x1", "x2"))
        assert poly_from_json(poly_to_json(p)) == p

    def test_matrix_round_trip(self):
        ring = ("y0", "y1")
        y0 = MultiPoly.variable(ring, "y0")
        y1 = MultiPoly.variable(ring, "y1")
        M = [[y0, y1], [y0 * y1, MultiPoly.zero(ring)]]
        again = matrix_from_json(matrix_to_json(M))
        assert again == M

    def test_form_round_trip(self):
        from lerayfront.forms import DiffForm

        ring = ("u1", "u2", "u3")
        u1 = MultiPoly.variable(ring, "u1")
        f = DiffForm(ring, 2, {(0, 1): u1, (1, 2): MultiPoly.constant(ring, Fraction(-3, 7))})
        assert form_from_json(form_to_json(f)) == f
