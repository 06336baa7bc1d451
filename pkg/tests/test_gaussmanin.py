from fractions import Fraction

import pytest

from lerayfront.brieskorn import GMMatrices, PhiBasis, FBasis
from lerayfront.errors import (
    CurvatureNonzeroError,
    DegenerateSystemError,
    NotApplicableError,
)
from lerayfront.gaussmanin import (
    assemble_system,
    discriminant,
    flatness_check,
    residue_exponents_K1,
)
from lerayfront.poly import MultiPoly


class TestAssemble:
    def test_cusp_m_matrix(self, cusp_system):
        _, data = cusp_system
        y = data.y_ring
        y0 = MultiPoly.variable(y, "y0")
        assert data.M[0][0] == y0.scale(6)
        assert data.M[1][1] == y0.scale(6)
        assert data.M[0][1].is_zero() and data.M[1][0].is_zero()

    def test_alternating_sign(self, cusp_icis):
        # K = 2 with P0 = P1 = I and p = (2, 2) gives M = 2 y0 I - 2 y1 I
        from lerayfront.phase import IcisMap

        ring = ("u1", "u2", "u3")
        fake = IcisMap(
            K=2,
            N=1,
            ring=ring,
            components=[MultiPoly.variable(ring, "u1"), MultiPoly.variable(ring, "u2")],
            var_weights=(1, 1, 1),
            comp_weights=(2, 2),
        )
        y = fake.y_names()
        one = MultiPoly.constant(y, 1)
        zero = MultiPoly.zero(y)
        eye = [[one, zero], [zero, one]]
        gm = GMMatrices(
            matrices=[eye, eye],
            l_weights=[2, 2],
            phi=PhiBasis(monomials=[], mu=2, weights=[2, 2]),
            fbasis=FBasis(forms=[], weights=[2, 2]),
        )
        gm.phi.monomials = []
        data = assemble_system(gm, fake)
        y0 = MultiPoly.variable(y, "y0")
        y1 = MultiPoly.variable(y, "y1")
        assert data.M[0][0] == y0.scale(2) - y1.scale(2)
        assert data.M[0][1].is_zero()

    def test_all_zero_flagged_degenerate(self, cusp_icis):
        from lerayfront.phase import IcisMap

        y = cusp_icis.y_names()
        zero = MultiPoly.zero(y)
        gm = GMMatrices(
            matrices=[[[zero, zero], [zero, zero]]],
            l_weights=[5, 7],
            phi=PhiBasis(monomials=[], mu=2, weights=[5, 7]),
            fbasis=FBasis(forms=[], weights=[5, 7]),
        )
        data = assemble_system(gm, cusp_icis)
        assert data.metadata.get("degenerate")
        with pytest.raises(DegenerateSystemError):
            discriminant(data)


class TestDiscriminant:
    def test_cusp(self, cusp_system):
        _, data = cusp_system
        delta = discriminant(data)
        y0 = MultiPoly.variable(data.y_ring, "y0")
        assert delta == y0 * y0
        assert data.delta_raw == (y0 * y0).scale(36)

    def test_a1(self, a1_system):
        _, data = a1_system
        delta = discriminant(data)
        y0 = MultiPoly.variable(data.y_ring, "y0")
        assert delta == y0
        assert data.delta_raw == y0.scale(2)

    def test_forced_weight(self, quadric_system):
        _, data = quadric_system
        delta = discriminant(data)
        forced = data.delta_forced_weight()
        for e in delta.terms:
            assert 2 * (e[0] + e[1]) == forced

    def test_vanishes_at_origin(self, cusp_system, a4_system, quadric_system):
        for _, data in (cusp_system, a4_system, quadric_system):
            if data.delta is None:
                discriminant(data)
            zero = {v: Fraction(0) for v in data.y_ring}
            assert data.delta.eval_exact(zero) == 0

    def test_strategies_agree(self, quadric_system):
        _, data = quadric_system
        d1 = discriminant(data, strategy="bareiss")
        d2 = discriminant(data, strategy="interpolate")
        assert d1 == d2


class TestExponents:
    def test_cusp(self, cusp_system):
        _, data = cusp_system
        assert residue_exponents_K1(data) == [Fraction(-1, 6), Fraction(1, 6)]

    def test_a1(self, a1_system):
        _, data = a1_system
        assert residue_exponents_K1(data) == [Fraction(1, 2)]

    def test_deterministic(self, cusp_system):
        _, data = cusp_system
        assert residue_exponents_K1(data) == residue_exponents_K1(data)

    def test_not_applicable_for_k2(self, quadric_system):
        _, data = quadric_system
        with pytest.raises(NotApplicableError):
            residue_exponents_K1(data)


class TestFlatness:
    def test_k1_vacuous(self, cusp_system):
        _, data = cusp_system
        assert flatness_check(data).vacuous

    def test_quadric_flat(self, quadric_system):
        _, data = quadric_system
        rep = flatness_check(data, sample_points=5, seed=11)
        assert not rep.vacuous
        assert len(rep.points) == 5

    def test_mutation_detected(self, quadric_icis):
        from copy import deepcopy

        from lerayfront.brieskorn import gm_matrices

        gm = gm_matrices(quadric_icis, keep_certificates=False)
        data = assemble_system(gm, quadric_icis)
        # corrupt one entry of P^(1)
        bad = deepcopy(data.matrices)
        one = MultiPoly.constant(data.y_ring, 1)
        bad[1][0][0] = bad[1][0][0] + one
        data_bad = assemble_system(
            GMMatrices(
                matrices=bad,
                l_weights=data.l_weights,
                phi=data.phi,
                fbasis=data.fbasis,
            ),
            quadric_icis,
        )
        with pytest.raises(CurvatureNonzeroError):
            flatness_check(data_bad, sample_points=3, seed=11)
