from fractions import Fraction as F

import pytest

from mmchar.characters import character, ising_character
from mmchar.errors import InconsistentSystem, NotApplicable
from mmchar.modular_forms import dedekind_eta, eisenstein
from mmchar.ode_builder import (annihilation_order, apply_operator, build_operator,
                                cusp_solve, distinct_kappas, general_solve,
                                indicial_solve, indicial_solve_from_kappas,
                                serre_symbol_poly, truncate_above, wronskian)
from mmchar.qseries import PuiseuxSeries

PUBLISHED_TABLE = {
    3: {},
    5: {0: -F(11, 60 ** 2)},
    7: {1: -F(5 * 7, 42 ** 2), 0: F(5 * 17, 42 ** 3)},
    9: {2: -F(2 * 3 * 13, 36 ** 2), 1: F(2 ** 3 * 53, 36 ** 3), 0: -F(3 * 11 * 23, 36 ** 4)},
    11: {3: -F(11 * 53, 2 ** 2 * 33 ** 2), 2: F(3 * 5 * 11 * 59, 2 ** 3 * 33 ** 3),
         1: -F(11 * 6151, 2 ** 4 * 33 ** 4), 0: F(2 ** 4 * 17 * 29, 33 ** 5)},
    13: {4: -F(7 * 13 * 67, 156 ** 2), 3: F(2 ** 3 * 13 * 17 * 193, 156 ** 3),
         2: -F(5 * 11 * 13 * 89 * 127, 156 ** 4), 1: F(2 ** 3 * 3 * 5 * 13 * 31 * 2437, 156 ** 5),
         0: -F(5 ** 4 * 7 ** 2 * 23 * 31 * 67, 156 ** 6)},
}


class TestIndicial:
    def test_table(self):
        for nu, want in PUBLISHED_TABLE.items():
            assert indicial_solve(nu) == want

    def test_m_equals_one(self):
        assert indicial_solve(3) == {}

    def test_inconsistent_kappas_raise(self):
        # exponents that violate the kappa^(M-1) sum rule cannot be matched
        with pytest.raises(InconsistentSystem):
            indicial_solve_from_kappas([F(0), F(1)])

    def test_symbol_poly(self):
        # prod_{l<3} (k - l/6) = k^3 - (1/2)k^2 + (1/18)k
        assert serre_symbol_poly(3) == [F(0), F(1, 18), F(-1, 2), F(1)]


class TestCusp:
    def test_value(self):
        want = F(5 ** 2 * 7 * 11 * 23 ** 2 * 167, 2 ** 5 * 3 ** 2 * 13 ** 4 * 691)
        assert cusp_solve(13) == want

    def test_alternate_basis_identity(self):
        # alpha_0 E12 + alpha_0^cusp Delta recombined over {E4^3, E6^2}
        a0 = PUBLISHED_TABLE[13][0]
        ac = cusp_solve(13)
        e4c = a0 * F(441, 691) + ac * F(1, 1728)
        e6s = a0 * F(250, 691) - ac * F(1, 1728)
        c = -F(5 ** 2 * 7 * 23, 2 ** 7 * 3 ** 5 * 13 ** 6)
        assert e4c == c * F(53 * 1069, 2 ** 5)
        assert e6s == c * F(6047, 3)

    def test_not_applicable_below_13(self):
        for nu in (3, 5, 7, 9, 11):
            with pytest.raises(NotApplicable):
                cusp_solve(nu)


class TestBuildOperator:
    def test_weights_25(self):
        op = build_operator(5, 12)
        assert op.order == 2
        assert set(op.terms) == {0}
        assert op.terms[0].weight == 4

    def test_weights_213(self):
        op = build_operator(13, 14)
        assert set(op.terms) == {0, 1, 2, 3, 4}
        assert sorted(t.weight for t in op.terms.values()) == [4, 6, 8, 10, 12]
        assert op.cusp_coeff is not None

    def test_order_one(self):
        op = build_operator(3, 10)
        assert op.order == 1 and not op.terms


class TestApply:
    def test_annihilates_characters(self):
        op = build_operator(5, 40)
        for s in (1, 2):
            out = apply_operator(op, character(5, s, 38).series)
            assert out.is_zero

    def test_indicial_polynomial_at_zero(self):
        # D^(2,5) on q^0: leading coefficient (0 - 11/60)(0 + 1/60) = -11/3600
        op = build_operator(5, 12)
        out = apply_operator(op, PuiseuxSeries.one(12))
        assert out.coeff(0) == F(-11, 3600)

    def test_first_order_on_constant(self):
        op = build_operator(3, 10)
        assert apply_operator(op, PuiseuxSeries.one(10)).is_zero


class TestAnnihilationOrder:
    def test_characters_infinite(self):
        op = build_operator(7, 30)
        for s in (1, 2, 3):
            assert annihilation_order(op, character(7, s, 28).series) is None

    def test_impostor_finite(self):
        op = build_operator(5, 20)
        assert annihilation_order(op, eisenstein(4, 20).series) is not None

    def test_constant_under_first_order(self):
        op = build_operator(3, 10)
        assert annihilation_order(op, PuiseuxSeries.one(10)) is None


class TestWronskian:
    def test_leading_term_25(self):
        fs = [character(5, s, 20).series for s in (1, 2)]
        w = wronskian(fs)
        assert w[2].order() == F(1, 6)
        assert w[2].leading_coeff == F(-1, 5)

    def test_eta_fourth_relation(self):
        fs = [character(5, s, 44).series for s in (1, 2)]
        w = wronskian(fs)
        eta4 = dedekind_eta(44).series ** 4
        comb = 5 * w[2] + eta4
        assert comb.is_zero
        assert comb.trunc - F(1, 6) >= 40

    def test_vanishing_orders(self):
        for nu in (5, 7, 9):
            m = (nu - 1) // 2
            fs = [character(nu, s, 26).series for s in range(1, m + 1)]
            w = wronskian(fs)
            assert w[m].order() == F(m * (m - 1), 12)

    def test_wronskian_annihilates_solutions(self):
        # sum w_i D^i f = 0 whenever f is one of the basis functions
        from mmchar.modular_forms import serre_derivative_series
        fs = [character(5, s, 24).series for s in (1, 2)]
        w = wronskian(fs)
        f = fs[0]
        derivs = [f]
        for m in range(2):
            derivs.append(serre_derivative_series(derivs[m], 2 * m))
        total = w[0] * derivs[0] + w[1] * derivs[1] + w[2] * derivs[2]
        assert total.is_zero


class TestGeneralSolve:
    def test_reduces_to_two_five(self):
        op = general_solve(2, 5, 12)
        alphas = {m: f.series.coeff(0) for m, f in op.terms.items()}
        assert alphas == indicial_solve(5)

    def test_two_thirteen_table(self):
        op = general_solve(2, 13, 14)
        assert op.cusp_coeff == cusp_solve(13)
        # the weight-12 slot is alpha_0 E12 + cusp Delta; constant term is alpha_0
        assert op.terms[0].series.coeff(0) == PUBLISHED_TABLE[13][0]
        for m in (1, 2, 3, 4):
            assert op.terms[m].series.coeff(0) == PUBLISHED_TABLE[13][m]

    def test_ising_annihilation(self):
        op = general_solve(3, 4, 36)
        for s in (1, 2, 3):
            ch = ising_character(s, 32)
            out = apply_operator(op, ch.series)
            assert out.is_zero
            assert out.trunc - ch.kappa >= 30

    def test_distinct_kappas(self):
        ks = distinct_kappas(3, 4)
        assert sorted(ks) == sorted([F(-1, 48), F(1, 24), F(23, 48)])


class TestModularODEType:
    def test_weight_mismatch_rejected(self):
        from mmchar.ode_builder import ModularODE
        from mmchar.modular_forms import eisenstein
        with pytest.raises(InconsistentSystem):
            ModularODE(2, {0: eisenstein(6, 8)})  # slot m=0 needs weight 4


class TestProjection:
    def test_truncate_above(self):
        s = PuiseuxSeries(-1, 1, [1, 2, 3, 4], 3)
        out = truncate_above(s, 0)
        assert out.order() == 1
        assert [out.coeff(k) for k in (1, 2)] == [3, 4]
