import cmath
from fractions import Fraction as F

import pytest

from mmchar.errors import InsufficientTruncation, InvalidWeight
from mmchar.modular_forms import (HalfIntegralForm, ModularForm, bernoulli,
                                  dedekind_eta, discriminant, eisenstein,
                                  eval_at_tau, iterated_serre, j_invariant,
                                  serre_derivative)
from mmchar.qseries import PuiseuxSeries, pochhammer


def sigma(power, n):
    return sum(d ** power for d in range(1, n + 1) if n % d == 0)


class TestBernoulli:
    def test_spot_values(self):
        assert bernoulli(0) == 1
        assert bernoulli(1) == F(-1, 2)
        assert bernoulli(2) == F(1, 6)
        assert bernoulli(4) == F(-1, 30)
        assert bernoulli(12) == F(-691, 2730)
        assert bernoulli(7) == 0


class TestEisenstein:
    def test_e2_against_divisor_sums(self):
        e2 = eisenstein(2, 4).series
        assert [e2.coeff(n) for n in range(4)] == [1, -24, -72, -96]
        for n in range(1, 4):
            assert e2.coeff(n) == -24 * sigma(1, n)

    def test_e4_against_divisor_sums(self):
        e4 = eisenstein(4, 3).series
        assert [e4.coeff(n) for n in range(3)] == [1, 240, 2160]
        assert e4.coeff(2) == 240 * sigma(3, 2)

    def test_e12_basis_identity(self):
        n = 50
        lhs = 691 * eisenstein(12, n).series
        rhs = 441 * eisenstein(4, n).series ** 3 + 250 * eisenstein(6, n).series ** 2
        assert lhs == rhs

    def test_invalid_weight(self):
        with pytest.raises(InvalidWeight):
            eisenstein(3, 5)
        with pytest.raises(InvalidWeight):
            eisenstein(0, 5)


class TestEta:
    def test_leading_term(self):
        eta = dedekind_eta(6)
        assert isinstance(eta, HalfIntegralForm)
        assert eta.weight_times_two == 1
        assert eta.series.offset == F(1, 24)
        assert eta.series.leading_coeff == 1

    def test_discriminant_by_brute_force(self):
        # (q)_inf^24 expanded by repeated polynomial multiplication
        n = 5
        penta = [pochhammer(None, n).coeff(k) for k in range(n)]
        prod = [F(1)] + [F(0)] * (n - 1)
        for _ in range(24):
            new = [F(0)] * n
            for i, a in enumerate(prod):
                if a:
                    for j, b in enumerate(penta):
                        if i + j < n:
                            new[i + j] += a * b
            prod = new
        delta = discriminant(n).series
        assert delta.offset == 1
        assert [delta.coeff(k + 1) for k in range(4)] == prod[:4]
        assert prod[:4] == [1, -24, 252, -1472]

    def test_weight(self):
        assert discriminant(4).weight == 12

    def test_delta_vs_eisenstein(self):
        n = 30
        lhs = 1728 * discriminant(n).series
        rhs = eisenstein(4, n).series ** 3 - eisenstein(6, n).series ** 2
        assert lhs == rhs


class TestJInvariant:
    def test_by_forward_substitution_oracle(self):
        # j * Delta = E4^3 / 1728 * 1728: solve j's coefficients from the linear
        # system given Delta and E4^3, without calling series inversion
        n = 6
        e4cubed = eisenstein(4, n + 2).series ** 3
        delta = discriminant(n + 2).series
        jc = {}
        for k in range(-1, n):
            acc = e4cubed.coeff(k + 1)
            for m in range(-1, k):
                acc -= jc[m] * delta.coeff(k + 1 - m)
            jc[k] = acc / delta.coeff(1)
        j = j_invariant(n)
        assert j.coeff(-1) == jc[-1] == 1
        assert j.coeff(0) == jc[0] == 744
        assert j.coeff(1) == jc[1] == 196884


class TestSerre:
    def test_d4_e4(self):
        n = 40
        lhs = serre_derivative(eisenstein(4, n))
        assert lhs.weight == 6
        assert lhs.series == F(-1, 3) * eisenstein(6, n).series

    def test_d6_e6(self):
        n = 40
        lhs = serre_derivative(eisenstein(6, n))
        assert lhs.series == F(-1, 2) * eisenstein(4, n).series ** 2

    def test_d0_constant(self):
        one = ModularForm(0, PuiseuxSeries.one(10))
        assert serre_derivative(one).series.is_zero

    def test_weight_additivity(self):
        for k in (2, 4, 6, 8):
            f = eisenstein(k, 12)
            assert serre_derivative(f).weight == f.weight + 2

    def test_iterated_leading_coefficient(self):
        # D^m q^kappa has leading coefficient prod_{l<m} (kappa - l/6)
        for kappa in (F(11, 60), F(-1, 60), F(3, 8)):
            f = PuiseuxSeries(kappa, 1, [1], kappa + 12)
            for m in range(4):
                lead = iterated_serre(m, f).series.coeff(kappa)
                want = F(1)
                for l in range(m):
                    want *= kappa - F(l, 6)
                assert lead == want

    def test_iterated_zero_is_identity(self):
        f = PuiseuxSeries(F(1, 3), 1, [1, 2], F(1, 3) + 5)
        assert iterated_serre(0, f).series == f

    def test_rr_second_order_ode(self):
        from mmchar.characters import character
        n = 42
        ch = character(5, 2, n)
        lhs = iterated_serre(2, ch.series).series
        rhs = F(11, 3600) * eisenstein(4, n).series * ch.series
        assert lhs == rhs

    def test_ramanujan_e2_identity(self):
        # q E2' = (E2^2 - E4)/12 to full truncation
        n = 40
        e2 = eisenstein(2, n).series
        assert e2.q_derivative() == (e2 * e2 - eisenstein(4, n).series) * F(1, 12)


class TestEvalAtTau:
    def test_constant(self):
        assert eval_at_tau(PuiseuxSeries.one(5), 1j) == 1.0

    def test_e6_vanishes_at_i(self):
        val = eval_at_tau(eisenstein(6, 40), 1j, 1e-10)
        assert abs(val) < 1e-10

    def test_e4_vanishes_at_rho(self):
        rho = complex(-0.5, 3 ** 0.5 / 2)
        val = eval_at_tau(eisenstein(4, 40), rho, 1e-8)
        assert abs(val) < 1e-8

    def test_insufficient_truncation(self):
        with pytest.raises(InsufficientTruncation):
            eval_at_tau(eisenstein(12, 5), 0.02j, 1e-12)

    def test_fractional_offset_branch(self):
        # eta(tau) via the product formula; Re(tau) > 1/2 exercises the branch
        # where exp(2 pi i tau / 24) differs from the principal power of q
        for tau in (0.5 + 1.2j, 0.75 + 1.2j, -0.9 + 1.1j):
            got = eval_at_tau(dedekind_eta(40).series, tau, 1e-9)
            q = cmath.exp(2j * cmath.pi * tau)
            want = cmath.exp(2j * cmath.pi * tau / 24)
            for n in range(1, 60):
                want *= 1 - q ** n
            assert abs(got - want) < 1e-9
