from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mmchar.errors import ZeroSeries
from mmchar.qseries import PuiseuxSeries, align, inv, mul, pochhammer


def brute_partitions(n):
    # p(k) for k <= n by the standard DP over part sizes
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for k in range(part, n + 1):
            table[k] += table[k - part]
    return table


def brute_pentagonal(n):
    # prod (1-q^k) expanded directly, k <= n
    out = [F(1)] + [F(0)] * n
    for k in range(1, n + 1):
        for i in range(n, k - 1, -1):
            out[i] -= out[i - k]
    return out


class TestAlign:
    def test_eta_vs_sixth(self):
        a = PuiseuxSeries(F(1, 24), 1, [1], 2)
        b = PuiseuxSeries(F(1, 6), 1, [1], 2)
        aa, bb = align(a, b)
        assert aa.grid == bb.grid == 24
        assert (aa.offset, bb.offset) == (F(1, 24), F(1, 6))

    def test_identity_case(self):
        x = PuiseuxSeries(0, 1, [1, 2, 3], 5)
        aa, bb = align(x, x)
        assert aa.coeffs == bb.coeffs == x.coeffs
        assert aa.grid == x.grid

    def test_rr_offsets(self):
        a = PuiseuxSeries(F(11, 60), 1, [1, 0, 1], F(11, 60) + 3)
        b = PuiseuxSeries(F(-1, 60), 1, [1, 1], F(-1, 60) + 2)
        aa, bb = align(a, b)
        assert aa.grid == bb.grid == 60
        assert (aa.offset, bb.offset) == (F(11, 60), F(-1, 60))
        # addition is defined on the aligned pair
        assert (aa + bb).order() == F(-1, 60)


class TestMul:
    def test_polynomial(self):
        a = PuiseuxSeries.from_polynomial([1, 1])
        b = PuiseuxSeries.from_polynomial([1, -1])
        assert (a * b).coeffs == (F(1), F(0), F(-1))

    def test_exponent_addition(self):
        a = PuiseuxSeries.monomial(F(11, 60))
        b = PuiseuxSeries.monomial(F(-1, 60))
        assert (a * b).offset == F(1, 6)

    def test_eta_fourth_power(self):
        # brute-force (q)_inf^4 oracle
        n = 10
        penta = brute_pentagonal(n)
        prod = [F(0)] * (n + 1)
        prod[0] = F(1)
        for _ in range(4):
            new = [F(0)] * (n + 1)
            for i, a in enumerate(prod):
                for j, b in enumerate(penta):
                    if i + j <= n:
                        new[i + j] += a * b
            prod = new
        from mmchar.modular_forms import dedekind_eta
        eta = dedekind_eta(n + 1).series
        eta4 = eta * eta * eta * eta
        assert eta4.offset == F(1, 6)
        assert list(eta4.coeffs[:7]) == prod[:7]
        assert prod[:7] == [F(1), F(-4), F(2), F(8), F(-5), F(-4), F(-10)]


class TestInv:
    def test_geometric(self):
        s = inv(PuiseuxSeries.from_polynomial([1, -1]), rel_order=6)
        assert list(s.coeffs) == [F(1)] * 7

    def test_monomial(self):
        assert inv(PuiseuxSeries.monomial(1)).offset == -1

    def test_partition_numbers(self):
        s = inv(pochhammer(None, 7))
        assert [int(c) for c in s.coeffs] == brute_partitions(6)

    def test_zero_raises(self):
        with pytest.raises(ZeroSeries):
            inv(PuiseuxSeries.zero(5))


class TestPochhammer:
    def test_small(self):
        assert list(pochhammer(1, 5).coeffs) == [F(1), F(-1)]
        assert list(pochhammer(2, 5).coeffs) == [F(1), F(-1), F(-1), F(1)]

    def test_euler_pentagonal(self):
        got = pochhammer(None, 13)
        want = brute_pentagonal(12)
        assert [got.coeff(k) for k in range(13)] == want


# -- property tests ----------------------------------------------------------------

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=6)
offsets = st.fractions(min_value=-2, max_value=2, max_denominator=24)


@st.composite
def series(draw, nonzero_lead=False):
    coeffs = draw(st.lists(small_fracs, min_size=1, max_size=6))
    if nonzero_lead and coeffs[0] == 0:
        coeffs[0] = F(1)
    offset = draw(offsets)
    grid = draw(st.sampled_from([1, 2, 3]))
    rel = draw(st.integers(min_value=len(coeffs), max_value=len(coeffs) + 4))
    return PuiseuxSeries(offset, grid, coeffs, offset + F(rel, grid))


@settings(max_examples=120, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b) - (b + a) == PuiseuxSeries.zero()
    assert (a * b) - (b * a) == PuiseuxSeries.zero()
    assert ((a + b) + c) - (a + (b + c)) == PuiseuxSeries.zero()
    assert ((a * b) * c) - (a * (b * c)) == PuiseuxSeries.zero()
    assert a * (b + c) - (a * b + a * c) == PuiseuxSeries.zero()


@settings(max_examples=120, deadline=None)
@given(series(nonzero_lead=True))
def test_mul_inv_is_one(a):
    assert mul(a, inv(a)) - 1 == PuiseuxSeries.zero()


@settings(max_examples=120, deadline=None)
@given(series(nonzero_lead=True), series(nonzero_lead=True))
def test_offset_bookkeeping(a, b):
    assert mul(a, b).offset == a.offset + b.offset
    assert inv(a).offset == -a.offset


@settings(max_examples=60, deadline=None)
@given(series())
def test_json_round_trip(a):
    back = PuiseuxSeries.from_json(a.to_json())
    assert back.offset == a.offset and back.coeffs == a.coeffs
    assert back.trunc == a.trunc and back.grid == a.grid


def test_coeff_beyond_truncation_raises():
    s = PuiseuxSeries(0, 1, [1, 2], 2)
    assert s.coeff(1) == 2
    with pytest.raises(ValueError):
        s.coeff(2)


def test_truncation_propagation():
    a = PuiseuxSeries(0, 1, [1, 1, 1], 3)
    b = PuiseuxSeries(1, 1, [1], 4)
    assert (a + b).trunc == 3
    assert (a * b).trunc == 4  # min(3 + 1, 4 + 0)
