"""Minimal-model character q-series.

The (2,nu) characters are fermionic sums over the tadpole quadratic form:
with rank r = (nu-3)/2 and N_i = n_i + ... + n_r,

    <1>_s = q^kappa_s  sum_n  q^(N_1^2+...+N_r^2 + N_s+...+N_r) / ((q)_n1 ... (q)_nr)

which for nu = 5 reproduces the two Rogers-Ramanujan sums.  The quadratic
form N_1^2 + ... + N_r^2 equals n^t A n with A = C(T_r)^{-1}, A_ij = min(i,j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import IndexOutOfRange
from .modular_forms import j_invariant
from .qseries import PuiseuxSeries, inv, mul, pochhammer


@dataclass(frozen=True)
class MinimalModelId:
    mu: int
    nu: int

    def __post_init__(self):
        if self.mu < 2 or self.nu < 3 or gcd(self.mu, self.nu) != 1:
            raise IndexOutOfRange(f"({self.mu},{self.nu}) is not a coprime minimal-model pair")

    @property
    def num_characters(self) -> int:
        return (self.mu - 1) * (self.nu - 1) // 2


@dataclass(frozen=True)
class CharacterSeries:
    model: MinimalModelId
    s: int
    kappa: Fraction
    series: PuiseuxSeries


def kappa(nu: int, s: int) -> Fraction:
    """kappa_s = (nu-2s)^2/(8 nu) - 1/24 for the (2,nu) model, s = 1..(nu-1)/2."""
    if nu < 3 or nu % 2 == 0:
        raise IndexOutOfRange(f"nu must be odd and >= 3, got {nu}")
    m = (nu - 1) // 2
    if not 1 <= s <= m:
        raise IndexOutOfRange(f"s must be in 1..{m} for nu={nu}, got {s}")
    return Fraction((nu - 2 * s) ** 2, 8 * nu) - Fraction(1, 24)


def kappa_general(mu: int, nu: int, r: int, s: int) -> Fraction:
    """kappa_{r,s} = (nu r - mu s)^2/(4 mu nu) - 1/24; each value occurs twice."""
    if gcd(mu, nu) != 1:
        raise IndexOutOfRange(f"mu={mu}, nu={nu} must be coprime")
    if not (1 <= r <= mu - 1 and 1 <= s <= nu - 1):
        raise IndexOutOfRange(f"(r,s)=({r},{s}) outside 1..{mu - 1} x 1..{nu - 1}")
    return Fraction((nu * r - mu * s) ** 2, 4 * mu * nu) - Fraction(1, 24)


def tadpole_gram(r: int) -> list:
    """A = C(T_r)^{-1}; A_ij = min(i,j), the Gram matrix of the fermionic form."""
    return [[min(i, j) for j in range(1, r + 1)] for i in range(1, r + 1)]


@lru_cache(maxsize=None)
def _inv_pochhammer(n: int, trunc: int) -> PuiseuxSeries:
    return inv(pochhammer(n, trunc))


def _fermionic_tail(r: int, s: int, trunc: int) -> PuiseuxSeries:
    """Sum over N_1 >= ... >= N_r >= 0 of q^(sum N_i^2 + sum_{i>=s} N_i) / prod (q)_{n_i}.

    Parts n_i = N_i - N_{i+1} (with N_{r+1} = 0); the quadratic form is
    positive definite, so tuples with exponent >= trunc cannot contribute.
    """
    if r == 0:
        return PuiseuxSeries.one(trunc)
    total = PuiseuxSeries.zero(trunc)
    bound = isqrt(trunc) + 1

    def rec(i, prev, exponent, parts):
        nonlocal total
        if i > r:
            term = PuiseuxSeries.monomial(exponent, 1, trunc)
            for n in parts:
                if n:
                    term = mul(term, _inv_pochhammer(n, trunc))
            total = total + term
            return
        hi = prev if i > 1 else bound
        for big_n in range(hi + 1):
            add = big_n * big_n + (big_n if i >= s else 0)
            if exponent + add >= trunc:
                break
            parts_next = parts if i == 1 else parts + (prev - big_n,)
            if i == r:
                parts_next = parts_next + (big_n,)
            rec(i + 1, big_n, exponent + add, parts_next)

    rec(1, 0, 0, ())
    return total


def character(nu: int, s: int, trunc: int) -> CharacterSeries:
    """(2,nu) character as q^kappa_s times the fermionic tail, to relative order trunc."""
    k = kappa(nu, s)
    r = (nu - 3) // 2
    tail = _fermionic_tail(r, s, trunc)
    series = PuiseuxSeries(k + tail.offset, tail.grid, tail.coeffs, k + trunc)
    return CharacterSeries(MinimalModelId(2, nu), s, k, series)


def rr_product(s: int, trunc: int) -> PuiseuxSeries:
    """Rogers-Ramanujan product sides: residues +-2 mod 5 (s=1), +-1 mod 5 (s=2)."""
    if s not in (1, 2):
        raise IndexOutOfRange("s must be 1 or 2")
    residues = (2, 3) if s == 1 else (1, 4)
    den = PuiseuxSeries.one(trunc + 1)
    for n in range(1, trunc + 1):
        if n % 5 in residues:
            den = mul(den, PuiseuxSeries(0, 1, [1] + [0] * (n - 1) + [-1]))
    return inv(den)


def _legendre_mod5(n: int) -> int:
    return (0, 1, -1, -1, 1)[n % 5]


def ramanujan_cf(trunc: int) -> PuiseuxSeries:
    """r(tau) = q^(1/5) prod_n (1-q^n)^((n/5)), exact to relative order trunc."""
    tail = PuiseuxSeries.one(trunc)
    for n in range(1, trunc):
        f = PuiseuxSeries(0, 1, [1] + [0] * (n - 1) + [-1], trunc)
        chi = _legendre_mod5(n)
        if chi == 1:
            tail = mul(tail, f)
        elif chi == -1:
            tail = mul(tail, inv(f))
    return PuiseuxSeries(Fraction(1, 5) + tail.offset, tail.grid, tail.coeffs,
                         Fraction(1, 5) + trunc)


def icosahedral_residual(trunc: int) -> PuiseuxSeries:
    """(X^4 - 228 X^3 + 494 X^2 + 228 X + 1)^3 + j X (X^2 + 11 X - 1)^5 at X = r^5.

    Vanishes identically for the Ramanujan continued fraction r; the return
    value is the exact residual, zero through q^trunc when the identity holds.
    """
    rel = trunc + 13
    x = ramanujan_cf(rel) ** 5
    jq = j_invariant(rel)
    one = PuiseuxSeries.one()
    p1 = x ** 4 - 228 * x ** 3 + 494 * x ** 2 + 228 * x + one
    p2 = x ** 2 + 11 * x - one
    return (p1 ** 3 + jq * x * p2 ** 5).truncate(trunc)


def ising_character(s: int, trunc: int) -> CharacterSeries:
    """(3,4) characters from their classical fermionic forms.

    s=1 (h=0):     q^(-1/48) sum_{n >= 0 even} q^(n^2/2) / (q)_n
    s=2 (h=1/16):  q^(1/24)  sum_{n >= 0}      q^(n(n+1)/2) / (q)_n
    s=3 (h=1/2):   q^(-1/48) sum_{n >= 1 odd}  q^(n^2/2) / (q)_n
    """
    if s not in (1, 2, 3):
        raise IndexOutOfRange("Ising label must be 1, 2 or 3")
    total = PuiseuxSeries.zero(trunc)
    if s == 2:
        base = Fraction(1, 24)
        n = 0
        while n * (n + 1) // 2 < trunc:
            total = total + mul(PuiseuxSeries.monomial(Fraction(n * (n + 1), 2), 1, trunc),
                                _inv_pochhammer(n, trunc))
            n += 1
    else:
        base = Fraction(-1, 48)
        n = 0 if s == 1 else 1
        while n * n < 2 * trunc:
            total = total + mul(PuiseuxSeries.monomial(Fraction(n * n, 2), 1, trunc),
                                _inv_pochhammer(n, trunc))
            n += 2
    k = base if s != 3 else base + Fraction(1, 2)
    if s == 3:
        assert total.offset == Fraction(1, 2)
    series = PuiseuxSeries(base + total.offset, total.grid, total.coeffs,
                           base + total.trunc)
    return CharacterSeries(MinimalModelId(3, 4), s, k, series)
