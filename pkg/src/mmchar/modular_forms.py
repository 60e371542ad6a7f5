"""Level-one q-expansions and the Serre derivative tower.

Eisenstein series are normalized to constant term 1.  The eta function is
weight 1/2 and therefore not a ModularForm; it is returned as a plain series
with an out-of-band half-weight tag.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Union

from .errors import InsufficientTruncation, InvalidWeight
from .qseries import PuiseuxSeries, pochhammer


@dataclass(frozen=True)
class ModularForm:
    """Weight-tagged q-expansion on SL(2,Z); weight is an even integer >= 0."""

    weight: int
    series: PuiseuxSeries

    def __post_init__(self):
        if self.weight < 0 or self.weight % 2:
            raise InvalidWeight(f"weight must be an even integer >= 0, got {self.weight}")

    def __add__(self, other):
        if isinstance(other, ModularForm):
            if other.weight != self.weight:
                raise InvalidWeight("cannot add forms of different weights")
            return ModularForm(self.weight, self.series + other.series)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, ModularForm):
            if other.weight != self.weight:
                raise InvalidWeight("cannot subtract forms of different weights")
            return ModularForm(self.weight, self.series - other.series)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ModularForm):
            return ModularForm(self.weight + other.weight, self.series * other.series)
        if isinstance(other, (int, Fraction)):
            return ModularForm(self.weight, self.series * other)
        if isinstance(other, PuiseuxSeries):
            return self.series * other
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return ModularForm(self.weight * n, self.series ** n)


@dataclass(frozen=True)
class HalfIntegralForm:
    """Series carrying a half-integral weight tag (eta and theta quotients)."""

    weight_times_two: int
    series: PuiseuxSeries


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from sum_{j<=m} C(m+1,j) B_j = 0."""
    if m == 0:
        return Fraction(1)
    s = Fraction(0)
    for j in range(m):
        s += comb(m + 1, j) * bernoulli(j)
    return -s / (m + 1)


def _divisor_power_sums(power: int, nmax: int) -> list:
    """sigma_power(n) for n = 0..nmax (index 0 unused), by sieving divisors."""
    sig = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        dp = d ** power
        for n in range(d, nmax + 1, d):
            sig[n] += dp
    return sig


@lru_cache(maxsize=None)
def eisenstein(k: int, trunc: int) -> ModularForm:
    """E_k = 1 - (2k/B_k) sum_n sigma_{k-1}(n) q^n, truncated at q^trunc."""
    if k % 2 or k < 2:
        raise InvalidWeight(f"Eisenstein weight must be even and >= 2, got {k}")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = _divisor_power_sums(k - 1, trunc - 1)
    coeffs = [Fraction(1)] + [factor * sig[n] for n in range(1, trunc)]
    return ModularForm(k, PuiseuxSeries(0, 1, coeffs, trunc))


def dedekind_eta(trunc: int) -> HalfIntegralForm:
    """eta = q^(1/24) (q)_infinity, tagged with weight 1/2."""
    tail = pochhammer(None, trunc)
    series = PuiseuxSeries(Fraction(1, 24), 1, tail.coeffs, Fraction(1, 24) + trunc)
    return HalfIntegralForm(1, series)


@lru_cache(maxsize=None)
def discriminant(trunc: int) -> ModularForm:
    """Delta = eta^24, weight 12, leading term q."""
    eta = dedekind_eta(trunc)
    return ModularForm(12, eta.series ** 24)


def j_invariant(trunc: int) -> PuiseuxSeries:
    """j = 1728 E4^3 / (E4^3 - E6^2) = q^-1 + 744 + 196884 q + ..."""
    # E4^3 - E6^2 = 1728 Delta has leading term q, so expansions to order
    # trunc + 2 give j exactly through q^(trunc - 1).
    n = trunc + 2
    e4 = eisenstein(4, n).series
    e6 = eisenstein(6, n).series
    num = e4 ** 3
    return (1728 * num / (num - e6 ** 2)).truncate(trunc)


def serre_derivative(f: ModularForm) -> ModularForm:
    """D_2l f = q df/dq - (l/6) E2 f, sending weight 2l to 2l + 2."""
    ell = Fraction(f.weight, 2)
    t = f.series.trunc
    out = f.series.q_derivative()
    if ell:
        e2 = eisenstein(2, _rel_terms(t)).series
        out = out - Fraction(ell, 6) * e2 * f.series
    return ModularForm(f.weight + 2, out)


def serre_derivative_series(s: PuiseuxSeries, weight: int) -> PuiseuxSeries:
    """Serre derivative acting on a bare series of the given even weight."""
    out = s.q_derivative()
    if weight:
        e2 = eisenstein(2, _rel_terms(s.trunc)).series
        out = out - Fraction(weight, 12) * e2 * s
    return out


def iterated_serre(m: int, f: PuiseuxSeries) -> ModularForm:
    """D^m = D_{2(m-1)} o ... o D_2 o D_0 on a weight-0 series; D^0 = identity."""
    if m < 0:
        raise ValueError("m must be >= 0")
    s = f
    for i in range(m):
        s = serre_derivative_series(s, 2 * i)
    return ModularForm(2 * m, s)


def _rel_terms(trunc) -> int:
    if trunc is None:
        raise ValueError("Serre derivative needs a truncated series")
    n = trunc.numerator // trunc.denominator if isinstance(trunc, Fraction) else int(trunc)
    return max(2, n + 2)


def eval_at_tau(s: Union[PuiseuxSeries, ModularForm], tau: complex,
                precision: float = 1e-12) -> complex:
    """Numeric value sum a_n q^(offset + n/grid) at q = exp(2 pi i tau).

    The dropped tail is bounded by geometric majorization from the last five
    stored coefficients; if that bound exceeds `precision` the truncation is
    refused rather than silently accepted.
    """
    if isinstance(s, ModularForm):
        s = s.series
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    q = cmath.exp(2j * cmath.pi * tau)
    # fractional powers of q mean exp(2 pi i tau e), not a principal branch
    base = cmath.exp(2j * cmath.pi * tau * float(s.offset))
    step = cmath.exp(2j * cmath.pi * tau / s.grid)
    total = 0j
    power = base
    for n, c in enumerate(s.coeffs):
        if c:
            total += complex(c) * power
        power *= step
    if s.trunc is not None and s.coeffs:
        tail = [abs(c) for c in s.coeffs[-5:]]
        growth = 1.0
        for a, b in zip(tail, tail[1:]):
            if a:
                growth = max(growth, float(b) / float(a))
        aq = abs(q) ** (1.0 / s.grid)
        r = growth * aq
        if r >= 1:
            raise InsufficientTruncation("|q|-adjusted growth ratio >= 1")
        last = float(tail[-1]) * abs(q) ** float(s.trunc)
        bound = last * growth / (1 - r)
        if bound > precision:
            raise InsufficientTruncation(
                f"tail bound {bound:g} exceeds requested precision {precision:g}")
    return total


NAMED_FORMS = {
    "E2": lambda n: eisenstein(2, n).series,
    "E4": lambda n: eisenstein(4, n).series,
    "E6": lambda n: eisenstein(6, n).series,
    "E8": lambda n: eisenstein(8, n).series,
    "E10": lambda n: eisenstein(10, n).series,
    "E12": lambda n: eisenstein(12, n).series,
    "Delta": lambda n: discriminant(n).series,
    "eta": lambda n: dedekind_eta(n).series,
    "j": lambda n: j_invariant(n),
}
