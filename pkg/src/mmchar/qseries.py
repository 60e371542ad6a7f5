"""Truncated Puiseux series in the nome q with exact rational coefficients.

A series is a rational leading exponent (the offset) plus a tail supported on
offset + Z/grid.  Truncation is tracked explicitly: a series with trunc = t is
exact modulo q^t.  trunc = None marks an exact polynomial.  All values are
immutable; every operation returns a new series.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

from .errors import GridMismatch, ZeroSeries

Rat = Union[Fraction, int]


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_trunc(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PuiseuxSeries:
    """Sum_n coeffs[n] * q^(offset + n/grid), exact modulo q^trunc."""

    __slots__ = ("offset", "grid", "coeffs", "trunc")

    def __init__(self, offset: Rat, grid: int, coeffs: Iterable[Rat],
                 trunc: Optional[Rat] = None):
        if grid < 1:
            raise ValueError("grid must be a positive integer")
        offset = _frac(offset)
        trunc_f = None if trunc is None else _frac(trunc)
        cs = [_frac(c) for c in coeffs]

        # drop stored coefficients at exponents >= trunc
        if trunc_f is not None:
            span = (trunc_f - offset) * grid
            keep = max(0, -(-span.numerator // span.denominator) if span > 0 else 0)
            cs = cs[:keep]
        # normalize: leading exponent has a nonzero coefficient
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        if lead == len(cs):
            self.offset = Fraction(0)
            self.grid = 1
            self.coeffs = ()
            self.trunc = trunc_f
            return
        if lead:
            offset += Fraction(lead, grid)
            cs = cs[lead:]
        while cs and cs[-1] == 0:
            cs.pop()
        # coarsen the grid when the support allows it
        if grid > 1:
            g = grid
            for n, c in enumerate(cs):
                if c != 0:
                    g = gcd(g, n)
                if g == 1:
                    break
            if g > 1:
                cs = cs[::g]
                grid //= g
        self.offset = offset
        self.grid = grid
        self.coeffs = tuple(cs)
        self.trunc = trunc_f

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(trunc: Optional[Rat] = None) -> "PuiseuxSeries":
        return PuiseuxSeries(0, 1, [], trunc)

    @staticmethod
    def one(trunc: Optional[Rat] = None) -> "PuiseuxSeries":
        return PuiseuxSeries(0, 1, [1], trunc)

    @staticmethod
    def monomial(exponent: Rat, coeff: Rat = 1,
                 trunc: Optional[Rat] = None) -> "PuiseuxSeries":
        return PuiseuxSeries(exponent, 1, [coeff], trunc)

    @staticmethod
    def from_polynomial(coeffs: Sequence[Rat], trunc: Optional[Rat] = None) -> "PuiseuxSeries":
        """Integer-exponent series with coeffs[n] the coefficient of q^n."""
        return PuiseuxSeries(0, 1, coeffs, trunc)

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (zero within truncation)."""
        return not self.coeffs

    @property
    def leading_coeff(self) -> Fraction:
        if self.is_zero:
            raise ZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def order(self) -> Optional[Fraction]:
        """Exponent of the first nonzero term, or None for a zero series."""
        return None if self.is_zero else self.offset

    def exponents(self):
        for n, c in enumerate(self.coeffs):
            if c != 0:
                yield self.offset + Fraction(n, self.grid)

    def coeff(self, exponent: Rat) -> Fraction:
        """Coefficient of q^exponent; raises if the exponent is beyond truncation."""
        e = _frac(exponent)
        if self.trunc is not None and e >= self.trunc:
            raise ValueError(f"coefficient of q^{e} not determined (trunc={self.trunc})")
        rel = (e - self.offset) * self.grid
        if rel.denominator != 1 or rel < 0 or rel >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[rel.numerator]

    def truncate(self, trunc: Rat) -> "PuiseuxSeries":
        t = _min_trunc(self.trunc, _frac(trunc))
        return PuiseuxSeries(self.offset, self.grid, self.coeffs, t)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O(q^{self.trunc})" if self.trunc is not None else "0"
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.offset + Fraction(n, self.grid)
            parts.append(f"{c}*q^({e})" if e else f"{c}")
            if len(parts) >= 8:
                parts.append("...")
                break
        s = " + ".join(parts)
        return s + (f" + O(q^{self.trunc})" if self.trunc is not None else "")

    # -- ring operations -----------------------------------------------------

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.offset, self.grid, [-c for c in self.coeffs], self.trunc)

    def __add__(self, other) -> "PuiseuxSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        if self.is_zero:
            return other.truncate(trunc) if trunc is not None else other
        if other.is_zero:
            return self.truncate(trunc) if trunc is not None else self
        a, b = align(self, other)
        base = min(a.offset, b.offset)
        d = a.grid
        sa = (a.offset - base) * d
        sb = (b.offset - base) * d
        if sa.denominator != 1 or sb.denominator != 1:
            raise GridMismatch(
                f"offsets {a.offset} and {b.offset} differ by a non-grid amount on D={d}")
        sa, sb = sa.numerator, sb.numerator
        n = max(sa + len(a.coeffs), sb + len(b.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(a.coeffs):
            out[sa + i] += c
        for i, c in enumerate(b.coeffs):
            out[sb + i] += c
        return PuiseuxSeries(base, d, out, trunc)

    __radd__ = __add__

    def __sub__(self, other) -> "PuiseuxSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PuiseuxSeries":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "PuiseuxSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PuiseuxSeries":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return inv(self) ** (-n)
        result = PuiseuxSeries.one(None)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base) if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other) -> "PuiseuxSeries":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, inv(other))

    def __eq__(self, other) -> bool:
        """Equality of known coefficients up to the smaller truncation order."""
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        raise TypeError("PuiseuxSeries is not hashable")

    # -- calculus ------------------------------------------------------------

    def q_derivative(self) -> "PuiseuxSeries":
        """q * d/dq, term by term; exact on every known coefficient."""
        cs = [c * (self.offset + Fraction(n, self.grid))
              for n, c in enumerate(self.coeffs)]
        return PuiseuxSeries(self.offset, self.grid, cs, self.trunc)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "offset": str(self.offset),
            "grid": self.grid,
            "coeffs": [str(c) for c in self.coeffs],
            "trunc": None if self.trunc is None else str(self.trunc),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(d: dict) -> "PuiseuxSeries":
        trunc = d.get("trunc")
        return PuiseuxSeries(Fraction(d["offset"]), int(d["grid"]),
                             [Fraction(c) for c in d["coeffs"]],
                             None if trunc is None else Fraction(trunc))

    @staticmethod
    def from_json(s: str) -> "PuiseuxSeries":
        return PuiseuxSeries.from_json_dict(json.loads(s))


def _coerce(x) -> Union[PuiseuxSeries, type(NotImplemented)]:
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, (int, Fraction)):
        return PuiseuxSeries.monomial(0, x) if x else PuiseuxSeries.zero()
    return NotImplemented


def align(a: PuiseuxSeries, b: PuiseuxSeries):
    """Rewrite both series on the common grid lcm(D_a, D_b, den a.offset, den b.offset).

    Offsets are unchanged; only the tail grids are refined, so addition of the
    two results is well defined.
    """
    d = lcm(a.grid, b.grid, a.offset.denominator, b.offset.denominator)
    return _regrid(a, d), _regrid(b, d)


def _regrid(a: PuiseuxSeries, d: int) -> PuiseuxSeries:
    if d == a.grid:
        return a
    f = d // a.grid
    cs = [Fraction(0)] * ((len(a.coeffs) - 1) * f + 1) if a.coeffs else []
    for n, c in enumerate(a.coeffs):
        cs[n * f] = c
    out = PuiseuxSeries.__new__(PuiseuxSeries)
    out.offset, out.grid, out.coeffs, out.trunc = a.offset, d, tuple(cs), a.trunc
    return out


def mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    """Cauchy product; offsets add, truncation propagates pessimistically."""
    ta = None if a.trunc is None else a.trunc + b.offset
    tb = None if b.trunc is None else b.trunc + a.offset
    trunc = _min_trunc(ta, tb)
    if a.is_zero or b.is_zero:
        return PuiseuxSeries.zero(trunc)
    d = lcm(a.grid, b.grid)
    fa, fb = d // a.grid, d // b.grid
    offset = a.offset + b.offset
    if trunc is not None:
        span = (trunc - offset) * d
        nmax = -(-span.numerator // span.denominator) if span > 0 else 0
    else:
        nmax = (len(a.coeffs) - 1) * fa + (len(b.coeffs) - 1) * fb + 1
    out = [Fraction(0)] * nmax
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        base = i * fa
        if base >= nmax:
            break
        jmax = min(len(b.coeffs), (nmax - base + fb - 1) // fb)
        for j in range(jmax):
            cb = b.coeffs[j]
            if cb != 0:
                out[base + j * fb] += ca * cb
    return PuiseuxSeries(offset, d, out, trunc)


def inv(a: PuiseuxSeries, rel_order: Optional[int] = None) -> PuiseuxSeries:
    """Multiplicative inverse; mul(a, inv(a)) = 1 + O(q^N) within truncation.

    The offset negates.  For an exact polynomial input, rel_order must supply
    the number of tail terms to produce.
    """
    if a.is_zero:
        raise ZeroSeries("cannot invert a series with no nonzero coefficient")
    if len(a.coeffs) == 1:
        # a monomial inverts exactly
        out = PuiseuxSeries.monomial(-a.offset, 1 / a.coeffs[0])
        if a.trunc is not None:
            out = out.truncate(a.trunc - 2 * a.offset)
        return out
    if a.trunc is None and rel_order is None:
        raise ValueError("inverting an exact polynomial needs rel_order")
    if a.trunc is not None:
        span = (a.trunc - a.offset) * a.grid
        n = max(1, -(-span.numerator // span.denominator))
        if rel_order is not None:
            n = min(n, rel_order * a.grid + 1)
    else:
        n = rel_order * a.grid + 1
    c0 = a.coeffs[0]
    u = [a.coeffs[i] / c0 if i < len(a.coeffs) else Fraction(0) for i in range(n)]
    r = [Fraction(0)] * n
    r[0] = Fraction(1)
    for k in range(1, n):
        r[k] = -sum(u[j] * r[k - j] for j in range(1, k + 1) if u[j] != 0)
    out = [c / c0 for c in r]
    trunc = -a.offset + Fraction(n, a.grid)
    if a.trunc is not None:
        trunc = min(trunc, a.trunc - 2 * a.offset)
    return PuiseuxSeries(-a.offset, a.grid, out, trunc)


def pochhammer(n: Optional[int], trunc: int) -> PuiseuxSeries:
    """(q)_n = prod_{k=1..n} (1 - q^k) truncated at q^trunc; n=None means infinity.

    For the infinite product, factors with k > trunc cannot contribute below
    the truncation order, so the product over k <= trunc is exact there.
    """
    if trunc < 1:
        raise ValueError("truncation order must be >= 1")
    if n is not None and n < 0:
        raise ValueError("n must be a nonnegative integer or None (infinity)")
    kmax = trunc if n is None else min(n, trunc)
    out = [Fraction(0)] * trunc
    out[0] = Fraction(1)
    top = 0
    for k in range(1, kmax + 1):
        top = min(trunc - 1, top + k)
        for i in range(top, k - 1, -1):
            out[i] -= out[i - k]
    return PuiseuxSeries(0, 1, out, trunc)
