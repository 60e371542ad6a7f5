"""Boundary-exponent analysis at a colliding pair of ramification points.

The Frobenius ansatz for the leading behavior in X = X_1 - X_2 turns the flow
equations into an eigenvalue problem ubar v = A v.  The marker t stands for
the bracket [p'''(X_s)/p'(X_s)]_{-1}, which depends on the remaining branch
points and is deliberately not a number; A is block lower-triangular, so its
spectrum is t-free even though eigenvectors are not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Tuple, Union

from .errors import NonRationalSpectrum, UnsupportedDim
from .sympoly import MultiPoly

T = MultiPoly.var("t")


@dataclass(frozen=True)
class AlgebraicRoot:
    """rational + coeff * sqrt(radicand), radicand squarefree and not a square."""

    rational: Fraction
    coeff: Fraction
    radicand: int

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) * self.radicand ** 0.5


Root = Union[Fraction, AlgebraicRoot]


def _sqrt_exact(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def _squarefree(n: int) -> Tuple[int, int]:
    """n = s^2 * r with r squarefree; returns (s, r)."""
    s, r, d = 1, 1, 2
    m = n
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1
    return s, r * m


def solve_monic_quadratic(b: Fraction, c: Fraction) -> Tuple[Root, Root]:
    """Roots of x^2 + b x + c, exact when rational, else as quadratic surds."""
    disc = b * b - 4 * c
    root = _sqrt_exact(disc)
    if root is not None:
        return (-b + root) / 2, (-b - root) / 2
    if disc < 0:
        raise NonRationalSpectrum(f"complex roots: discriminant {disc} < 0")
    s = Fraction(isqrt(disc.numerator * disc.denominator), disc.denominator)
    sq, rad = _squarefree(disc.numerator * disc.denominator)
    coeff = Fraction(sq, 2 * disc.denominator)
    return (AlgebraicRoot(-b / 2, coeff, rad), AlgebraicRoot(-b / 2, -coeff, rad))


def ubar_roots(c: Fraction) -> Tuple[Root, Root]:
    """Solutions of ubar(ubar - 9/5) = 7c/40, largest first when rational."""
    r1, r2 = solve_monic_quadratic(Fraction(-9, 5), -Fraction(7, 40) * Fraction(c))
    if isinstance(r1, Fraction) and isinstance(r2, Fraction):
        return (max(r1, r2), min(r1, r2))
    return r1, r2


def u_values(c: Fraction) -> Tuple[Root, Root]:
    """u = ubar + c/8 from the definition ubar = u - c/8.

    For c = -22/5 this gives {11/20, 3/20}; the printed values {33/40, 17/40}
    use c/8 = -11/40 instead of the actual -11/20 and are flagged downstream.
    """
    c = Fraction(c)
    out = []
    for r in ubar_roots(c):
        if isinstance(r, Fraction):
            out.append(r + c / 8)
        else:
            out.append(AlgebraicRoot(r.rational + c / 8, r.coeff, r.radicand))
    return tuple(out)


PUBLISHED_U = (Fraction(33, 40), Fraction(17, 40))


def genus1_alpha_roots() -> Tuple[Fraction, Fraction]:
    """Solutions of alpha(alpha - 1/3) = 11/900, largest first."""
    r1, r2 = solve_monic_quadratic(Fraction(-1, 3), Fraction(-11, 900))
    return (max(r1, r2), min(r1, r2))


@dataclass(frozen=True)
class FrobeniusMatrix:
    """Square matrix over Q[t], block lower-triangular with the 2x2 head."""

    dim: int
    entries: Tuple[Tuple[MultiPoly, ...], ...]

    def char_poly(self) -> MultiPoly:
        """det(lam*I - A) in the polynomial ring Q[lam, t, ...]."""
        lam = MultiPoly.var("lam")
        n = self.dim
        mat = [[(lam if i == j else MultiPoly.const(0)) - self.entries[i][j]
                for j in range(n)] for i in range(n)]
        return _det(mat)


def _det(mat: List[List[MultiPoly]]) -> MultiPoly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    out = MultiPoly.const(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def build_matrix(c: Fraction, k: int) -> FrobeniusMatrix:
    """The k x k leading-order flow matrix (k = 2, 3, 4).

    Rows: (0, 2, 0, ...), (7c/80, 9/5, 0, ...), ((7c/240) t, (11/30) t, 7/10, 0).
    The fourth row needs the two-point function of the derivative field, which
    is only known up to a free parameter; its entries stay formal symbols.
    """
    c = Fraction(c)
    if k not in (2, 3, 4):
        raise UnsupportedDim(f"supported dimensions are 2, 3, 4; got {k}")
    zero = MultiPoly.const(0)
    rows = [
        [zero, MultiPoly.const(2), zero, zero],
        [MultiPoly.const(Fraction(7, 80) * c), MultiPoly.const(Fraction(9, 5)), zero, zero],
        [MultiPoly.const(Fraction(7, 240) * c) * T, MultiPoly.const(Fraction(11, 30)) * T,
         MultiPoly.const(Fraction(7, 10)), zero],
        [MultiPoly.var("s41"), MultiPoly.var("s42"), MultiPoly.var("s43"),
         MultiPoly.var("s44")],
    ]
    entries = tuple(tuple(rows[i][j] for j in range(k)) for i in range(k))
    return FrobeniusMatrix(k, entries)


def eigenvalues(m: FrobeniusMatrix, c: Fraction) -> List[Root]:
    """Spectrum of the block-triangular matrix; verified against the exact
    characteristic polynomial, which must be free of t."""
    head = ubar_roots(c)
    vals: List[Root] = [head[1], head[0]] if isinstance(head[0], Fraction) else list(head)
    if m.dim >= 3:
        vals.append(Fraction(7, 10))
    if m.dim >= 4:
        raise UnsupportedDim("eigenvalues beyond the 3x3 block stay formal")
    vals_sorted = sorted(vals) if all(isinstance(v, Fraction) for v in vals) else vals
    # cross-check: char poly is t-free and splits over the claimed roots
    cp = m.char_poly()
    if cp.degree("t") != 0:
        raise NonRationalSpectrum("characteristic polynomial depends on t")
    if all(isinstance(v, Fraction) for v in vals):
        lam = MultiPoly.var("lam")
        expect = MultiPoly.const(1)
        for v in vals:
            expect = expect * (lam - MultiPoly.const(v))
        if not (cp - expect).is_zero:
            raise NonRationalSpectrum("characteristic polynomial does not split as claimed")
    return vals_sorted


def _is_rational(e: MultiPoly) -> bool:
    return (not e.is_zero) and all(e.degree(v) == 0 for v in e.vars)


def _kernel(mat: List[List[MultiPoly]]) -> List[List[MultiPoly]]:
    """Kernel basis over Q(t) of a matrix with Q[t] entries.

    Pivots are chosen anywhere a rational entry is available (columns in any
    order); the block structure of the flow matrices guarantees this suffices,
    so no division by a polynomial in t ever happens.
    """
    n = len(mat)
    m = len(mat[0]) if n else 0
    rows = [list(r) for r in mat]
    pivot_cols: List[int] = []
    r = 0
    while r < n:
        found = None
        for col in range(m):
            if col in pivot_cols:
                continue
            for i in range(r, n):
                if _is_rational(rows[i][col]):
                    found = (i, col)
                    break
            if found:
                break
        if found is None:
            if any(not rows[i][j].is_zero for i in range(r, n) for j in range(m)):
                raise NonRationalSpectrum(
                    "kernel computation would divide by a t-dependent entry")
            break
        i, col = found
        rows[r], rows[i] = rows[i], rows[r]
        pv = next(iter(rows[r][col].terms.values()))
        inv_pv = Fraction(1) / pv
        rows[r] = [e * inv_pv for e in rows[r]]
        for k in range(n):
            if k != r and not rows[k][col].is_zero:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivot_cols.append(col)
        r += 1
    free_cols = [j for j in range(m) if j not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [MultiPoly.const(0)] * m
        vec[fc] = MultiPoly.const(1)
        for i, pc in enumerate(pivot_cols):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


@dataclass
class EigenStructure:
    eigenvalues: List[Fraction]
    eigenvectors: Dict[Fraction, List[List[MultiPoly]]]
    diagonalizable: bool


def eigenstructure(m: FrobeniusMatrix, c: Fraction) -> EigenStructure:
    """Exact eigenvalues, kernel bases of (A - lam I) over Q(t), and the
    diagonalizability verdict (geometric multiplicities summing to dim)."""
    vals = eigenvalues(m, c)
    if not all(isinstance(v, Fraction) for v in vals):
        raise NonRationalSpectrum(f"irrational eigenvalues {vals}")
    vectors: Dict[Fraction, List[List[MultiPoly]]] = {}
    total = 0
    for lam in sorted(set(vals)):
        mat = [[m.entries[i][j] - (MultiPoly.const(lam) if i == j else MultiPoly.const(0))
                for j in range(m.dim)] for i in range(m.dim)]
        basis = _kernel(mat)
        vectors[lam] = basis
        total += len(basis)
    return EigenStructure(vals, vectors, total == m.dim)


def is_proportional(v: List[MultiPoly], w: List[MultiPoly]) -> bool:
    """v ~ w over Q(t): all 2x2 cross-determinants vanish and supports agree."""
    n = len(v)
    if n != len(w):
        return False
    for i in range(n):
        if v[i].is_zero != w[i].is_zero:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if not (v[i] * w[j] - v[j] * w[i]).is_zero:
                return False
    return True


def span3_equal(basis_a: List[List[MultiPoly]], basis_b: List[List[MultiPoly]]) -> bool:
    """Equality of 2-dimensional spans in 3-space over Q(t), via normal vectors."""
    if len(basis_a) != 2 or len(basis_b) != 2:
        return False

    def cross(u, v):
        return [u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0]]

    na = cross(basis_a[0], basis_a[1])
    nb = cross(basis_b[0], basis_b[1])
    if all(p.is_zero for p in na) or all(p.is_zero for p in nb):
        return False
    return is_proportional(na, nb)
