"""Modular differential operators annihilating minimal-model characters.

The order-M operator is D = D^M + sum_{m <= M-2} Omega_{2(M-m)} D^m with D^m
the iterated Serre derivative.  For weights 4..10 each Omega is a rational
multiple of the Eisenstein series; the weight-12 slot also carries a cusp-form
part alpha_0^cusp * Delta.  The Eisenstein multiples come from matching the
indicial polynomial prod_s (kappa - kappa_s); the cusp multiple from killing
the next-to-leading order of the vacuum character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .characters import CharacterSeries, character, ising_character, kappa, kappa_general
from .errors import InconsistentSystem, NotApplicable
from .modular_forms import (ModularForm, discriminant, eisenstein,
                            serre_derivative_series)
from .qseries import PuiseuxSeries


@dataclass
class ModularODE:
    """D^M + sum_m Omega_{2(M-m)} D^m, with weight(Omega_{2(M-m)}) = 2(M-m)."""

    order: int
    terms: Dict[int, ModularForm] = field(default_factory=dict)
    cusp_coeff: Optional[Fraction] = None

    def __post_init__(self):
        for m, omega in self.terms.items():
            if omega.weight != 2 * (self.order - m):
                raise InconsistentSystem(
                    f"Omega at D^{m} has weight {omega.weight}, expected {2 * (self.order - m)}")


def _poly_mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_from_roots(roots: Sequence[Fraction]) -> List[Fraction]:
    p = [Fraction(1)]
    for r in roots:
        p = _poly_mul(p, [-r, Fraction(1)])
    return p


def serre_symbol_poly(m: int) -> List[Fraction]:
    """q^-kappa [D^m]_0 q^kappa = prod_{l=0}^{m-1} (kappa - l/6), as coefficients."""
    return _poly_from_roots([Fraction(l, 6) for l in range(m)])


def indicial_solve_from_kappas(kappas: Sequence[Fraction]) -> Dict[int, Fraction]:
    """Match prod_s (k - kappa_s) = P_M(k) + sum_{m<=M-2} alpha_m P_m(k).

    The P_m are monic of degree m, so matching coefficients of k^m descending
    is a triangular exact solve.  The k^(M-1) coefficient must match with no
    alpha at all; failure would contradict alpha_{M-1} = 0.
    """
    m_order = len(kappas)
    resid = _poly_from_roots(kappas)
    top = serre_symbol_poly(m_order)
    resid = [a - b for a, b in zip(resid, top)]
    alphas: Dict[int, Fraction] = {}
    for m in range(m_order - 1, -1, -1):
        coef = resid[m]
        if m == m_order - 1:
            if coef != 0:
                raise InconsistentSystem(
                    f"kappa^{m} coefficient {coef} nonzero: alpha_(M-1) would not vanish")
            continue
        if coef != 0:
            alphas[m] = coef
            basis = serre_symbol_poly(m)
            for j, b in enumerate(basis):
                resid[j] -= coef * b
    if any(resid[: m_order - 1]) or resid[m_order - 1] != 0:
        raise InconsistentSystem("indicial matching left a nonzero residue")
    return alphas


def indicial_solve(nu: int) -> Dict[int, Fraction]:
    """Eisenstein coefficients alpha_m of D^(2,nu), for odd 3 <= nu <= 13."""
    if nu % 2 == 0 or not 3 <= nu <= 13:
        raise NotApplicable(f"nu must be odd with 3 <= nu <= 13, got {nu}")
    m_count = (nu - 1) // 2
    return indicial_solve_from_kappas([kappa(nu, s) for s in range(1, m_count + 1)])


def cusp_solve(nu: int, trunc: int = 12) -> Fraction:
    """Delta-coefficient in the weight-12 slot, from the vacuum character.

    Only nu = 13 has a weight-12 slot among the tabulated models.  The
    Eisenstein parts kill the q^kappa_s orders; requiring the operator to kill
    the vacuum character at order kappa_1 + 1 as well fixes the Delta part
    (all higher orders then vanish automatically).
    """
    if nu % 2 == 0 or nu < 3:
        raise NotApplicable(f"nu must be odd and >= 3, got {nu}")
    m_count = (nu - 1) // 2
    if m_count < 6:
        raise NotApplicable(f"(2,{nu}) has no weight-12 slot (M = {m_count} < 6)")
    if nu != 13:
        raise NotApplicable("only nu = 13 is supported")
    d_eis = build_operator(nu, trunc, with_cusp=False)
    vac = character(nu, 1, trunc)
    resid = apply_operator(d_eis, vac.series)
    k1 = vac.kappa
    c1 = resid.coeff(k1 + 1)
    # Delta * D^0 <1>_1 contributes q^(1 + kappa_1) * 1 at that order
    delta1 = discriminant(trunc).series.coeff(1)
    lead = vac.series.coeff(k1)
    return -c1 / (delta1 * lead)


def build_operator(nu: int, trunc: int, with_cusp: bool = True) -> ModularODE:
    """Assemble D^(2,nu) with series coefficients exact modulo q^trunc."""
    alphas = indicial_solve(nu)
    m_count = (nu - 1) // 2
    terms: Dict[int, ModularForm] = {}
    for m, alpha in alphas.items():
        weight = 2 * (m_count - m)
        terms[m] = alpha * eisenstein(weight, trunc)
    cusp = None
    if m_count >= 6 and with_cusp:
        cusp = cusp_solve(nu)
        terms[0] = terms[0] + cusp * discriminant(trunc)
    return ModularODE(m_count, terms, cusp)


def apply_operator(d: ModularODE, f: PuiseuxSeries) -> PuiseuxSeries:
    """D f = D^M f + sum_m Omega_m D^m f."""
    derivs = [f]
    for m in range(d.order):
        derivs.append(serre_derivative_series(derivs[m], 2 * m))
    out = derivs[d.order]
    for m, omega in d.terms.items():
        out = out + omega.series * derivs[m]
    return out


def annihilation_order(d: ModularODE, f: PuiseuxSeries) -> Optional[Fraction]:
    """First exponent where D f has a nonzero coefficient; None if it vanishes
    to the full (propagated) truncation order."""
    return apply_operator(d, f).order()


def wronskian(fs: Sequence[PuiseuxSeries]) -> List[PuiseuxSeries]:
    """Coefficients w_0..w_M with det[f, D^1 f, ..., D^M f; rows for each f_i]
    = sum_i w_i D^i f; each w_i is a signed minor of the matrix [D^j f_i]."""
    m_count = len(fs)
    rows = []
    for f in fs:
        row = [f]
        for m in range(m_count):
            row.append(serre_derivative_series(row[m], 2 * m))
        rows.append(row)
    out = []
    for j in range(m_count + 1):
        minor = [[row[k] for k in range(m_count + 1) if k != j] for row in rows]
        sign = 1 if j % 2 == 0 else -1
        out.append(sign * _series_det(minor))
    return out


def _series_det(mat: List[List[PuiseuxSeries]]) -> PuiseuxSeries:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    out = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _series_det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


def distinct_kappas(mu: int, nu: int) -> List[Fraction]:
    """The M = (mu-1)(nu-1)/2 distinct exponents of the (mu,nu) model."""
    vals = sorted({kappa_general(mu, nu, r, s)
                   for r in range(1, mu) for s in range(1, nu)}, reverse=True)
    m_count = (mu - 1) * (nu - 1) // 2
    if len(vals) != m_count:
        raise InconsistentSystem(
            f"({mu},{nu}) has {len(vals)} distinct exponents, expected {m_count}")
    return vals


def general_solve(mu: int, nu: int, trunc: int = 40) -> ModularODE:
    """Order-M operator for the (mu,nu) model, M <= 6.

    Weights up to 10 are fixed by the indicial equation alone.  A weight-12
    slot additionally needs a cusp coefficient, available only where a vacuum
    character is implemented ((2,13)).  Annihilation is the caller's check;
    see ising_characters() for the (3,4) solutions.
    """
    m_count = (mu - 1) * (nu - 1) // 2
    if m_count > 6:
        raise NotApplicable(f"M = {m_count} > 6 not supported")
    kappas = distinct_kappas(mu, nu)
    alphas = indicial_solve_from_kappas(kappas)
    terms = {m: alpha * eisenstein(2 * (m_count - m), trunc)
             for m, alpha in alphas.items()}
    cusp = None
    if m_count >= 6:
        if (mu, nu) != (2, 13):
            raise NotApplicable(
                f"({mu},{nu}) has a weight-12 slot but no implemented vacuum character")
        cusp = cusp_solve(13)
        terms[0] = terms[0] + cusp * discriminant(trunc)
    return ModularODE(m_count, terms, cusp)


def ising_characters(trunc: int) -> List[CharacterSeries]:
    return [ising_character(s, trunc) for s in (1, 2, 3)]


def truncate_above(s: PuiseuxSeries, k: Fraction) -> PuiseuxSeries:
    """[R]_{>k}: drop every term with exponent <= k (indicial bookkeeping)."""
    k = Fraction(k)
    coeffs = list(s.coeffs)
    for n in range(len(coeffs)):
        if s.offset + Fraction(n, s.grid) <= k:
            coeffs[n] = Fraction(0)
        else:
            break
    return PuiseuxSeries(s.offset, s.grid, coeffs, s.trunc)
