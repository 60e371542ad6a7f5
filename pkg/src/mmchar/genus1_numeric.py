"""Floating-point checks of the genus-1 moduli flow.

A frame is the cubic y^2 = 4(x^3 + a x + b) attached to (tau, lambda) through
a = -(pi^4/3) lambda^4 E4(tau), b = -(2 pi^6/27) lambda^6 E6(tau); its roots
X_1, X_2, X_3 sum to zero.  Finite differences in tau or lambda, with roots
tracked by nearest-neighbor matching, verify the d(tau) determinant identity
and the splitting of omega = (1/2) dlog Delta^(0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import RootTrackingLost
from .modular_forms import eisenstein, eval_at_tau

PI = math.pi


@dataclass(frozen=True)
class Genus1Frame:
    tau: complex
    lam: float
    a: complex
    b: complex
    roots: Tuple[complex, complex, complex]
    qterms: int


def make_frame(tau: complex, lam: float = 1.0, qterms: int = 40) -> Genus1Frame:
    """Branch points of y^2 = 4(x^3 + ax + b) for the torus (tau, lambda).

    Roots are recentered so they sum to zero exactly and sorted by (Re, Im)
    for reproducibility.
    """
    if qterms < 20:
        raise ValueError("qterms must be >= 20")
    e4 = eval_at_tau(eisenstein(4, qterms), tau, 1e-10)
    e6 = eval_at_tau(eisenstein(6, qterms), tau, 1e-10)
    a = -(PI ** 4 / 3) * lam ** 4 * e4
    b = -(2 * PI ** 6 / 27) * lam ** 6 * e6
    disc = -4 * a ** 3 - 27 * b ** 2
    scale = max(abs(a) ** 3, abs(b) ** 2, 1e-30)
    if abs(disc) < 1e-12 * scale:
        raise ValueError(f"degenerate torus: discriminant {disc:g} vanishes numerically")
    raw = np.roots([1.0, 0.0, complex(a), complex(b)])
    mean = raw.sum() / 3.0
    x0, x1 = complex(raw[0] - mean), complex(raw[1] - mean)
    roots = sorted([x0, x1, -(x0 + x1)], key=lambda z: (z.real, z.imag))
    return Genus1Frame(tau, lam, a, b, tuple(roots), qterms)


def delta0_from_roots(frame: Genus1Frame) -> complex:
    x1, x2, x3 = frame.roots
    return ((x1 - x2) * (x2 - x3) * (x3 - x1)) ** 2


def delta0_check(frame: Genus1Frame) -> Tuple[float, float]:
    """Relative errors of Delta^(0) = -4a^3 - 27b^2 and of the Eisenstein form."""
    d_roots = delta0_from_roots(frame)
    d_ab = -4 * frame.a ** 3 - 27 * frame.b ** 2
    e4 = eval_at_tau(eisenstein(4, frame.qterms), frame.tau, 1e-10)
    e6 = eval_at_tau(eisenstein(6, frame.qterms), frame.tau, 1e-10)
    d_eis = (4 * PI ** 12 / 27) * frame.lam ** 12 * (e4 ** 3 - e6 ** 2)
    err_ab = abs(d_roots - d_ab) / abs(d_ab)
    err_eis = abs(d_roots - d_eis) / abs(d_eis)
    return err_ab, err_eis


def _track(base: Genus1Frame, moved: Genus1Frame) -> List[complex]:
    """xi_j = X_j(moved) - X_j(base) with roots paired by nearest neighbor."""
    pairs = {}
    for j, x in enumerate(moved.roots):
        dists = [abs(x - y) for y in base.roots]
        i = dists.index(min(dists))
        if i in pairs:
            raise RootTrackingLost("two perturbed roots matched the same base root")
        pairs[i] = x
    sep = min(abs(base.roots[i] - base.roots[j])
              for i in range(3) for j in range(i + 1, 3))
    moves = [abs(pairs[i] - base.roots[i]) for i in range(3)]
    if max(moves) * 10 > sep:
        raise RootTrackingLost(
            f"perturbation {max(moves):g} too large for root separation {sep:g}")
    return [pairs[i] - base.roots[i] for i in range(3)]


def _det3c(rows: Sequence[Sequence[complex]]) -> complex:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _quotients(base: Genus1Frame, xi: Sequence[complex]) -> Tuple[complex, complex, complex]:
    """(det Xi30 / det V3, det Xi31 / det V3, det V3) on the base frame."""
    x = base.roots
    det_v3 = _det3c([[1, x[0], x[0] ** 2], [1, x[1], x[1] ** 2], [1, x[2], x[2] ** 2]])
    det_30 = _det3c([x, [1, 1, 1], xi])
    det_31 = _det3c([x, [1, 1, 1], [xi[j] * x[j] for j in range(3)]])
    return det_30 / det_v3, det_31 / det_v3, det_v3


def dtau_identity_check(tau: complex, lam: float = 1.0, eps: float = 1e-5,
                        qterms: int = 40) -> float:
    """Relative error of d(tau) = -i pi lambda^2 det(Xi30)/det(V3) under a
    finite tau-step of size eps (first-order accurate in eps)."""
    base = make_frame(tau, lam, qterms)
    moved = make_frame(tau + eps, lam, qterms)
    xi = _track(base, moved)
    q30, _, _ = _quotients(base, xi)
    dtau = eps
    return abs(dtau + 1j * PI * lam ** 2 * q30) / abs(dtau)


def omega_decomposition_check(tau: complex, lam: float = 1.0, eps: float = 1e-5,
                              qterms: int = 40) -> Tuple[float, float]:
    """(i) omega = (1/2) d log Delta^(0); (ii) tau-part omega = pi i E2 d(tau).

    Both checked under a tau-only centered difference (second-order accurate,
    so the relative errors scale like eps^2); returns the two relative errors.
    """
    base = make_frame(tau, lam, qterms)
    plus = make_frame(tau + eps, lam, qterms)
    minus = make_frame(tau - eps, lam, qterms)
    xi_p = _track(base, plus)
    xi_m = _track(base, minus)
    xi = [(p - m) / 2 for p, m in zip(xi_p, xi_m)]
    _, q31, _ = _quotients(base, xi)
    omega = -3 * q31
    dlog = 0.5 * cmath.log(delta0_from_roots(plus) / delta0_from_roots(minus))
    err_dlog = abs(omega - 0.5 * dlog) / abs(omega)
    e2 = eval_at_tau(eisenstein(2, qterms), tau, 1e-10)
    err_tau = abs(omega - 1j * PI * e2 * eps) / abs(omega)
    return err_dlog, err_tau


def lambda_scaling_check(tau: complex, lam: float = 1.0, eps: float = 1e-4,
                         qterms: int = 40) -> Tuple[float, int]:
    """omega under a lambda-only centered perturbation, as a multiple of
    d(lambda)/lambda.

    Returns (|ratio|, sign).  The magnitude is 6; the sign is reported, not
    asserted, since d log Delta^(0) with Delta^(0) ~ lambda^12 gives +6 while
    the flow lemma is printed with -6.
    """
    base = make_frame(tau, lam, qterms)
    plus = make_frame(tau, lam * (1.0 + eps), qterms)
    minus = make_frame(tau, lam * (1.0 - eps), qterms)
    xi_p = _track(base, plus)
    xi_m = _track(base, minus)
    xi = [(p - m) / 2 for p, m in zip(xi_p, xi_m)]
    _, q31, _ = _quotients(base, xi)
    omega = -3 * q31
    ratio = omega / eps
    if abs(ratio.imag) > 1e-3 * abs(ratio):
        raise RootTrackingLost(f"lambda-scaling ratio {ratio:g} is not real")
    return abs(ratio), (1 if ratio.real > 0 else -1)


def scaling_dtau_quotient(tau: complex, lam: float = 1.0, eps: float = 1e-6,
                          qterms: int = 40) -> float:
    """|det Xi30 / det V3| under a pure scaling perturbation (xi ~ X), which
    vanishes identically; the return value is the absolute numeric residue."""
    base = make_frame(tau, lam, qterms)
    xi = [eps * x for x in base.roots]
    q30, _, _ = _quotients(base, xi)
    return abs(q30) / eps


def boundary_exponent_probe(tau_path: Sequence[complex], lam: float = 1.0,
                            qterms: int = 40) -> float:
    """Least-squares slope of log|X_1 - X_2| against log|q^(1/2)| along a path
    into the cusp; the colliding pair is the closest root pair per sample."""
    xs, ys = [], []
    for tau in tau_path:
        frame = make_frame(tau, lam, qterms)
        r = frame.roots
        gap = min(abs(r[i] - r[j]) for i in range(3) for j in range(i + 1, 3))
        xs.append(-PI * tau.imag)          # log|e^(i pi tau)|
        ys.append(math.log(gap))
    if max(xs) - min(xs) < 1e-9:
        raise ValueError("constant path: slope undefined")
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def spectator_root_slope(tau_path: Sequence[complex], lam: float = 1.0,
                         qterms: int = 40) -> float:
    """Slope of log|X_3| against log|q| for the root not in the colliding pair
    (finite at the boundary, so the slope tends to zero)."""
    xs, ys = [], []
    for tau in tau_path:
        frame = make_frame(tau, lam, qterms)
        r = frame.roots
        pairs = [(abs(r[i] - r[j]), k) for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0))]
        _, spectator = min(pairs)
        xs.append(-2 * PI * tau.imag)      # log|q|
        ys.append(math.log(abs(r[spectator])))
    if max(xs) - min(xs) < 1e-9:
        raise ValueError("constant path: slope undefined")
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den
