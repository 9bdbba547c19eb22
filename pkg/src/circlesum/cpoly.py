"""Self-inversive polynomials with all roots on the unit circle.

Given s_n(z) = 1 + g_1 z + ... + g_n z^n, the polynomial

    P(z) = s_n(z) + z^N conj(s_n)(1/z),   N = 2n + 1,

is self-inversive.  When s_n has no zeros in the closed unit disk, all N
roots of P are simple and lie on |z| = 1.  On the circle the function

    q(t) = Re( exp(-i N t / 2) P(exp(i t)) )

is real-valued (up to rounding) and vanishes exactly at the roots, so roots
are found by bracketing sign changes of q on a grid and polishing with
Brent's method.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import (BorderlineError, InvalidInputError, NotFoundError,
                     RootFindingError, RootCountError)
from .series import TaylorPolynomial, as_coeffs, eval_poly, exp_antiderivative_taylor

__all__ = [
    "CPolynomial",
    "CirclePhases",
    "build_P",
    "disk_zero_free",
    "n0",
    "q_real",
    "roots_on_circle",
]

BOUNDARY_TOL = 1e-8
SEPARATION_TOL = 1e-6
ROOT_RESIDUAL_RTOL = 1e-10
GRID_FACTOR = 32
GRID_FACTOR_MAX = 1024

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CPolynomial:
    """Degree N = 2n+1 self-inversive polynomial, coefficients constant first."""

    coeffs: np.ndarray
    n: int

    def __post_init__(self):
        c = as_coeffs(self.coeffs)
        if c.size != 2 * self.n + 2:
            raise InvalidInputError(f"expected {2 * self.n + 2} coefficients, got {c.size}")
        if not np.array_equal(c, np.conj(c[::-1])):
            raise InvalidInputError("coefficients are not self-inversive")
        object.__setattr__(self, "coeffs", c)

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    @property
    def root_residual_tol(self) -> float:
        return ROOT_RESIDUAL_RTOL * float(np.max(np.abs(self.coeffs)))

    def __call__(self, z):
        return eval_poly(self.coeffs, z)


@dataclass(frozen=True)
class CirclePhases:
    """Sorted root arguments t_k in [0, 2 pi) with residuals |P(e^{i t_k})|."""

    phases: np.ndarray
    residuals: np.ndarray

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def __len__(self):
        return self.phases.size

    def min_gap(self) -> float:
        return _min_cyclic_gap(self.phases)


def _min_cyclic_gap(phases) -> float:
    if len(phases) < 2:
        return TWO_PI
    d = np.diff(np.sort(phases))
    wrap = TWO_PI - (phases.max() - phases.min())
    return float(min(d.min(), wrap))


def build_P(s: TaylorPolynomial) -> CPolynomial:
    """Self-inversive completion s(z) + z^N conj(s)(1/z), N = 2n+1."""
    if s.n < 1:
        raise InvalidInputError("build_P needs n >= 1")
    N = 2 * s.n + 1
    c = np.zeros(N + 1, dtype=np.complex128)
    c[: s.n + 1] = s.g
    c[N - s.n:] = np.conj(s.g[::-1])
    return CPolynomial(c, s.n)


def _circle_grid(degree: int) -> int:
    return max(512, 64 * (degree + 1))


def disk_zero_free(s, boundary_tol: float = BOUNDARY_TOL) -> bool:
    """Decide whether s has no zeros in the closed unit disk.

    Uses the argument principle on |z| = 1 after a boundary-modulus guard.
    A minimum of |s| at roundoff level means a zero on the circle itself and
    gives False; a minimum above roundoff but within ``boundary_tol`` cannot
    be decided and raises :class:`BorderlineError`.
    """
    g = as_coeffs(getattr(s, "g", s))
    M = _circle_grid(g.size - 1)
    theta = np.linspace(0.0, TWO_PI, M, endpoint=False)
    vals = eval_poly(g, np.exp(1j * theta))
    mods = np.abs(vals)

    i = int(np.argmin(mods))
    h = TWO_PI / M
    res = minimize_scalar(lambda t: abs(eval_poly(g, np.exp(1j * t))),
                          bounds=(theta[i] - h, theta[i] + h), method="bounded",
                          options={"xatol": 1e-14})
    min_mod = min(float(res.fun), float(mods[i]))
    floor = 64 * np.finfo(float).eps * float(np.sum(np.abs(g)))
    if min_mod <= floor:
        return False
    if min_mod <= boundary_tol:
        raise BorderlineError(min_mod, float(res.x))

    ang = np.unwrap(np.angle(np.append(vals, vals[0])))
    winding = (ang[-1] - ang[0]) / TWO_PI
    return bool(round(winding) == 0)


def n0(f, n_max: int) -> int:
    """Smallest n in [1, n_max] whose Taylor polynomial s_n(f) is zero-free on the closed disk."""
    if n_max < 1:
        raise InvalidInputError("n_max must be >= 1")
    for n in range(1, n_max + 1):
        if disk_zero_free(exp_antiderivative_taylor(f, n)):
            return n
    raise NotFoundError(n_max)


def _half_exponents(P: CPolynomial):
    k = np.arange(P.n + 1)
    return P.coeffs[: P.n + 1], k - P.N / 2.0


def q_real(P: CPolynomial, theta):
    """Real form Re(exp(-i N t/2) P(exp(i t))) of P on the unit circle.

    Evaluated by pairing coefficient k with N-k, which makes the result
    exactly real; the function is 2 pi-antiperiodic since N is odd.
    """
    c, e = _half_exponents(P)
    t = np.asarray(theta, dtype=float)
    val = 2.0 * np.real(np.exp(1j * np.multiply.outer(t, e)) @ c)
    return val[()] if val.ndim == 0 else val


def _brackets(P: CPolynomial, M: int):
    theta = np.linspace(0.0, TWO_PI, M + 1)
    q = q_real(P, theta)
    q[-1] = -q[0]
    exact = [theta[i] for i in range(M) if q[i] == 0.0]
    cross = np.nonzero(q[:-1] * q[1:] < 0)[0]
    return exact, [(theta[i], theta[i + 1]) for i in cross]


def roots_on_circle(P: CPolynomial) -> CirclePhases:
    """All N roots of P on the unit circle, as sorted phases in [0, 2 pi).

    Grid density starts at 32 N points and doubles up to 1024 N while the
    number of sign changes differs from N. Raises RootCountError if it never
    matches, and RootFindingError if a polished root misses the residual or
    separation tolerance.
    """
    N = P.N
    factor = GRID_FACTOR
    while True:
        exact, brackets = _brackets(P, factor * N)
        if len(exact) + len(brackets) == N:
            break
        if factor >= GRID_FACTOR_MAX:
            raise RootCountError(N, len(exact) + len(brackets), factor * N)
        factor *= 2

    def q(t):
        return float(q_real(P, t))

    phases = list(exact)
    for a, b in brackets:
        phases.append(brentq(q, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps,
                             maxiter=200))
    phases = np.sort(np.mod(np.array(phases), TWO_PI))
    residuals = np.abs(P(np.exp(1j * phases)))

    tol = P.root_residual_tol
    if np.any(residuals > tol):
        k = int(np.argmax(residuals))
        raise RootFindingError(
            f"root {k} has residual {residuals[k]:.3e} > {tol:.3e}")
    gap = _min_cyclic_gap(phases)
    if gap <= SEPARATION_TOL:
        raise RootFindingError(f"roots collapsed: minimum phase gap {gap:.3e}")
    phases.flags.writeable = False
    residuals.flags.writeable = False
    return CirclePhases(phases, residuals)
