"""Unit-weight power-sum representation of prescribed numbers.

For targets a_0..a_{n-1}, ``represent`` returns N = 2n+1 distinct points
lambda_k on the unit circle with

    lambda_1^(j+1) + ... + lambda_N^(j+1) = a_j,   j = 0..n-1.

The points are reciprocals (here: conjugates) of the roots of the
self-inversive completion of s_n(f), f = -sum a_j z^j.  Beyond the head the
residuals S_{j+1} - a_j are controlled by the tail bounds below.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cpoly import CPolynomial, CirclePhases, build_P, disk_zero_free, roots_on_circle
from .errors import CertificateError, InvalidInputError, InvalidParameterError, RepresentTooSmallError
from .oracle import newton_power_sums
from .series import as_coeffs, exp_antiderivative_taylor

__all__ = [
    "BoundParams",
    "Representation",
    "represent",
    "power_sum",
    "power_sums",
    "tail_residual",
    "tail_bound_thm11",
    "tail_bound_thm12",
    "best_tail_bound",
    "bounded_hypothesis",
    "head_tol",
    "golden_section",
]

ORACLE_RTOL = 1e-9
DEFAULT_N0_SEARCH = 200


def head_tol(a, N: int) -> float:
    a = np.asarray(a)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    return 1e-8 * (1.0 + amax) * N


def bounded_hypothesis(a, sigma: float = 1.0) -> bool:
    """True if every |a_j| <= (j+2)^(-1-sigma)."""
    a = np.asarray(a, dtype=np.complex128)
    j = np.arange(a.size)
    return bool(np.all(np.abs(a) <= (j + 2.0) ** (-1.0 - sigma) * (1 + 8 * np.finfo(float).eps)))


@dataclass(frozen=True)
class BoundParams:
    """Free parameters of the Cauchy-type bounds: 0 < eps < r < 1, 0 < a_radius < 1."""

    r: float = 0.5
    eps: float = 0.25
    a_radius: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.eps < self.r < 1.0:
            raise InvalidParameterError(f"need 0 < eps < r < 1, got r={self.r}, eps={self.eps}")
        if not 0.0 < self.a_radius < 1.0:
            raise InvalidParameterError(f"need 0 < a_radius < 1, got {self.a_radius}")


@dataclass(frozen=True)
class Representation:
    n: int
    lambdas: np.ndarray
    a: np.ndarray
    residual_head: float
    n0_used: int
    polynomial: CPolynomial = field(repr=False)
    roots: CirclePhases = field(repr=False)

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    @property
    def phases(self) -> np.ndarray:
        """Arguments of the lambdas in [0, 2 pi)."""
        return np.mod(-self.roots.phases, 2 * math.pi)

    def target(self, j: int) -> complex:
        return complex(self.a[j]) if j < self.a.size else 0j

    def power_sum(self, nu: int) -> complex:
        return power_sum(self.lambdas, nu)


def _ipow(z: np.ndarray, k: int) -> np.ndarray:
    result = np.ones_like(z)
    base = z.copy()
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def power_sum(lambdas, nu: int) -> complex:
    """S_nu = sum_k lambda_k^nu, powers by repeated squaring."""
    if nu < 1:
        raise InvalidInputError("power index must be >= 1")
    lam = np.asarray(lambdas, dtype=np.complex128)
    return complex(np.sum(_ipow(lam, nu)))


def power_sums(lambdas, m: int) -> np.ndarray:
    return np.array([power_sum(lambdas, nu) for nu in range(1, m + 1)])


def represent(a, n: int, n0_search: int = DEFAULT_N0_SEARCH) -> Representation:
    """Build the unit-weight representation lambda(n; {a_j}).

    Raises RepresentTooSmallError (carrying the computed n0 when one exists
    within ``n0_search``) if the Taylor polynomial s_n of exp(-int sum a_j z^j)
    has zeros in the closed disk.
    """
    a = as_coeffs(a)
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    f = -a
    s = exp_antiderivative_taylor(f, n)
    if not disk_zero_free(s):
        found = None
        for m in range(1, max(n0_search, n) + 1):
            if m != n and disk_zero_free(exp_antiderivative_taylor(f, m)):
                found = m
                break
        raise RepresentTooSmallError(n, found)
    n0_used = next(m for m in range(1, n + 1)
                   if m == n or disk_zero_free(exp_antiderivative_taylor(f, m)))

    P = build_P(s)
    roots = roots_on_circle(P)
    lambdas = np.conj(roots.points)
    lambdas.flags.writeable = False

    N = P.N
    targets = np.zeros(n, dtype=np.complex128)
    k = min(n, a.size)
    targets[:k] = a[:k]
    S = power_sums(lambdas, 2 * n)
    residual = float(np.max(np.abs(S[:n] - targets)))
    tol = head_tol(targets, N)
    if residual > tol:
        raise CertificateError(
            f"head identities failed: residual {residual:.3e} > {tol:.3e}")
    S_newton = newton_power_sums(P, 2 * n)
    gap = np.abs(S - S_newton) / (1.0 + np.abs(S))
    if np.max(gap) > ORACLE_RTOL:
        raise CertificateError(
            f"root-based and Newton power sums disagree by {np.max(gap):.3e}")
    return Representation(n=n, lambdas=lambdas, a=a, residual_head=residual,
                          n0_used=n0_used, polynomial=P, roots=roots)


def tail_residual(rep: Representation, j: int) -> complex:
    """S_{j+1}(lambda) - a_j, with a_j = 0 past the supplied targets."""
    if j < 0:
        raise InvalidInputError("j must be >= 0")
    return rep.power_sum(j + 1) - rep.target(j)


def _log_thm11(n, j, r, eps):
    return ((n + 1) * math.log(r) - j * math.log(r - eps)
            - math.log(2 * eps * (1 - r)))


def _log_thm12(n, j, r):
    return ((n - j) * math.log(r) - math.log1p(-(r ** (n + 1)))
            + math.log(15 * n + 30 / (1 - r)))


def tail_bound_thm11(n: int, j: int, p: BoundParams) -> float:
    """r^(n+1) (r-eps)^(-j) / (2 eps (1-r)); valid for j >= n once n >= n1(f)."""
    if j < n:
        raise InvalidParameterError("tail bound needs j >= n")
    if not 0 < p.eps < p.r < 1:
        raise InvalidParameterError("need 0 < eps < r < 1")
    return math.exp(_log_thm11(n, j, p.r, p.eps))


def tail_bound_thm12(n: int, j: int, r: float) -> float:
    """r^(n-j) / (1 - r^(n+1)) * (15 n + 30/(1-r)), for |a_j| <= (j+2)^-2."""
    if j < n or n < 1:
        raise InvalidParameterError("tail bound needs 1 <= n <= j")
    if not 0.0 < r < 1.0:
        raise InvalidParameterError("need 0 < r < 1")
    return math.exp(_log_thm12(n, j, r))


def golden_section(func, lo, hi, tol=1e-4):
    """Minimize a unimodal ``func`` on [lo, hi]; returns (x, func(x))."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    x = (a + b) / 2
    return x, func(x)


_R_GRID = np.round(np.arange(1, 20) * 0.05, 2)


def best_tail_bound(n: int, j: int, which: str = "thm12"):
    """Minimize a tail bound over its free parameters.

    ``which`` is "thm12" (free r) or "thm11" (free r and eps). The parameter
    grid r = 0.05..0.95, eps at 10 interior points of (0, r), is refined by
    golden-section search to 1e-4. Returns ``(value, params)`` where params is
    a dict of the minimizing parameters.
    """
    if j < n:
        raise InvalidParameterError("tail bound needs j >= n")
    if which == "thm12":
        logf = lambda r: _log_thm12(n, j, r)
        best_r = min(_R_GRID, key=logf)
        lo, hi = max(best_r - 0.05, 1e-6), min(best_r + 0.05, 1 - 1e-6)
        r, val = golden_section(logf, lo, hi)
        if logf(best_r) < val:
            r, val = float(best_r), logf(best_r)
        return math.exp(val), {"r": float(r)}
    if which == "thm11":
        def profile(r):
            return golden_section(lambda e: _log_thm11(n, j, r, e), 1e-9 * r, r * (1 - 1e-9))

        cands = [(0.5, 0.25)] + [(r, r * k / 11) for r in _R_GRID for k in range(1, 11)]
        r0, e0 = min(cands, key=lambda p: _log_thm11(n, j, *p))
        best = (_log_thm11(n, j, r0, e0), r0, e0)
        lo, hi = max(r0 - 0.05, 1e-6), min(r0 + 0.05, 1 - 1e-6)
        r1, _ = golden_section(lambda r: profile(r)[1], lo, hi)
        e1, v1 = profile(r1)
        if v1 < best[0]:
            best = (v1, r1, e1)
        return math.exp(best[0]), {"r": float(best[1]), "eps": float(best[2])}
    raise InvalidParameterError(f"unknown bound selector {which!r}")
