"""Independent verification engines.

Nothing here imports the series recurrence or the root finder: power sums
come from Newton's identities on polynomial coefficients, and Taylor
coefficients of exp(integral f) come from summing the exponential series
term by term.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "SymmetricFunctions",
    "newton_power_sums",
    "monic_coeffs_from_points",
    "brute_exp_series",
    "lemma32_check",
    "zeta2_partial",
]

BRUTE_MAX_ORDER = 64
# |c e^{i phi}| can exceed |c| by an ulp or two
HYPOTHESIS_SLACK = 8 * np.finfo(float).eps


def _coeff_array(P) -> np.ndarray:
    coeffs = getattr(P, "coeffs", P)
    return np.asarray(coeffs, dtype=np.complex128)


def _csum(values) -> complex:
    values = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(values.real), math.fsum(values.imag))


@dataclass(frozen=True)
class SymmetricFunctions:
    """Elementary symmetric values e_1..e_N of the point multiset.

    For a polynomial P with P(0) = 1, the points are the reciprocals of its
    roots, and prod(z - lambda_k) is the coefficient reversal of P, so
    e_j = (-1)^j * P[j].
    """

    e: np.ndarray

    @classmethod
    def from_polynomial(cls, P) -> "SymmetricFunctions":
        c = _coeff_array(P)
        if c[0] == 0:
            raise InvalidInputError("P(0) must be nonzero")
        c = c / c[0]
        signs = (-1.0) ** np.arange(c.size)
        return cls(e=(signs * c)[1:])

    @property
    def N(self) -> int:
        return self.e.size


def newton_power_sums(P, m: int) -> np.ndarray:
    """Power sums S_1..S_m of the reciprocal roots of P.

    ``P`` is a coefficient array (constant term first) or anything with a
    ``coeffs`` attribute. Uses S_k = e_1 S_{k-1} - e_2 S_{k-2} + ...
    + (-1)^{k-1} k e_k with e_j = 0 for j > N.
    """
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    e = SymmetricFunctions.from_polynomial(P).e
    N = e.size
    S = np.zeros(m + 1, dtype=np.complex128)
    for k in range(1, m + 1):
        terms = []
        for i in range(1, min(k - 1, N) + 1):
            terms.append((-1) ** (i - 1) * e[i - 1] * S[k - i])
        if k <= N:
            terms.append((-1) ** (k - 1) * k * e[k - 1])
        S[k] = _csum(terms) if terms else 0.0
    return S[1:]


def monic_coeffs_from_points(points) -> np.ndarray:
    """Coefficients, constant term first, of prod_k (1 - points[k] z).

    This is the reversal of the monic polynomial with the given roots, i.e.
    a polynomial whose reciprocal roots are ``points``; feed it to
    :func:`newton_power_sums` to get the power sums of ``points``.
    """
    c = np.array([1.0 + 0j])
    for p in np.asarray(points, dtype=np.complex128):
        c = np.append(c, 0.0) - p * np.concatenate(([0.0], c))
    return c


def brute_exp_series(f, n: int) -> np.ndarray:
    """Order-n truncation of exp(F), F the term-wise antiderivative of f.

    Accumulates sum_{m<=n} F^m/m! with compensated summation per
    coefficient. Limited to n <= 64.
    """
    if n > BRUTE_MAX_ORDER:
        raise InvalidInputError(f"brute_exp_series is limited to n <= {BRUTE_MAX_ORDER}")
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    f = np.asarray(f, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(f)):
        raise InvalidInputError("coefficients must be finite")
    F = np.zeros(n + 1, dtype=np.complex128)
    k = min(n, f.size)
    F[1:k + 1] = f[:k] / np.arange(1, k + 1)

    term = np.zeros(n + 1, dtype=np.complex128)
    term[0] = 1.0
    terms = [term]
    for m in range(1, n + 1):
        term = np.convolve(term, F)[:n + 1] / m
        if not np.any(term):
            break
        terms.append(term)
    stack = np.array(terms)
    return np.array([_csum(stack[:, j]) for j in range(n + 1)])


def lemma32_check(f, sigma: float, n: int) -> bool:
    """Check |g_1| <= 2^(-1-sigma) and |g_k| < (k+1)^(-1-sigma), 2 <= k <= n.

    The g_k are the Taylor coefficients of exp(integral f), computed by
    :func:`brute_exp_series`. The hypothesis |f_k| <= (k+2)^(-1-sigma) is
    validated for the supplied coefficients.
    """
    if sigma <= 0:
        raise InvalidInputError("sigma must be positive")
    f = np.asarray(f, dtype=np.complex128).ravel()
    k = np.arange(f.size)
    if np.any(np.abs(f) > (k + 2.0) ** (-1.0 - sigma) * (1 + HYPOTHESIS_SLACK)):
        raise InvalidInputError("hypothesis |f_k| <= (k+2)^(-1-sigma) violated")
    g = brute_exp_series(f, n)
    if n >= 1 and abs(g[1]) > 2.0 ** (-1.0 - sigma):
        return False
    ks = np.arange(2, n + 1)
    return bool(np.all(np.abs(g[2:]) < (ks + 1.0) ** (-1.0 - sigma)))


def zeta2_partial(n: int) -> float:
    """sum_{k=1}^n 1/k^2; its gap to pi^2/6 lies in (0, 1/n]."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    return math.fsum(1.0 / (k * k) for k in range(n, 0, -1))
