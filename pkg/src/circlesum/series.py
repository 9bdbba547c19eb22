"""Power-series primitives.

Coefficient sequences are plain 1-D complex numpy arrays, index 0 being the
constant term. The central routine computes the Taylor polynomial of

    g(z) = exp( integral_0^z f(t) dt )

from the coefficients of f, using the recurrence that follows from g' = f*g.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "as_coeffs",
    "TaylorPolynomial",
    "exp_antiderivative_taylor",
    "eval_poly",
    "eval_deriv",
]


def as_coeffs(seq, min_length: int = 1) -> np.ndarray:
    """Validate ``seq`` and return it as a read-only complex128 array.

    Raises InvalidInputError for non-finite entries or if the sequence is
    shorter than ``min_length``.
    """
    try:
        arr = np.array(seq, dtype=np.complex128).ravel()
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret coefficients: {exc}") from None
    if arr.size < min_length:
        raise InvalidInputError(f"need at least {min_length} coefficients, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("coefficients must be finite")
    arr.flags.writeable = False
    return arr


def _padded(f: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=np.complex128)
    k = min(length, f.size)
    out[:k] = f[:k]
    return out


@dataclass(frozen=True)
class TaylorPolynomial:
    """Truncated Taylor polynomial s_n(z) = g_0 + g_1 z + ... + g_n z^n."""

    g: np.ndarray
    n: int

    def __post_init__(self):
        g = as_coeffs(self.g)
        if g.size != self.n + 1:
            raise InvalidInputError(f"expected {self.n + 1} coefficients, got {g.size}")
        if g[0] != 1:
            raise InvalidInputError("constant term of s_n must be exactly 1")
        object.__setattr__(self, "g", g)

    def __call__(self, z):
        return eval_poly(self.g, z)


def exp_antiderivative_taylor(f, n: int) -> TaylorPolynomial:
    """Taylor coefficients g_0..g_n of exp(integral_0^z f).

    Coefficients of ``f`` beyond the ones supplied are taken to be zero, so a
    finite target vector can be passed directly.

    Parameters
    ----------
    f : array_like of complex
        Coefficients f_0, f_1, ... of f(z).
    n : int
        Truncation order, n >= 0.

    Returns
    -------
    TaylorPolynomial
        With g_0 = 1 and k*g_k = sum_{j<k} f_j g_{k-1-j}.
    """
    if n < 0:
        raise InvalidInputError("truncation order must be non-negative")
    f = _padded(as_coeffs(f), max(n, 1))
    g = np.zeros(n + 1, dtype=np.complex128)
    g[0] = 1.0
    for k in range(1, n + 1):
        # f_0..f_{k-1} against g_{k-1}..g_0
        g[k] = np.dot(f[:k], g[k - 1::-1]) / k
    return TaylorPolynomial(g, n)


def eval_poly(p, z):
    """Evaluate sum_k p[k] z^k by Horner's rule; ``z`` may be an array."""
    p = np.asarray(p, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in p[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def eval_deriv(p, z):
    """Evaluate the derivative of sum_k p[k] z^k at ``z``."""
    p = np.asarray(p, dtype=np.complex128)
    if p.size <= 1:
        z = np.asarray(z, dtype=np.complex128)
        out = np.zeros_like(z)
        return out[()] if out.ndim == 0 else out
    return eval_poly(p[1:] * np.arange(1, p.size), z)
