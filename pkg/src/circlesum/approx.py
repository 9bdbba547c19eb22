"""Approximation by sums built on unit-circle points.

Three families share the same points:

* simple partial fractions  sum_k 1/(z - z_k) = P'(z)/P(z), |z_k| = 1;
* exponential sums          sum_k lambda_k exp(lambda_k z);
* h-sums                    sum_k lambda_k h(lambda_k z), and the
  first-kind variant        sum_k h(lambda_k z) for h(0) = 0.

Each comes with the matching closed-form error bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cpoly import build_P
from .errors import (InvalidHError, InvalidParameterError, NotFoundError,
                     OutOfDomainError, PoleProximityError)
from .representation import BoundParams, Representation, bounded_hypothesis, represent
from .series import as_coeffs, eval_deriv, eval_poly, exp_antiderivative_taylor

__all__ = [
    "HSeries",
    "spf_eval",
    "log_derivative",
    "spf_error_bound",
    "spf_interpolation_order",
    "sup_error_spf",
    "exp_sum_eval",
    "exp_sum_bound",
    "entire_series_eval",
    "h_sum_build",
    "h_sum_eval",
    "h_sum_bound",
    "h_sum_bound_raw",
    "h1_sum_build",
    "h1_sum_eval",
    "h1_sum_bound",
    "estimate_n1",
    "circle_grid",
]

POLE_TOL = 1e-12
ORDER_TOL = 1e-8
TRUNCATION_TOL = 1e-12
GRID_ANGLES = 720


def circle_grid(radius: float, count: int = GRID_ANGLES) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(count) / count)


# -- simple partial fractions ------------------------------------------------

def spf_eval(phases, z):
    """sum_k 1/(z - exp(i t_k)) for the root phases of a C-polynomial."""
    t = getattr(phases, "phases", phases)
    poles = np.exp(1j * np.asarray(t, dtype=float))
    z = np.asarray(z, dtype=np.complex128)
    diff = np.subtract.outer(z, poles)
    if np.any(np.abs(diff) < POLE_TOL):
        raise PoleProximityError("evaluation point is within 1e-12 of a pole")
    out = np.sum(1.0 / diff, axis=-1)
    return out[()] if out.ndim == 0 else out


def log_derivative(P, z):
    """P'(z)/P(z) from the coefficients of P."""
    c = getattr(P, "coeffs", P)
    return eval_deriv(c, z) / eval_poly(c, z)


def spf_error_bound(f, n: int, p: BoundParams | None = None, *, form: str = "general",
                    abs_z: float | None = None) -> float:
    """Error bound for |P'/P - f|.

    form="general":
        (a+eps)^(n+1) / (2 eps (1 - a - eps)) on |z| <= a, with a and eps
        taken from ``p``; holds once n >= n1(f).
    form="bounded":
        15 |z|^n / (1 - |z|^(n+1)) * (n + 2/(1-|z|)) at |z| = ``abs_z``;
        requires |f_j| <= (j+2)^(-2), which is checked on the given
        coefficients, and holds for every n >= 1.
    """
    if form == "general":
        if p is None:
            raise InvalidParameterError("general form needs BoundParams")
        a, eps = p.a_radius, p.eps
        if not (0 < eps < 1 - a):
            raise InvalidParameterError("need 0 < eps < 1 - a_radius")
        return (a + eps) ** (n + 1) / (2 * eps * (1 - a - eps))
    if form == "bounded":
        if abs_z is None or not 0 <= abs_z < 1:
            raise InvalidParameterError("bounded form needs 0 <= |z| < 1")
        if n < 1:
            raise InvalidParameterError("bounded form needs n >= 1")
        if f is not None and not bounded_hypothesis(as_coeffs(f)):
            raise InvalidParameterError("hypothesis |f_j| <= (j+2)^-2 does not hold")
        return 15 * abs_z ** n / (1 - abs_z ** (n + 1)) * (n + 2 / (1 - abs_z))
    raise InvalidParameterError(f"unknown form {form!r}")


def _log_derivative_series(P: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients d_0..d_order of P'/P by series division (P[0] != 0)."""
    dP = np.zeros(order + 1, dtype=np.complex128)
    k = min(order + 1, P.size - 1)
    dP[:k] = P[1:k + 1] * np.arange(1, k + 1)
    Pp = np.zeros(order + 1, dtype=np.complex128)
    k = min(order + 1, P.size)
    Pp[:k] = P[:k]
    d = np.zeros(order + 1, dtype=np.complex128)
    for j in range(order + 1):
        d[j] = (dP[j] - np.dot(Pp[1:j + 1], d[j - 1::-1] if j else [])) / Pp[0]
    return d


def spf_interpolation_order(f, n: int, order_tol: float = ORDER_TOL,
                            max_order: int | None = None) -> int:
    """Number of leading Taylor coefficients of P'/P - f below ``order_tol``.

    The result is at least n whenever s_n(f) is zero-free on the closed
    disk. The scan stops at ``max_order`` (default 4N + len(f)).
    """
    f = as_coeffs(f)
    P = build_P(exp_antiderivative_taylor(f, n)).coeffs
    if max_order is None:
        max_order = 4 * (2 * n + 1) + f.size
    d = _log_derivative_series(P, max_order)
    ff = np.zeros(max_order + 1, dtype=np.complex128)
    k = min(f.size, max_order + 1)
    ff[:k] = f[:k]
    bad = np.nonzero(np.abs(d - ff) > order_tol)[0]
    return int(bad[0]) if bad.size else max_order + 1


def sup_error_spf(f, n: int, radius: float, count: int = GRID_ANGLES) -> float:
    """max over a circle grid of |P'/P - f| with P built from f at order n."""
    f = as_coeffs(f)
    P = build_P(exp_antiderivative_taylor(f, n))
    z = circle_grid(radius, count)
    return float(np.max(np.abs(log_derivative(P, z) - eval_poly(f, z))))


def estimate_n1(f, p: BoundParams, n_max: int, count: int = GRID_ANGLES) -> int:
    """Smallest n <= n_max whose measured SPF error on |z| = a meets the general bound.

    Empirical surrogate only; it makes no claim about the theoretical n1.
    """
    f = as_coeffs(f)
    history = []
    for n in range(1, n_max + 1):
        try:
            err = sup_error_spf(f, n, p.a_radius, count)
        except ZeroDivisionError:
            err = math.inf
        bound = spf_error_bound(f, n, p, form="general")
        history.append((n, err, bound))
        if err <= bound:
            return n
    worst = ", ".join(f"n={n}: {e:.3g} > {b:.3g}" for n, e, b in history[-3:])
    raise NotFoundError(n_max, f"general bound never met up to n_max={n_max} ({worst})")


# -- exponential sums ----------------------------------------------------------

def exp_sum_eval(lambdas, z):
    """sum_k lambda_k exp(lambda_k z)."""
    lam = np.asarray(lambdas, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    out = np.sum(lam * np.exp(np.multiply.outer(z, lam)), axis=-1)
    return out[()] if out.ndim == 0 else out


def entire_series_eval(p, z):
    """sum_j p_j z^j / j! for finitely many p_j."""
    p = np.asarray(p, dtype=np.complex128)
    fact = np.array([math.factorial(j) for j in range(p.size)], dtype=float)
    return eval_poly(p / fact, z)


def exp_sum_bound(n: int, z, r: float) -> float:
    """(|z|^n/n!) 15/(1-r^(n+1)) (n + 2/(1-r)) (1 + |z| e^(|z|/r)/(r n + r))."""
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    if not 0 < r < 1:
        raise InvalidParameterError("need 0 < r < 1")
    x = abs(z)
    return (x ** n / math.factorial(n) * 15 / (1 - r ** (n + 1)) * (n + 2 / (1 - r))
            * (1 + x * math.exp(x / r) / (r * n + r)))


# -- h-sums ----------------------------------------------------------------------

@dataclass(frozen=True)
class HSeries:
    """Generator h(z) = sum h_j z^j, analytic in the disk, with |h_j| <= M.

    ``coef`` maps j to h_j for every j >= 0, so infinite series such as
    1/(z-1) are represented exactly.
    """

    coef: Callable[[int], complex]
    M: float

    def coeffs(self, count: int) -> np.ndarray:
        h = np.array([complex(self.coef(j)) for j in range(count)], dtype=np.complex128)
        if np.any(np.abs(h) > self.M * (1 + 1e-12)):
            raise InvalidHError(f"some |h_j| exceed M={self.M}")
        return h

    @classmethod
    def from_coeffs(cls, h, M: float | None = None) -> "HSeries":
        """Finite generator; coefficients past the end are zero."""
        h = as_coeffs(h)
        if M is None:
            M = float(np.max(np.abs(h)))
        return cls(lambda j: h[j] if j < h.size else 0j, M)

    @classmethod
    def geometric(cls) -> "HSeries":
        """h(z) = 1/(z-1), all h_j = -1; h-sums become simple partial fractions."""
        return cls(lambda j: -1.0, 1.0)

    @classmethod
    def exponential(cls) -> "HSeries":
        """h(z) = e^z; h-sums become exponential sums."""
        return cls(lambda j: 1.0 / math.factorial(j), 1.0)

    def series_cut(self, abs_z: float, tol: float = TRUNCATION_TOL) -> int:
        """Smallest cut with M |z|^(cut+1) / (1-|z|) <= tol."""
        if abs_z == 0:
            return 0
        cut = math.log(tol * (1 - abs_z) / self.M) / math.log(abs_z) - 1
        return max(0, math.ceil(cut))


def _targets_from_ratio(f, h: HSeries, offset: int) -> np.ndarray:
    f = as_coeffs(f)
    hs = h.coeffs(f.size)
    idx = np.arange(offset, f.size)
    if np.any(hs[idx] == 0):
        raise InvalidHError("h_j = 0 where a target f_j/h_j is needed")
    return f[idx] / hs[idx]


def h_sum_build(f, h: HSeries, n: int) -> Representation:
    """Points lambda(n; {f_j/h_j}) for approximating f by an h-sum.

    The analyticity hypothesis on F = sum (f_j/h_j) z^j is the caller's
    responsibility; only the supplied coefficient prefix is validated.
    """
    for j in range(n):
        if h.coef(j) == 0:
            raise InvalidHError(f"h_{j} = 0")
    return represent(_targets_from_ratio(f, h, 0), n)


def h1_sum_build(f, h: HSeries, n: int) -> Representation:
    """Points for the first-kind h-sum: targets a_{j-1} = f_j/h_j, j >= 1."""
    for j in range(1, n + 1):
        if h.coef(j) == 0:
            raise InvalidHError(f"h_{j} = 0")
    f = as_coeffs(f)
    if f.size < 2:
        f = np.append(f, 0j)
    return represent(_targets_from_ratio(f, h, 1), n)


def _h_values(h: HSeries, lambdas, z):
    z = np.asarray(z, dtype=np.complex128)
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    if zmax >= 1:
        raise OutOfDomainError("h-sums are defined for |z| < 1")
    lam = np.asarray(lambdas, dtype=np.complex128)
    cut = h.series_cut(zmax)
    hs = h.coeffs(cut + 1)
    tail = lam.size * h.M * zmax ** (cut + 1) / (1 - zmax)
    return lam, eval_poly(hs, np.multiply.outer(z, lam)), tail


def _scalar(x):
    return x[()] if x.ndim == 0 else x


def h_sum_eval(h: HSeries, lambdas, z):
    """sum_k lambda_k h(lambda_k z) for |z| < 1 (``z`` may be an array).

    Returns ``(value, truncation_bound)``; h is summed up to the series cut
    for max |z|, so the truncation error is at most N M |z|^(cut+1) / (1-|z|).
    """
    lam, hv, tail = _h_values(h, lambdas, z)
    return _scalar(np.sum(lam * hv, axis=-1)), tail


def h1_sum_eval(h: HSeries, lambdas, z):
    """sum_k h(lambda_k z) for a generator with h(0) = 0; returns (value, truncation_bound)."""
    if h.coef(0) != 0:
        raise InvalidHError("first-kind h-sums need h_0 = 0")
    _, hv, tail = _h_values(h, lambdas, z)
    return _scalar(np.sum(hv, axis=-1)), tail


def h_sum_bound(n: int, abs_z: float, M: float) -> float:
    """|z|^n (5-|z|)^(n+1) / 4^(n-1) * (2M/3) (3+|z|) / (1-|z|)^4."""
    if not 0 <= abs_z < 1:
        raise InvalidParameterError("need |z| < 1")
    x = abs_z
    return x ** n * (5 - x) ** (n + 1) / 4 ** (n - 1) * (2 * M / 3) * (3 + x) / (1 - x) ** 4


def h_sum_bound_raw(n: int, abs_z: float, M: float, r: float, eps: float) -> float:
    """The h-sum bound before fixing r and eps; needs |z| < r - eps < r < 1."""
    x = abs_z
    if not (0 <= x < r - eps and 0 < eps < r < 1):
        raise InvalidParameterError("need |z| < r - eps, 0 < eps < r < 1")
    return (M / (r - eps - x) * r ** (n + 1) / (1 - r)
            * x ** n / (2 * eps) / (r - eps) ** (n - 1))


def h1_sum_bound(n: int, abs_z: float, M: float) -> float:
    """(5|z| - |z|^2)^(n+1) / 4^(n-1) * (2M/3) (3+|z|) / (1-|z|)^4."""
    return abs_z * h_sum_bound(n, abs_z, M)
