"""Harmonic extraction from trigonometric signals without integration.

For a zero-mean signal T(t) = sum_{m=1}^n (a_m cos mt + b_m sin mt) and a
set of N = 2n+1 phases t_k whose points lambda_k = exp(-i t_k) satisfy
S_nu(lambda) = 1 and S_j(lambda) = 0 for the other j <= n,

    sum_k T(t - t_k) = a_nu cos(nu t) + b_nu sin(nu t)

identically in t.  The phases depend on (n, nu) only, so one operator serves
every signal of degree n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cpoly import build_P, disk_zero_free, n0, roots_on_circle
from .errors import InvalidInputError, InvalidPairingError, NotFoundError
from .representation import head_tol, power_sums, represent
from .series import TaylorPolynomial, as_coeffs, exp_antiderivative_taylor

__all__ = [
    "TrigPolynomial",
    "ExtractionOperator",
    "extraction_taylor",
    "extraction_phases",
    "extract_harmonic",
    "fourier_coeffs",
    "combination_phases",
    "combination_target",
    "parse_signal",
    "fit_samples",
]


@dataclass(frozen=True)
class TrigPolynomial:
    """T(t) = sum_{m=1}^n a_m cos(m t) + b_m sin(m t).

    ``a`` and ``b`` hold a_1..a_n and b_1..b_n. They are real for physical
    signals, but complex values are accepted since extraction is linear.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a)
        b = np.asarray(self.b)
        dtype = np.complex128 if (np.iscomplexobj(a) or np.iscomplexobj(b)) else float
        a = np.array(a, dtype=dtype).ravel()
        b = np.array(b, dtype=dtype).ravel()
        if a.size != b.size or a.size < 1:
            raise InvalidInputError("a and b must have the same positive length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InvalidInputError("coefficients must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.size

    @property
    def c(self) -> np.ndarray:
        """Complex coefficients c_m = (a_m - i b_m)/2."""
        return (self.a - 1j * self.b) / 2

    def magnitude(self) -> float:
        return float(np.sum(np.abs(self.a)) + np.sum(np.abs(self.b)))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        mt = np.multiply.outer(t, np.arange(1, self.n + 1))
        return np.cos(mt) @ self.a + np.sin(mt) @ self.b

    def harmonic(self, nu: int, t):
        """tau_nu(t) = a_nu cos(nu t) + b_nu sin(nu t)."""
        t = np.asarray(t, dtype=float)
        return self.a[nu - 1] * np.cos(nu * t) + self.b[nu - 1] * np.sin(nu * t)

    def padded(self, n: int) -> "TrigPolynomial":
        if n < self.n:
            raise InvalidInputError("cannot shrink degree")
        pad = np.zeros(n - self.n, dtype=self.a.dtype)
        return TrigPolynomial(np.concatenate([self.a, pad]), np.concatenate([self.b, pad]))


@dataclass(frozen=True)
class ExtractionOperator:
    """Universal unit-amplitude phases t_k for degree-n signals.

    ``targets`` holds the prescribed power sums S_1..S_n (a one-hot vector
    for single-harmonic extraction), ``nu`` is set for single-harmonic
    operators and ``gamma`` for linear combinations.
    """

    n: int
    t: np.ndarray
    targets: np.ndarray
    residual: float
    nu: int | None = None
    gamma: tuple | None = None

    @property
    def N(self) -> int:
        return 2 * self.n + 1

    @property
    def q(self) -> int | None:
        return self.n // self.nu if self.nu else None

    @property
    def lambdas(self) -> np.ndarray:
        return np.exp(-1j * self.t)

    def certificate_ok(self) -> bool:
        return self.residual <= head_tol(self.targets, self.N)

    def __call__(self, T: TrigPolynomial, t):
        return extract_harmonic(T, self, t)


def _check_degree(n: int, nu: int | None = None):
    if n < 2:
        raise InvalidInputError("harmonic extraction is defined for n >= 2 only")
    if nu is not None and not 1 <= nu <= n:
        raise InvalidInputError(f"harmonic index nu must lie in 1..{n}, got {nu}")


def extraction_taylor(n: int, nu: int) -> TaylorPolynomial:
    """s_n(z) = sum_{j=0}^{q} (-z^nu)^j / (nu^j j!), q = floor(n/nu), as a degree-n array."""
    g = np.zeros(n + 1)
    for j in range(n // nu + 1):
        g[j * nu] = (-1.0) ** j / (nu ** j * math.factorial(j))
    return TaylorPolynomial(g, n)


def _operator(P, targets, **kw) -> ExtractionOperator:
    roots = roots_on_circle(P)
    t = roots.phases.copy()
    t.flags.writeable = False
    S = power_sums(np.exp(-1j * t), P.n)
    residual = float(np.max(np.abs(S - targets)))
    targets = np.array(targets)
    targets.flags.writeable = False
    return ExtractionOperator(n=P.n, t=t, targets=targets, residual=residual, **kw)


@lru_cache(maxsize=None)
def extraction_phases(n: int, nu: int) -> ExtractionOperator:
    """Operator isolating the nu-th harmonic of any degree-n signal (cached per (n, nu))."""
    _check_degree(n, nu)
    P = build_P(extraction_taylor(n, nu))
    targets = np.zeros(n, dtype=np.complex128)
    targets[nu - 1] = 1.0
    return _operator(P, targets, nu=nu)


def extract_harmonic(T: TrigPolynomial, op: ExtractionOperator, t):
    """Theta(t) = sum_k T(t - t_k)."""
    if T.n != op.n:
        raise InvalidPairingError(f"signal degree {T.n} != operator degree {op.n}")
    t = np.asarray(t, dtype=float)
    return np.sum(T(np.subtract.outer(t, op.t)), axis=-1)


def fourier_coeffs(T: TrigPolynomial, nu: int):
    """(a_nu, b_nu) as sum_k T(-t_k) and sum_k T(pi/(2 nu) - t_k)."""
    _check_degree(T.n, nu)
    op = extraction_phases(T.n, nu)
    a = np.sum(T(-op.t))
    b = np.sum(T(math.pi / (2 * nu) - op.t))
    return _scalar(a), _scalar(b)


def _scalar(x):
    return complex(x) if np.iscomplexobj(x) else float(x)


def combination_phases(gamma, n_max: int, n: int | None = None) -> ExtractionOperator:
    """Phases whose power sums are S_m = gamma_m (m <= len(gamma)) and 0 up to n.

    With real gamma the operator extracts sum gamma_m tau_m from any
    degree-n signal; see :func:`combination_target` for complex gamma.
    The working degree defaults to the smallest n >= max(n0, len(gamma), 2)
    whose Taylor polynomial is zero-free on the closed disk.
    """
    gamma = as_coeffs(gamma)
    if not np.any(gamma):
        raise InvalidInputError("gamma must not vanish identically")
    f = -gamma
    if n is None:
        start = max(n0(f, n_max), gamma.size, 2)
        for m in range(start, n_max + 1):
            if disk_zero_free(exp_antiderivative_taylor(f, m)):
                n = m
                break
        else:
            raise NotFoundError(n_max)
    elif n < max(gamma.size, 2):
        raise InvalidInputError("n must be at least max(len(gamma), 2)")
    rep = represent(gamma, n)
    targets = np.zeros(n, dtype=np.complex128)
    targets[:gamma.size] = gamma
    return _operator(rep.polynomial, targets, gamma=tuple(complex(g) for g in gamma))


def combination_target(T: TrigPolynomial, gamma, t):
    """What the combination operator returns for a real signal T.

    Equals sum_m Re(gamma_m) tau_m(t) + Im(gamma_m) tau_m(t + pi/(2m));
    for real gamma this is sum_m gamma_m tau_m(t).
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    for m, g in enumerate(np.asarray(gamma, dtype=np.complex128), start=1):
        out = out + g.real * T.harmonic(m, t) + g.imag * T.harmonic(m, t + math.pi / (2 * m))
    return out


def fit_samples(n: int, t, values) -> TrigPolynomial:
    """Least-squares fit of a degree-n trigonometric polynomial; the mean is dropped."""
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if t.size < 2 * n + 1:
        raise InvalidInputError(f"need at least {2 * n + 1} samples for degree {n}")
    m = np.arange(1, n + 1)
    A = np.hstack([np.ones((t.size, 1)), np.cos(np.outer(t, m)), np.sin(np.outer(t, m))])
    coef, *_ = np.linalg.lstsq(A, values, rcond=None)
    return TrigPolynomial(coef[1:n + 1], coef[n + 1:])


def parse_signal(text: str) -> TrigPolynomial:
    """Parse a signal description.

    First non-blank line is ``n=<int>``. Then either n rows ``m a_m b_m``
    (coefficients; missing harmonics are zero) or at least 2n+1 rows
    ``t value`` (samples, fitted by least squares). Lines starting with
    ``#`` are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise InvalidInputError("signal must start with a line 'n=<int>'")
    try:
        n = int(lines[0].split("=", 1)[1])
    except ValueError:
        raise InvalidInputError(f"bad header {lines[0]!r}") from None
    if n < 1:
        raise InvalidInputError("degree must be positive")
    try:
        rows = [[float(x) for x in ln.replace(",", " ").split()] for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidInputError(f"bad numeric row: {exc}") from None
    widths = {len(r) for r in rows}
    if not rows:
        return TrigPolynomial(np.zeros(n), np.zeros(n))
    if widths == {3}:
        a = np.zeros(n)
        b = np.zeros(n)
        seen = set()
        for m, am, bm in rows:
            if m != int(m) or not 1 <= m <= n or m in seen:
                raise InvalidInputError(f"bad harmonic index {m}")
            seen.add(m)
            a[int(m) - 1], b[int(m) - 1] = am, bm
        return TrigPolynomial(a, b)
    if widths == {2}:
        data = np.array(rows)
        return fit_samples(n, data[:, 0], data[:, 1])
    raise InvalidInputError("rows must all be 'm a_m b_m' or all be 't value'")
