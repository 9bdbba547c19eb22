"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`CircleSumError`; the CLI maps the subclasses onto exit codes.
"""


class CircleSumError(Exception):
    pass


class InvalidInputError(CircleSumError, ValueError):
    """Malformed or non-finite coefficient data."""


class InvalidParameterError(CircleSumError, ValueError):
    """A bound was asked for outside its domain of validity."""


class InvalidHError(InvalidInputError):
    """The generator h of an h-sum violates the admissibility conditions."""


class OutOfDomainError(CircleSumError, ValueError):
    pass


class InvalidPairingError(CircleSumError, ValueError):
    """Signal and extraction operator were built for different degrees."""


class PoleProximityError(CircleSumError, ZeroDivisionError):
    pass


class BorderlineError(CircleSumError):
    """The zero-free test could not decide: |s| is tiny but not at roundoff level."""

    def __init__(self, min_modulus, theta):
        self.min_modulus = min_modulus
        self.theta = theta
        super().__init__(
            f"|s(e^it)| reaches {min_modulus:.3e} at t={theta:.6f}; "
            "cannot decide whether a zero lies in the closed disk")


class NotFoundError(CircleSumError):
    def __init__(self, n_max, message=None):
        self.n_max = n_max
        super().__init__(message or f"no admissible n found up to n_max={n_max}")


class RepresentTooSmallError(CircleSumError):
    """Requested n is below the constructibility threshold n0."""

    def __init__(self, n, n0):
        self.n = n
        self.n0 = n0
        what = f"n0={n0}" if n0 is not None else "n0 not found in search range"
        super().__init__(f"n={n} is too small for this target ({what})")


class RootFindingError(CircleSumError):
    """Numerical failure while localizing roots on the unit circle."""


class RootCountError(RootFindingError):
    def __init__(self, expected, found, grid):
        self.expected = expected
        self.found = found
        self.grid = grid
        super().__init__(
            f"expected {expected} sign changes on the circle, found {found} "
            f"(grid of {grid} points)")


class CertificateError(CircleSumError):
    """A computed representation failed its own residual or oracle check."""
