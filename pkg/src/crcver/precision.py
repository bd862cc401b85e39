"""Precision policy and the arbitrary-precision complex scalar.

All numerics run on mpmath.  ``AppComplex`` is an alias for ``mpmath.mpc``:
values are immutable and keep the precision they were created with, so they
can be shared freely.  Operations accept a :class:`PrecisionContext`, compute
at ``working_digits + guard_digits`` and hand back values rounded to the
working precision.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError

AppComplex = mpmath.mpc

_MIN_WORKING = 30
_MIN_GUARD = 10


@dataclass(frozen=True)
class PrecisionContext:
    """Requested precision for one computation.

    ``tolerance`` defaults to 10^(-working_digits/2); callers that need the
    raw target accuracy of an identity check use it directly.
    """

    working_digits: int = 50
    guard_digits: int = 15
    tolerance: mpf = field(default=None)

    def __post_init__(self):
        if self.working_digits < _MIN_WORKING:
            raise ValueError(f"working_digits must be >= {_MIN_WORKING}")
        if self.guard_digits < _MIN_GUARD:
            raise ValueError(f"guard_digits must be >= {_MIN_GUARD}")
        if self.tolerance is None:
            with mp.workdps(self.working_digits + self.guard_digits):
                tol = mpf(10) ** (-mpf(self.working_digits) / 2)
            object.__setattr__(self, "tolerance", tol)
        elif not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @property
    def dps(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def pole_tolerance(self) -> mpf:
        """Detection radius for Gamma poles: 10^(-working_digits+5)."""
        return mpf(10) ** (-self.working_digits + 5)

    @contextmanager
    def extra(self, digits: int = 0):
        """Run a block at working + guard (+ digits) decimal places."""
        with mp.workdps(self.dps + digits):
            yield


DEFAULT_CTX = PrecisionContext()


def to_mpc(value) -> mpc:
    """Coerce ints/floats/strings/complex/mpf/mpc to an mpc scalar."""
    if isinstance(value, mpc):
        return value
    if isinstance(value, complex):
        return mpc(value.real, value.imag)
    return mpc(value)


def ensure_finite(value: mpc, what: str = "value") -> mpc:
    """Reject NaN/inf before they escape an operation."""
    if not (mpmath.isfinite(value.real) and mpmath.isfinite(value.imag)):
        raise DomainError(f"{what} is not finite: {value}")
    return value


def is_near_integer(value, tol) -> bool:
    """True when ``value`` lies within ``tol`` of some integer."""
    z = to_mpc(value)
    if abs(z.imag) > tol:
        return False
    return abs(z.real - mpmath.nint(z.real)) <= tol


def is_near_nonpositive_integer(value, tol) -> bool:
    z = to_mpc(value)
    if abs(z.imag) > tol:
        return False
    n = mpmath.nint(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def almost_equal(a, b, tol) -> bool:
    return abs(to_mpc(a) - to_mpc(b)) <= tol
