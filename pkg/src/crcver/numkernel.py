"""Classical special functions on arbitrary-precision complex scalars.

Gamma/log-Gamma are delegated to mpmath (shifted Stirling series with
argument raising, principal branch); this module adds the pole policy,
exact Bernoulli numbers/polynomials, the polylogarithm in its series
regime, and the Pochhammer symbol.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError
from .precision import (
    DEFAULT_CTX,
    PrecisionContext,
    ensure_finite,
    is_near_nonpositive_integer,
    to_mpc,
)

Rational = Fraction


def gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Gamma(z) on the principal branch.

    Raises PoleError when z is within the pole-detection tolerance of a
    non-positive integer.
    """
    z = to_mpc(z)
    if is_near_nonpositive_integer(z, ctx.pole_tolerance):
        raise PoleError(f"gamma pole at {z}")
    with ctx.extra():
        val = mpmath.gamma(z)
    return ensure_finite(+val, "gamma")


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Branch-consistent log-Gamma (principal branch of mpmath.loggamma)."""
    z = to_mpc(z)
    if is_near_nonpositive_integer(z, ctx.pole_tolerance):
        raise PoleError(f"log_gamma pole at {z}")
    with ctx.extra():
        val = mpmath.loggamma(z)
    return ensure_finite(+val, "log_gamma")


def reciprocal_gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """1/Gamma(z); entire, returns 0 at non-positive integers."""
    z = to_mpc(z)
    with ctx.extra():
        val = mpmath.rgamma(z)
    return ensure_finite(+val, "reciprocal_gamma")


def beta(x, y, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Euler Beta B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y).

    Evaluated symmetrically in (x, y) so that beta(x, y) == beta(y, x)
    exactly as computed.
    """
    x, y = to_mpc(x), to_mpc(y)
    tol = ctx.pole_tolerance
    for name, val in (("x", x), ("y", y), ("x+y", x + y)):
        if is_near_nonpositive_integer(val, tol):
            raise PoleError(f"beta pole: {name} = {val}")
    a, b = sorted((x, y), key=lambda t: (t.real, t.imag))
    with ctx.extra():
        val = mpmath.exp(mpmath.loggamma(a) + mpmath.loggamma(b) - mpmath.loggamma(a + b))
    return ensure_finite(+val, "beta")


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(k: int) -> Fraction:
    """Exact Bernoulli number B_k with sum B_k t^k / k! = t / (e^t - 1).

    This convention forces B_1 = -1/2.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= k:
            m = len(_bernoulli_cache)
            # sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
            acc = sum(comb(m + 1, j) * _bernoulli_cache[j] for j in range(m))
            _bernoulli_cache.append(Fraction(-acc, m + 1))
        return _bernoulli_cache[k]


def bernoulli_polynomial(k: int, x) -> mpc:
    """Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^(k-j)."""
    x = to_mpc(x)
    total = mpc(0)
    for j in range(k + 1):
        bj = bernoulli_number(j)
        total += comb(k, j) * mpf(bj.numerator) / bj.denominator * x ** (k - j)
    return total


def polylog(n: int, y, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Li_n(y) = sum_{k>0} y^k / k^n for |y| < 1, tail-bounded below tolerance."""
    if n < 1:
        raise ValueError("polylog order must be a positive integer")
    y = to_mpc(y)
    r = abs(y)
    if r >= 1:
        raise DomainError(f"polylog series requires |y| < 1, got |y| = {r}")
    if r == 0:
        return mpc(0)
    with ctx.extra():
        total = mpc(0)
        term = mpc(1)
        k = 0
        while True:
            k += 1
            term *= y
            total += term / mpf(k) ** n
            # geometric tail bound: sum_{j>k} |y|^j / j^n <= |y|^{k+1} / (1-|y|)
            if r ** (k + 1) / (1 - r) < ctx.tolerance * max(abs(total), mpf(1)):
                break
            if k > 10**6:
                raise DomainError("polylog series failed to converge")
        result = +total
    return ensure_finite(result, "polylog")


def pochhammer_symbol(a, n: int) -> mpc:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = to_mpc(a)
    out = mpc(1)
    for k in range(n):
        out *= a + k
    return out


def rational_to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator
