"""Analytic continuation of (q+1)Fq to |w| > 1.

The solution basis at infinity has exponents w^(-A_k); the connection
coefficient of each branch is a Gamma-product in the parameters, and the
subleading 1/w-series per exponent follows from the Frobenius recursion of
the hypergeometric equation at infinity:

    t_{m+1}/t_m = (A_k + m) prod_j (1 + A_k - B_j + m)
                  / [ prod_{j != k} (1 + A_k - A_j + m) (m + 1) w ].

The continuation path is the canonical one from 0 to infinity with trivial
winding around w = 0 and w = 1; for arguments on the positive real axis the
branch of log(-w) is the limit from Im w > 0, i.e. log w - i pi.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpc, mpf

from ..errors import DivergenceError
from ..precision import DEFAULT_CTX, PrecisionContext, ensure_finite, to_mpc
from .series import _CONSECUTIVE, _HARD_CAP
from .specs import HypergeomSpec


def log_minus(w) -> mpc:
    """log(-w) on the sheet reached along the canonical path (upper side)."""
    w = to_mpc(w)
    if w.imag == 0 and w.real > 0:
        return mpmath.log(w) - mpmath.pi * 1j
    return mpmath.log(-w)


@dataclass(frozen=True)
class KummerTerm:
    """One branch of the expansion at infinity: c * (-w)^(-exponent) * S(1/w)."""

    exponent: mpc
    coefficient: mpc
    inner_upper: tuple[mpc, ...]
    inner_lower: tuple[mpc, ...]

    def inner_series(self, w, ctx: PrecisionContext) -> mpc:
        """S(1/w) = sum_m t_m w^(-m), t_0 = 1, by the recursion at infinity."""
        invw = 1 / to_mpc(w)
        if abs(invw) >= 1:
            raise DivergenceError("inner series at infinity requires |w| > 1")
        total = mpc(0)
        t = mpc(1)
        m = 0
        small = 0
        while True:
            total += t
            if abs(t) < ctx.tolerance * max(abs(total), mpf(1)):
                small += 1
                if small >= _CONSECUTIVE:
                    break
            else:
                small = 0
            num = mpc(1)
            for u in self.inner_upper:
                num *= u + m
            den = mpc(m + 1)
            for v in self.inner_lower:
                den *= v + m
            t = t * num / den * invw
            m += 1
            if m > _HARD_CAP:
                raise DivergenceError("continuation tail did not converge")
        return total


def kummer_terms(spec: HypergeomSpec, ctx: PrecisionContext = DEFAULT_CTX) -> list[KummerTerm]:
    """Connection data of the reduced spec at infinity, one term per upper parameter.

    The coefficient of branch k is
        prod_j Gamma(B_j)/Gamma(B_j - A_k) * prod_{j != k} Gamma(A_j - A_k)/Gamma(A_j);
    reciprocal-Gamma zeros make branches with B_j - A_k a non-positive integer
    drop out cleanly.
    """
    red = spec.reduced(ctx)
    red.validate_for_continuation(ctx)
    terms = []
    with ctx.extra():
        for k, ak in enumerate(red.upper):
            c = mpc(1)
            for b in red.lower:
                c *= mpmath.gamma(b) * mpmath.rgamma(b - ak)
            for j, aj in enumerate(red.upper):
                if j == k:
                    continue
                c *= mpmath.gamma(aj - ak) * mpmath.rgamma(aj)
            inner_upper = (ak,) + tuple(1 + ak - b for b in red.lower)
            inner_lower = tuple(1 + ak - aj for j, aj in enumerate(red.upper) if j != k)
            terms.append(KummerTerm(ak, +c, inner_upper, inner_lower))
    return terms


def pfq_at_infinity(spec: HypergeomSpec, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Value of the continued (q+1)Fq at |w| > 1 along the canonical path."""
    w = spec.argument
    if abs(w) <= 1:
        raise DivergenceError("pfq_at_infinity requires |argument| > 1")
    terms = kummer_terms(spec, ctx)
    lw = log_minus(w)
    with ctx.extra():
        total = mpc(0)
        for t in terms:
            if t.coefficient == 0:
                continue
            total += t.coefficient * mpmath.exp(-t.exponent * lw) * t.inner_series(w, ctx)
        result = +total
    return ensure_finite(result, "pfq_at_infinity")
