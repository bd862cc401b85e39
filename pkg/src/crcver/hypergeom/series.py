"""Series (and Euler-integral) evaluation of pFq, Appell F1 and Lauricella FD.

Truncation rule for all series: stop once 20 consecutive terms fall below
tolerance * |partial sum| and a geometric ratio bound confirms the tail;
hard cap of 10^6 terms.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from ..errors import BranchError, DivergenceError, DomainError
from ..precision import DEFAULT_CTX, PrecisionContext, ensure_finite, to_mpc
from .specs import HypergeomSpec, LauricellaSpec

_CONSECUTIVE = 20
_HARD_CAP = 10**6


def _sum_with_tail_bound(term_iter, ctx: PrecisionContext, ratio_bound=None) -> mpc:
    """Sum terms until 20 consecutive ones are negligible and the tail is bounded.

    ``ratio_bound``: asymptotic |t_{n+1}/t_n| bound used for the geometric
    tail estimate; defaults to conservative 0.99 acceptance of smallness.
    """
    total = mpc(0)
    small = 0
    last = mpf(0)
    for n, term in enumerate(term_iter):
        total += term
        last = abs(term)
        scale = max(abs(total), mpf(1))
        if last < ctx.tolerance * scale:
            small += 1
            if small >= _CONSECUTIVE:
                if ratio_bound is None or ratio_bound < 1:
                    r = ratio_bound if ratio_bound is not None else mpf("0.99")
                    if last * r / (1 - r) < ctx.tolerance * scale * 10:
                        return total
        else:
            small = 0
        if n > _HARD_CAP:
            raise DivergenceError("series did not converge within the term cap")
    return total


def pfq(spec: HypergeomSpec, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Generalized hypergeometric series sum_n prod(A)_n / prod(B)_n w^n / n!."""
    spec.validate_lower(ctx)
    w = spec.argument
    if spec.p == spec.q + 1 and abs(w) >= 1:
        raise DivergenceError(f"pFq with p=q+1 requires |w| < 1, got {abs(w)}")
    if spec.p > spec.q + 1 and abs(w) > 0:
        raise DivergenceError("pFq with p > q+1 diverges for w != 0")

    def terms():
        with ctx.extra():
            t = mpc(1)
            n = 0
            yield t
            while True:
                num = mpc(1)
                for a in spec.upper:
                    num *= a + n
                den = mpc(n + 1)
                for b in spec.lower:
                    den *= b + n
                t = t * num / den * w
                n += 1
                yield t

    bound = abs(w) if spec.p == spec.q + 1 else None
    with ctx.extra():
        total = _sum_with_tail_bound(terms(), ctx, ratio_bound=bound)
    return ensure_finite(+total, "pfq")


def pfq_derivatives(spec: HypergeomSpec, order: int, ctx: PrecisionContext = DEFAULT_CTX) -> list[mpc]:
    """[F(w), F'(w), ..., F^(order)(w)] from the termwise-differentiated series."""
    spec.validate_lower(ctx)
    w = spec.argument
    if spec.p == spec.q + 1 and abs(w) >= 1:
        raise DivergenceError("series derivatives require |w| < 1")
    out = []
    with ctx.extra():
        for k in range(order + 1):
            shifted = HypergeomSpec(
                [a + k for a in spec.upper], [b + k for b in spec.lower], w
            )
            scale = mpc(1)
            for a in spec.upper:
                for j in range(k):
                    scale *= a + j
            for b in spec.lower:
                inv = mpc(1)
                for j in range(k):
                    inv *= b + j
                scale /= inv
            out.append(scale * pfq(shifted, ctx))
    return out


def appell_f1(a, b2, b3, c, x2, x3, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Appell F1 double series sum (a)_{m+n} (b2)_m (b3)_n / ((c)_{m+n} m! n!) x2^m x3^n."""
    a, b2, b3, c = map(to_mpc, (a, b2, b3, c))
    x2, x3 = to_mpc(x2), to_mpc(x3)
    if abs(x2) >= 1 or abs(x3) >= 1:
        raise DivergenceError("Appell F1 series requires |x2|, |x3| < 1")
    with ctx.extra():
        total = mpc(0)
        # row m: sum over n is a 2F1-type series with shifted parameters
        row_pref = mpc(1)  # (a)_m (b2)_m / ((c)_m m!) x2^m
        m = 0
        small_rows = 0
        while True:
            t = row_pref
            row = mpc(0)
            n = 0
            small = 0
            while True:
                row += t
                if abs(t) < ctx.tolerance * max(abs(total) + abs(row), mpf(1)):
                    small += 1
                    if small >= _CONSECUTIVE:
                        break
                else:
                    small = 0
                t = t * (a + m + n) * (b3 + n) / ((c + m + n) * (n + 1)) * x3
                n += 1
                if n > _HARD_CAP:
                    raise DivergenceError("Appell F1 inner series did not converge")
            total += row
            if abs(row) < ctx.tolerance * max(abs(total), mpf(1)):
                small_rows += 1
                if small_rows >= _CONSECUTIVE:
                    break
            else:
                small_rows = 0
            row_pref = row_pref * (a + m) * (b2 + m) / ((c + m) * (m + 1)) * x2
            m += 1
            if m > _HARD_CAP:
                raise DivergenceError("Appell F1 outer series did not converge")
        result = +total
    return ensure_finite(result, "appell_f1")


def lauricella_fd3(
    spec: LauricellaSpec,
    ctx: PrecisionContext = DEFAULT_CTX,
    mode: str = "auto",
    contour=None,
) -> mpc:
    """Three-variable Lauricella F_D.

    Modes: "series" (triple sum, needs all |x_i| < 1), "integral" (the
    one-dimensional Euler integral, needs Re c > Re a > 0 unless a Pochhammer
    contour replacement is requested via mode="pochhammer"), "auto" picks
    series inside the polydisc and the integral outside it.
    """
    spec.validate(ctx)
    if mode == "auto":
        mode = "series" if all(abs(x) < mpf("0.82") for x in spec.xs) else "integral"
    if mode == "series":
        return _fd3_series(spec, ctx)
    if mode == "integral":
        return _fd3_integral(spec, ctx)
    if mode == "pochhammer":
        return _fd3_pochhammer(spec, ctx, contour)
    raise ValueError(f"unknown mode {mode!r}")


def _fd3_series(spec: LauricellaSpec, ctx: PrecisionContext) -> mpc:
    if any(abs(x) >= 1 for x in spec.xs):
        raise DivergenceError("Lauricella series requires all |x_i| < 1")
    a, c = spec.a, spec.c
    b = spec.bs
    x = spec.xs
    with ctx.extra():
        total = mpc(0)
        # iterate over total degree s, inner double loop over (d1, d2)
        pref_s = mpc(1)  # (a)_s / (c)_s
        s = 0
        small_shells = 0
        while True:
            shell = mpc(0)
            # t(d1, d2) over d1 + d2 <= s, d3 = s - d1 - d2
            f1 = mpc(1)  # (b1)_{d1} x1^{d1} / d1!
            for d1 in range(s + 1):
                f2 = mpc(1)
                for d2 in range(s - d1 + 1):
                    d3 = s - d1 - d2
                    f3 = mpc(1)
                    for j in range(d3):
                        f3 = f3 * (b[2] + j) / (j + 1) * x[2]
                    shell += f1 * f2 * f3
                    f2 = f2 * (b[1] + d2) / (d2 + 1) * x[1]
                f1 = f1 * (b[0] + d1) / (d1 + 1) * x[0]
            total += pref_s * shell
            if abs(pref_s * shell) < ctx.tolerance * max(abs(total), mpf(1)):
                small_shells += 1
                if small_shells >= _CONSECUTIVE:
                    break
            else:
                small_shells = 0
            pref_s = pref_s * (a + s) / (c + s)
            s += 1
            if s > 10**4:
                raise DivergenceError("Lauricella series did not converge")
        result = +total
    return ensure_finite(result, "lauricella_fd3")


def _fd3_integrand(spec: LauricellaSpec):
    b = spec.bs
    x = spec.xs

    def extra(t):
        out = mpc(1)
        for bi, xi in zip(b, x):
            out *= (1 - xi * t) ** (-bi)
        return out

    return extra


def _fd3_integral(spec: LauricellaSpec, ctx: PrecisionContext) -> mpc:
    """Gamma(c)/(Gamma(a)Gamma(c-a)) * int_0^1 t^(a-1)(1-t)^(c-a-1) prod(1-x_i t)^(-b_i) dt."""
    a, c = spec.a, spec.c
    if not (a.real > 0 and (c - a).real > 0):
        return _fd3_pochhammer(spec, ctx, None)
    for xi in spec.xs:
        if xi != 0 and abs(mpmath.im(1 / xi)) < ctx.tolerance and mpmath.re(1 / xi) > 0 and mpmath.re(1 / xi) < 1:
            raise BranchError(f"Euler integral pinched by singularity at t = {1/xi}")
    extra = _fd3_integrand(spec)
    with ctx.extra(10):
        def f(t):
            return t ** (a - 1) * (1 - t) ** (c - a - 1) * extra(t)

        val = mpmath.quad(f, [0, 1])
        pref = mpmath.exp(
            mpmath.loggamma(c) - mpmath.loggamma(a) - mpmath.loggamma(c - a)
        )
        result = +(pref * val)
    return ensure_finite(result, "lauricella_fd3")


def _fd3_pochhammer(spec: LauricellaSpec, ctx: PrecisionContext, contour) -> mpc:
    from .contours import pochhammer_contour_integral

    a, c = spec.a, spec.c
    extra = _fd3_integrand(spec)
    with ctx.extra(10):
        val = pochhammer_contour_integral(a, c - a, extra, ctx, contour=contour)
        pref = mpmath.exp(
            mpmath.loggamma(c) - mpmath.loggamma(a) - mpmath.loggamma(c - a)
        )
        result = +(pref * val)
    return ensure_finite(result, "lauricella_fd3")
