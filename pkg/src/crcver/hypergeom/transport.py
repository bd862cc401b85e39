"""Taylor transport of hypergeometric solutions along paths in the w-plane.

The generalized hypergeometric equation

    [ theta prod_j (theta + B_j - 1) - w prod_i (theta + A_i) ] F = 0,
    theta = w d/dw,

is rewritten as sum_k (g_k w^k - r_k w^{k+1}) F^(k) = 0 using Stirling
numbers, and integrated by an adaptive-order Taylor method recentered at
each step.  Points 0 and 1 are the finite singularities; step sizes are
capped by the distance to them.
"""

from __future__ import annotations

import mpmath
from mpmath import mpc, mpf

from ..errors import StepFailure
from ..precision import DEFAULT_CTX, PrecisionContext, ensure_finite
from .series import pfq_derivatives
from .specs import ContourSpec, HypergeomSpec

_STEP_FRACTION = 0.5
_MIN_STEP = mpf("1e-6")
_MAX_ORDER = 4000


def _theta_polynomial(roots) -> list[mpc]:
    """Coefficients of prod (theta + r) as a polynomial in theta (ascending)."""
    coeffs = [mpc(1)]
    for r in roots:
        nxt = [mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * r
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs


def _stirling2(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    # S(n, k) = k S(n-1, k) + S(n-1, k-1)
    row = [1]
    for m in range(1, n + 1):
        nxt = [0] * (m + 1)
        for j in range(m):
            if j + 1 <= m:
                nxt[j + 1] += row[j]
            nxt[j] += j * row[j]
        row = nxt
    return row[k]


class _TransportOperator:
    """Cached w-polynomial coefficients of the ODE in derivative form."""

    def __init__(self, spec: HypergeomSpec):
        q = len(spec.lower)
        p = len(spec.upper)
        if p != q + 1:
            raise ValueError("transport is defined for p = q + 1 specs")
        self.order = q + 1
        left = _theta_polynomial([b - 1 for b in spec.lower]) + [mpc(0)]
        left = [mpc(0)] + left[:-1]  # multiply by theta: shift theta-degree
        # theta * prod(theta + B_j - 1): theta-coeffs
        lcoef = [mpc(0)] * (self.order + 1)
        base = _theta_polynomial([b - 1 for b in spec.lower])
        for i, c in enumerate(base):
            lcoef[i + 1] += c
        rcoef = _theta_polynomial(list(spec.upper))
        # theta^j = sum_k S(j, k) w^k d^k
        n = self.order
        self.g = [mpc(0)] * (n + 1)  # coefficient of w^k d^k from the left part
        self.r = [mpc(0)] * (n + 1)  # coefficient of w^{k+1} d^k from the right part
        for j in range(n + 1):
            for k in range(j + 1):
                s = _stirling2(j, k)
                if s:
                    self.g[k] += lcoef[j] * s
                    self.r[k] += rcoef[j] * s

    def taylor_extend(self, a: list[mpc], w0: mpc, upto: int) -> None:
        """Extend local Taylor coefficients a[0..order] in place up to index ``upto``.

        The delta^m coefficient identity reads
          sum_k sum_i [g_k C(k,i) w0^(k-i) - r_k C(k+1,i) w0^(k+1-i)]
                      * a_{m-i+k} (m-i+k)!/(m-i)!  = 0,
        solved for the top coefficient a_{m + order}.
        """
        n = self.order
        binom = [[mpmath.binomial(k, i) for i in range(k + 2)] for k in range(n + 2)]
        while len(a) <= upto:
            M = len(a)  # solving for a_M
            m = M - n
            top = (self.g[n] - self.r[n] * w0) * w0**n
            ff = mpf(1)
            for i in range(n):
                ff *= M - i
            top *= ff
            if top == 0:
                raise StepFailure("Taylor recursion degenerate (w0 at a singular point)")
            acc = mpc(0)
            for k in range(n + 1):
                for i in range(k + 2):
                    coef = mpc(0)
                    if i <= k:
                        coef += self.g[k] * binom[k][i] * w0 ** (k - i)
                    coef -= self.r[k] * binom[k + 1][i] * w0 ** (k + 1 - i)
                    if coef == 0:
                        continue
                    idx = m - i + k
                    if idx < 0 or idx >= M:
                        if idx == M and k == n and i == 0:
                            continue  # the unknown itself
                        if idx > M:
                            raise AssertionError("recursion reached beyond the unknown")
                        continue
                    fall = mpf(1)
                    for jj in range(k):
                        fall *= idx - jj
                    if fall == 0:
                        continue
                    acc += coef * a[idx] * fall
            a.append(-acc / top)


def _local_coeffs(state: list[mpc]) -> list[mpc]:
    fact = mpf(1)
    out = []
    for k, v in enumerate(state):
        if k:
            fact *= k
        out.append(v / fact)
    return out


def _eval_series(a: list[mpc], h: mpc, order: int) -> list[mpc]:
    """Value and first ``order`` derivatives of sum a_m h^m at offset h."""
    out = []
    for k in range(order + 1):
        tot = mpc(0)
        hp = mpc(1)
        for m in range(k, len(a)):
            fall = mpf(1)
            for jj in range(k):
                fall *= m - jj
            tot += a[m] * fall * hp
            hp *= h
        out.append(tot)
    return out


def pfq_ode_transport(
    spec: HypergeomSpec,
    path: ContourSpec,
    ctx: PrecisionContext = DEFAULT_CTX,
) -> mpc:
    """Transport the pFq solution from path.start to path.end.

    Initial data comes from the convergent series at path.start (which must
    lie inside the unit disk, away from 0); the local error per step is kept
    below tolerance / path length.
    """
    spec.validate_lower(ctx)
    w_start = path.start
    if abs(w_start) >= 1:
        raise ValueError("path must start inside the unit disk")
    op = _TransportOperator(spec)
    n = op.order
    with ctx.extra(10):
        plen = path.length()
        tol_local = ctx.tolerance / max(plen, mpf(1)) / 10
        state = pfq_derivatives(spec.with_argument(w_start), n - 1, ctx)
        w = w_start
        for seg_a, seg_b in path.segments():
            if abs(seg_a - w) > mpf("1e-20") * max(1, abs(w)):
                raise ValueError("path segments are not contiguous")
            w = seg_a
            remaining = seg_b - w
            while abs(remaining) > 0:
                free = min(abs(w), abs(w - 1))
                if free < _MIN_STEP:
                    raise StepFailure(f"stalled near singular point at w = {w}")
                h_len = min(abs(remaining), _STEP_FRACTION * free)
                h = remaining / abs(remaining) * h_len
                a = _local_coeffs(state)
                op.taylor_extend(a, w, n + 8)
                # grow the order until the tail is safely below the local budget
                while True:
                    tail = max(abs(a[-1]), abs(a[-2])) * h_len ** (len(a) - 1)
                    tail = tail / max(1 - h_len / free, mpf("0.25"))
                    if tail < tol_local or len(a) > _MAX_ORDER:
                        break
                    op.taylor_extend(a, w, len(a) + 16)
                if len(a) > _MAX_ORDER:
                    raise StepFailure("Taylor order cap exceeded")
                state = _eval_series(a, h, n - 1)
                w = w + h
                remaining = seg_b - w
        result = +state[0]
    return ensure_finite(result, "pfq_ode_transport")
