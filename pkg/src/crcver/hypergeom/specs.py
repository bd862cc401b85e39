"""Parameter containers for hypergeometric evaluation and continuation."""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mpc

from ..errors import PoleError, ResonanceError
from ..precision import (
    DEFAULT_CTX,
    PrecisionContext,
    is_near_integer,
    is_near_nonpositive_integer,
    to_mpc,
)


@dataclass(frozen=True)
class HypergeomSpec:
    """Upper/lower parameter lists and argument of a pFq series."""

    upper: tuple[mpc, ...]
    lower: tuple[mpc, ...]
    argument: mpc

    def __init__(self, upper, lower, argument):
        object.__setattr__(self, "upper", tuple(to_mpc(a) for a in upper))
        object.__setattr__(self, "lower", tuple(to_mpc(b) for b in lower))
        object.__setattr__(self, "argument", to_mpc(argument))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def with_argument(self, w) -> "HypergeomSpec":
        return HypergeomSpec(self.upper, self.lower, w)

    def validate_lower(self, ctx: PrecisionContext = DEFAULT_CTX) -> None:
        for b in self.lower:
            if is_near_nonpositive_integer(b, ctx.tolerance):
                raise PoleError(f"lower parameter {b} is a non-positive integer")

    def reduced(self, ctx: PrecisionContext = DEFAULT_CTX) -> "HypergeomSpec":
        """Cancel upper/lower parameter pairs that coincide within tolerance."""
        upper = list(self.upper)
        lower = list(self.lower)
        out_upper = []
        for a in upper:
            hit = next((i for i, b in enumerate(lower) if abs(a - b) <= ctx.tolerance), None)
            if hit is None:
                out_upper.append(a)
            else:
                lower.pop(hit)
        return HypergeomSpec(out_upper, lower, self.argument)

    def validate_for_continuation(self, ctx: PrecisionContext = DEFAULT_CTX) -> None:
        """Genericity needed by the connection formula at infinity."""
        if self.p != self.q + 1:
            raise ResonanceError("continuation requires p = q + 1")
        self.validate_lower(ctx)
        for i in range(self.p):
            for j in range(i + 1, self.p):
                if is_near_integer(self.upper[i] - self.upper[j], ctx.tolerance):
                    raise ResonanceError(
                        f"upper parameters {self.upper[i]} and {self.upper[j]} "
                        "differ by an integer"
                    )


@dataclass(frozen=True)
class LauricellaSpec:
    """Parameters of the three-variable type-D Lauricella function."""

    a: mpc
    b1: mpc
    b2: mpc
    b3: mpc
    c: mpc
    x1: mpc
    x2: mpc
    x3: mpc

    def __init__(self, a, b1, b2, b3, c, x1, x2, x3):
        for name, v in zip(
            ("a", "b1", "b2", "b3", "c", "x1", "x2", "x3"),
            (a, b1, b2, b3, c, x1, x2, x3),
        ):
            object.__setattr__(self, name, to_mpc(v))

    def validate(self, ctx: PrecisionContext = DEFAULT_CTX) -> None:
        if is_near_nonpositive_integer(self.c, ctx.tolerance):
            raise PoleError(f"Lauricella c = {self.c} is a non-positive integer")

    @property
    def bs(self) -> tuple[mpc, mpc, mpc]:
        return (self.b1, self.b2, self.b3)

    @property
    def xs(self) -> tuple[mpc, mpc, mpc]:
        return (self.x1, self.x2, self.x3)


@dataclass
class ContourSpec:
    """A piecewise-linear path with per-singularity winding bookkeeping.

    ``waypoints`` are traversed in order by straight segments.  ``branch_log``
    records, per marked singular point, the integer winding accumulated by
    closed subloops of the path (used by contour integrators that must keep
    multivalued integrands on a consistent sheet).
    """

    waypoints: list[mpc]
    branch_log: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.waypoints = [to_mpc(w) for w in self.waypoints]
        if len(self.waypoints) < 1:
            raise ValueError("a contour needs at least one waypoint")
        for v in self.branch_log.values():
            if v != int(v):
                raise ValueError("winding numbers must be integers")

    @property
    def start(self) -> mpc:
        return self.waypoints[0]

    @property
    def end(self) -> mpc:
        return self.waypoints[-1]

    def segments(self) -> list[tuple[mpc, mpc]]:
        return list(zip(self.waypoints[:-1], self.waypoints[1:]))

    def length(self):
        return sum(abs(b - a) for a, b in self.segments())


def canonical_rho(w_start, w_end, clearance=0.05, detour_radius=0.1) -> ContourSpec:
    """The standard continuation path from inside the unit disk out to w_end.

    Straight segment, except that a half-circle detour of ``detour_radius``
    through the upper half plane is inserted around w = 1 whenever the ray
    would pass within ``clearance`` of it.  Winding numbers around 0 and 1
    stay trivial.
    """
    import mpmath

    a, b = to_mpc(w_start), to_mpc(w_end)
    one = mpc(1)
    pts = [a]
    d = b - a
    denom = abs(d) ** 2
    tstar = float(((one - a).real * d.real + (one - a).imag * d.imag) / denom) if denom else -1.0
    dist = abs(a + tstar * d - one) if 0 < tstar < 1 else min(abs(a - one), abs(b - one))
    if 0 < tstar < 1 and dist < clearance:
        r = mpmath.mpf(detour_radius)
        u = d / abs(d)
        entry = one - r * u
        base = mpmath.arg(entry - one)
        # orient the half-circle so it passes through Im > 0
        sgn = 1 if u.real <= 0 else -1
        pts.append(entry)
        for k in range(1, 6):
            pts.append(one + r * mpmath.exp(1j * (base + sgn * k * mpmath.pi / 6)))
        pts.append(one + r * u)
    pts.append(b)
    return ContourSpec(pts, branch_log={"0": 0, "1": 0})
