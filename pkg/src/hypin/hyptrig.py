"""Hyperbolic trigonometry of polygons circumscribed about a circle.

A convex polygon with vertex angles ``alpha_i`` circumscribed about a circle
of radius ``x`` splits into right triangles (center, vertex, tangency point).
In each of them

    cos(alpha_i / 2) = cosh(x) * sin(beta_i / 2)

where ``beta_i`` is the central angle between the two tangency points adjacent
to vertex ``i``.  The central angles of a closed polygon sum to ``2*pi``.

All angles are radians stored as plain floats.  Radii travel as
:class:`CoshRadius` so that ``x`` and ``cosh(x)`` never get mixed up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from scipy.optimize import bisect

from hypin.errors import DomainError, InvalidArgument, NoRootError

# arguments this close outside [lo, hi] are roundoff and get clamped
CLAMP_SLACK = 1e-14
# open domain margin for the concavity formulas (half-angle variable)
DERIVATIVE_EPS = 1e-9


def safe_asin(v: float, lo: float = -1.0) -> float:
    if v > 1.0:
        if v > 1.0 + CLAMP_SLACK:
            raise DomainError(f"arcsin argument {v!r} exceeds 1")
        v = 1.0
    elif v < lo:
        if v < lo - CLAMP_SLACK:
            raise DomainError(f"arcsin argument {v!r} below {lo}")
        v = lo
    return math.asin(v)


def safe_acosh(v: float) -> float:
    if v < 1.0:
        if v < 1.0 - CLAMP_SLACK:
            raise DomainError(f"arccosh argument {v!r} below 1")
        v = 1.0
    return math.acosh(v)


def check_angle(value: float, lo: float = 0.0, hi: float = math.pi) -> float:
    """Return ``value`` as a float after checking it is finite and in [lo, hi]."""
    value = float(value)
    if not math.isfinite(value) or value < lo or value > hi:
        raise DomainError(f"angle {value!r} outside [{lo}, {hi}]")
    return value


def check_angle_list(angles: Sequence[float]) -> list[float]:
    """Validate vertex angles of a hyperbolic polygon.

    Requires at least three angles, each in the open interval (0, pi), with
    sum strictly below ``(m - 2) * pi``.
    """
    values = [float(a) for a in angles]
    m = len(values)
    if m < 3:
        raise DomainError(f"a polygon needs at least 3 angles, got {m}")
    for a in values:
        if not (0.0 < a < math.pi):
            raise DomainError(f"vertex angle {a!r} outside (0, pi)")
    if math.fsum(values) >= (m - 2) * math.pi:
        raise DomainError("angle sum does not satisfy the hyperbolic condition")
    return values


@dataclass(frozen=True)
class CoshRadius:
    """Radius of a hyperbolic circle, kept together with its cosh."""

    cosh_x: float

    def __post_init__(self):
        if not (math.isfinite(self.cosh_x) and self.cosh_x > 1.0):
            raise DomainError(f"cosh x must be finite and > 1, got {self.cosh_x!r}")

    @classmethod
    def from_x(cls, x: float) -> CoshRadius:
        return cls(math.cosh(x))

    @property
    def x(self) -> float:
        return math.acosh(self.cosh_x)


def beta_of_alpha(alpha: float, r: CoshRadius) -> float:
    """Central angle belonging to vertex angle ``alpha`` at radius ``r``.

    ``beta = 2 * arcsin(cos(alpha / 2) / cosh x)``; defined on the closed
    range ``alpha`` in [0, pi].
    """
    alpha = check_angle(alpha)
    return 2.0 * safe_asin(math.cos(alpha / 2.0) / r.cosh_x, lo=0.0)


def _half_angle_state(alpha: float, r: CoshRadius) -> tuple[float, float, float]:
    # Concavity is stated for the half-angle map a -> b with
    # sin(b) = cos(a) / cosh x on a in (0, pi/2).
    a = check_angle(alpha) / 2.0
    if not (DERIVATIVE_EPS < a < math.pi / 2.0 - DERIVATIVE_EPS):
        raise DomainError(f"alpha/2 = {a!r} outside the open interval (0, pi/2)")
    c = r.cosh_x
    b = safe_asin(math.cos(a) / c, lo=0.0)
    cos_b = math.cos(b)
    if cos_b < 1e-12:
        raise DomainError("cos(beta/2) vanishes; derivative is singular")
    return a, b, cos_b


def dbeta_dalpha(alpha: float, r: CoshRadius) -> float:
    """First derivative of :func:`beta_of_alpha` with respect to ``alpha``.

    With ``a = alpha/2`` and ``b = beta/2`` the half-angle relation gives
    ``db/da = -sin(a) / (cosh x * cos b)``, and ``d(beta)/d(alpha) = db/da``.
    """
    a, _, cos_b = _half_angle_state(alpha, r)
    return -math.sin(a) / (r.cosh_x * cos_b)


def d2beta_dalpha2(alpha: float, r: CoshRadius) -> float:
    """Second derivative of :func:`beta_of_alpha`; strictly negative.

    Differentiating the half-angle relation twice and eliminating ``cos a``
    gives ``d2b/da2 = -(cosh^2 x - 1) sin b / (cosh^2 x cos^3 b)``; the
    full-angle second derivative is half of that.
    """
    _, b, cos_b = _half_angle_state(alpha, r)
    c2 = r.cosh_x * r.cosh_x
    return -0.5 * (c2 - 1.0) * math.sin(b) / (c2 * cos_b**3)


def central_angle_excess(angles: Sequence[float], cosh_x: float) -> float:
    """``S = sum_i 2 arcsin(cos(alpha_i/2) / cosh x) - 2 pi``; decreasing in cosh x."""
    total = math.fsum(2.0 * safe_asin(math.cos(a / 2.0) / cosh_x, lo=0.0) for a in angles)
    return total - 2.0 * math.pi


def solve_circumscribed_radius(angles: Sequence[float]) -> CoshRadius:
    """Radius of the circle inscribed in the polygon with the given angles.

    The excess ``S`` is positive at ``cosh x = 1`` exactly when the angle sum
    is hyperbolic, and negative once ``cosh x > 1 / sin(pi / m)`` because every
    central angle then drops below ``2 pi / m``.  ``S`` is strictly monotone
    in ``cosh x`` so bisection on that bracket converges.
    """
    values = check_angle_list(angles)
    m = len(values)
    lo = 1.0 + 1e-12
    hi = 2.0 / math.sin(math.pi / m)
    s_lo = central_angle_excess(values, lo)
    s_hi = central_angle_excess(values, hi)
    if not (s_lo > 0.0 > s_hi):
        raise NoRootError(f"no sign change of the central-angle excess ({s_lo}, {s_hi})")
    cosh_x = bisect(
        lambda c: central_angle_excess(values, c), lo, hi, xtol=1e-14, maxiter=200
    )
    return CoshRadius(cosh_x)


def circle_area(r: CoshRadius | float) -> float:
    """Area ``4 pi sinh^2(x/2)`` of a hyperbolic disk.

    Accepts a :class:`CoshRadius` or the radius ``x >= 0`` itself.
    """
    x = r.x if isinstance(r, CoshRadius) else float(r)
    if x < 0.0:
        raise DomainError(f"radius must be >= 0, got {x!r}")
    return 4.0 * math.pi * math.sinh(x / 2.0) ** 2


def triangle_defect(alpha: float, beta: float) -> float:
    """Angle defect of the right triangle with angles alpha/2, beta/2, pi/2."""
    defect = math.pi / 2.0 - alpha / 2.0 - beta / 2.0
    if defect <= 0.0:
        raise DomainError(f"angles alpha={alpha!r}, beta={beta!r} give no hyperbolic triangle")
    return defect


def jensen_upper_bound_margin(l: int, k: int, kind: str) -> float:
    """Slack in the secant bound used to rule out smaller censuses.

    With ``s = 2 sin(pi/(4l-6))`` and ``phi = pi/(3k)`` (rotational) or
    ``phi = pi/k`` (additional), returns

        (3/pi) * arcsin(s) * (pi/2 - phi) - arcsin(s * cos(phi))

    which is strictly positive for every ``l >= 5`` and admissible ``k``.
    """
    if l < 5:
        raise InvalidArgument(f"l must be >= 5, got {l}")
    if kind == "rotational":
        if not 1 <= k <= l - 1:
            raise InvalidArgument(f"rotational degree must lie in [1, {l - 1}], got {k}")
        phi = math.pi / (3 * k)
    elif kind == "additional":
        if not 3 <= k <= l:
            raise InvalidArgument(f"additional degree must lie in [3, {l}], got {k}")
        phi = math.pi / k
    else:
        raise InvalidArgument(f"unknown kind {kind!r}")
    s = 2.0 * math.sin(math.pi / (4 * l - 6))
    for arg in (s, s * math.cos(phi)):
        if not 0.0 <= arg <= 1.0:
            raise DomainError(f"arcsin argument {arg!r} outside [0, 1]")
    return 3.0 / math.pi * math.asin(s) * (math.pi / 2.0 - phi) - math.asin(s * math.cos(phi))
