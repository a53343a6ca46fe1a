"""Incircle radius of each fundamental-domain census.

At the optimum of a census all copies of a vertex share the same angle: a
rotation center of degree ``i`` contributes ``i`` corners of angle
``2 pi / (3 i)`` and an additional point of degree ``j`` contributes ``j``
corners of angle ``2 pi / j``.  Writing ``beta`` for the central angle at a
leaf (degree-1 center, corner angle ``2 pi / 3``) the radius satisfies
``cosh x = 1 / (2 sin(beta / 2))`` and every other central angle follows as

    beta_i = 2 arcsin(2 cos(pi / (3 i)) sin(beta / 2))
    beta_j = 2 arcsin(2 cos(pi / j) sin(beta / 2))

Closing the full turn gives one equation ``h(beta) = 0`` with ``h`` strictly
increasing on ``[0, K_l]``, ``h(0) = -2 pi`` and ``h(K_l) >= 0``; it is solved
by bisection.  A bracket width ``tol`` on ``beta`` propagates to roughly
``2 * tol`` on ``x`` for the censuses of interest (``|dx/dbeta|`` is about 2
near ``beta = pi / 5``).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from scipy.optimize import bisect

from hypin.census import GroupSpec, TreeTypeSolution, as_group, enumerate_tree_types
from hypin.errors import DomainError, InvalidArgument, NoRootError
from hypin.hyptrig import CoshRadius, circle_area, safe_asin, triangle_defect

DEFAULT_TOL = 1e-13
# h(K_l) may dip below zero by roundoff; beyond this it signals a bad census
ROOT_AT_LIMIT_SLACK = 1e-12


def rotational_corner_angle(i: int) -> float:
    return 2.0 * math.pi / (3 * i)


def additional_corner_angle(j: int) -> float:
    return 2.0 * math.pi / j


@dataclass(frozen=True)
class IncircleResult:
    """Solved radius data for one census."""

    beta1: float
    radius: CoshRadius
    rotational_angles: dict[int, float] = field(default_factory=dict)
    additional_angles: dict[int, float] = field(default_factory=dict)
    polygon_area: float = math.nan
    circle_area: float = math.nan

    @property
    def x(self) -> float:
        return self.radius.x

    @property
    def cosh_x(self) -> float:
        return self.radius.cosh_x

    @property
    def density(self) -> float:
        return self.circle_area / self.polygon_area


@dataclass(frozen=True)
class BetaBound:
    K_l: float


def _check_pair(sol: TreeTypeSolution, g: GroupSpec | int | None) -> GroupSpec:
    group = as_group(sol.l if g is None else g)
    if group.l != sol.l:
        raise InvalidArgument(f"census is for l={sol.l}, group has l={group.l}")
    return group


def beta_upper_limit(g: GroupSpec | int) -> BetaBound:
    """Largest leaf central angle for which every ``arcsin`` in ``h`` is defined."""
    l = as_group(g).l
    return BetaBound(2.0 * math.asin(1.0 / (2.0 * math.cos(math.pi / (3 * (l - 1))))))


def _central_angle(coef: float, beta: float) -> float:
    return 2.0 * safe_asin(coef * math.sin(beta / 2.0), lo=0.0)


def h_eval(sol: TreeTypeSolution, g: GroupSpec | int | None, beta: float) -> float:
    """Total central angle minus ``2 pi`` when the leaf central angle is ``beta``."""
    _check_pair(sol, g)
    terms = [
        i * a * _central_angle(2.0 * math.cos(math.pi / (3 * i)), beta)
        for i, a in sol.rotational_items()
    ]
    terms += [
        j * b * _central_angle(2.0 * math.cos(math.pi / j), beta)
        for j, b in sol.additional_items()
    ]
    return math.fsum(terms) - 2.0 * math.pi


def central_angles(sol: TreeTypeSolution, beta: float) -> tuple[dict[int, float], dict[int, float]]:
    rot = {i: _central_angle(2.0 * math.cos(math.pi / (3 * i)), beta) for i, _ in sol.rotational_items()}
    add = {j: _central_angle(2.0 * math.cos(math.pi / j), beta) for j, _ in sol.additional_items()}
    return rot, add


def closure_residual(sol: TreeTypeSolution, res: IncircleResult) -> float:
    """``sum i A_i beta_i + sum j B_j beta_j - 2 pi`` for a solved census."""
    total = math.fsum(i * a * res.rotational_angles[i] for i, a in sol.rotational_items())
    total += math.fsum(j * b * res.additional_angles[j] for j, b in sol.additional_items())
    return total - 2.0 * math.pi


def polygon_area(sol: TreeTypeSolution, g: GroupSpec | int | None, res: IncircleResult) -> float:
    """Area of the fundamental polygon as twice the summed right-triangle defects."""
    _check_pair(sol, g)
    parts = [
        i * a * 2.0 * triangle_defect(rotational_corner_angle(i), res.rotational_angles[i])
        for i, a in sol.rotational_items()
    ]
    parts += [
        j * b * 2.0 * triangle_defect(additional_corner_angle(j), res.additional_angles[j])
        for j, b in sol.additional_items()
    ]
    return math.fsum(parts)


def solve_incircle(
    sol: TreeTypeSolution, g: GroupSpec | int | None = None, tol: float = DEFAULT_TOL
) -> IncircleResult:
    group = _check_pair(sol, g)
    if not 1e-14 <= tol <= 1e-6:
        raise InvalidArgument(f"tol must lie in [1e-14, 1e-6], got {tol!r}")
    K = beta_upper_limit(group).K_l
    h_top = h_eval(sol, group, K)
    if h_top < 0.0:
        if h_top < -ROOT_AT_LIMIT_SLACK:
            raise NoRootError(f"h(K_l) = {h_top!r} < 0 for census {sol.label()}")
        beta = K
    elif h_top == 0.0:
        beta = K
    else:
        beta = bisect(lambda b: h_eval(sol, group, b), 0.0, K, xtol=tol, maxiter=128)
    if not 0.0 < beta < math.pi / 3.0 + 1e-15:
        raise DomainError(f"root beta={beta!r} gives no hyperbolic radius")
    radius = CoshRadius(1.0 / (2.0 * math.sin(beta / 2.0)))
    rot, add = central_angles(sol, beta)
    partial = IncircleResult(beta, radius, rot, add)
    return IncircleResult(
        beta,
        radius,
        rot,
        add,
        polygon_area=polygon_area(sol, group, partial),
        circle_area=circle_area(radius),
    )


def optimal_radius_closed_form(g: GroupSpec | int) -> CoshRadius:
    """``cosh x = 1 / (2 sin(pi / (4l - 6)))``, the radius of the best census."""
    l = as_group(g).l
    return CoshRadius(1.0 / (2.0 * math.sin(math.pi / (4 * l - 6))))


def solve_all(
    g: GroupSpec | int, tol: float = DEFAULT_TOL, threads: int | None = None
) -> list[tuple[TreeTypeSolution, IncircleResult]]:
    """Solve every census of ``g``; output order is the canonical census order."""
    group = as_group(g)
    sols = enumerate_tree_types(group)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: solve_incircle(s, group, tol), sols))
    else:
        results = [solve_incircle(s, group, tol) for s in sols]
    return list(zip(sols, results))


def best_over_types(
    g: GroupSpec | int, tol: float = DEFAULT_TOL, threads: int | None = None
) -> tuple[TreeTypeSolution, IncircleResult]:
    """Census with the largest incircle; ties go to the earliest in canonical order."""
    best = None
    for sol, res in solve_all(g, tol, threads):
        if best is None or res.x > best[1].x:
            best = (sol, res)
    return best
