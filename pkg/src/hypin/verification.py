"""Numerical property checks aggregated by ``hypin verify``.

Each check returns a :class:`CheckResult` with the sample count and the worst
observed margin (positive means satisfied, in the units of the check).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from hypin import hyptrig, lagrange
from hypin.census import TreeTypeSolution, enumerate_tree_types, side_bounds
from hypin.hyptrig import CoshRadius
from hypin.incircle import (
    beta_upper_limit,
    closure_residual,
    h_eval,
    optimal_radius_closed_form,
    solve_all,
)

REFERENCE_RADII_L4 = (0.962423, 0.927539, 1.031718, 1.011595, 1.061275)
REFERENCE_TOL = 5e-6
REGULAR_X = 1.061275061
REGULAR_AREA = 3.883222071
# incircle area over 4 pi / 3 for the regular l = 4 census: 3 (phi - 1) / 2
REGULAR_DENSITY = 1.5 * ((1.0 + math.sqrt(5.0)) / 2.0 - 1.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int
    worst_margin: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "detail": self.detail,
        }


def multiset_censuses(l: int) -> set[tuple]:
    """Brute-force census set: every multiset of degrees, filtered by the handshake identity."""
    found = set()
    for rot in itertools.combinations_with_replacement(range(1, l), l):
        for w in range(0, l - 1):
            for add in itertools.combinations_with_replacement(range(3, l + 1), w):
                if sum(rot) + sum(add) == 2 * (l + w - 1):
                    A = tuple(rot.count(i) for i in range(1, l))
                    B = tuple(add.count(j) for j in range(3, l + 1))
                    found.add((A, B))
    return found


def _result(name, margins, detail="") -> CheckResult:
    # margins are "tolerance - error" (or a slack); the check passes iff all are > 0
    worst = min(margins) if margins else math.inf
    return CheckResult(name, bool(worst > 0.0), len(margins), float(worst), detail)


def check_reference_radii() -> CheckResult:
    rows = solve_all(4)
    margins = [REFERENCE_TOL - abs(res.x - ref) for (_, res), ref in zip(rows, REFERENCE_RADII_L4)]
    return _result("reference_radii_l4", margins, "l=4 radii vs six-decimal reference values, tol 5e-6")


def check_regular_constants() -> CheckResult:
    sol, res = solve_all(4)[-1]
    margins = [
        1e-8 - abs(res.x - REGULAR_X),
        1e-8 - abs(res.circle_area - REGULAR_AREA),
        1e-12 - abs(res.density - REGULAR_DENSITY),
    ]
    return _result("regular_constants", margins, f"x={res.x:.12g} area={res.circle_area:.12g} d={res.density:.12g}")


def check_best_census(l_max: int) -> CheckResult:
    margins = []
    for l in range(4, l_max + 1):
        rows = solve_all(l)
        sol, res = max(rows, key=lambda sr: sr[1].x)
        expected = TreeTypeSolution.from_counts(l, {1: l}, {3: l - 2})
        gap = abs(res.x - optimal_radius_closed_form(l).x)
        margins.append((1e-10 - gap) if sol == expected else -1.0)
    return _result("best_census_closed_form", margins, "max radius equals arccosh(1/(2 sin(pi/(4l-6))))")


def check_enumeration(l_max: int) -> CheckResult:
    margins = []
    for l in range(4, min(l_max, 8) + 1):
        got = {(s.A, s.B) for s in enumerate_tree_types(l)}
        margins.append(1.0 if got == multiset_censuses(l) else -1.0)
    return _result("enumeration_oracle", margins, "set equality with multiset brute force")


def check_side_bounds(l_max: int) -> CheckResult:
    margins = []
    for l in range(4, l_max + 1):
        ns = [s.n for s in enumerate_tree_types(l)]
        b = side_bounds(l)
        margins.append(1.0 if (min(ns), max(ns)) == (b.n_min, b.n_max) else -1.0)
    return _result("side_bounds", margins, "min/max n equal (2l-2, 4l-6)")


def check_area_constancy(l_max: int) -> CheckResult:
    margins = []
    for l in range(4, l_max + 1):
        target = (4.0 * l / 3.0 - 4.0) * math.pi
        margins += [1e-9 - abs(res.polygon_area - target) for _, res in solve_all(l)]
    return _result("area_constancy", margins, "polygon area (4l/3 - 4) pi for every census")


def check_closure(l_max: int) -> CheckResult:
    margins = []
    for l in range(4, l_max + 1):
        margins += [1e-10 - abs(closure_residual(s, r)) for s, r in solve_all(l)]
    return _result("central_angle_closure", margins, "central angles sum to 2 pi")


def check_h_monotone(l_max: int, points: int = 200) -> CheckResult:
    margins = []
    for l in range(4, min(l_max, 8) + 1):
        K = beta_upper_limit(l).K_l
        grid = np.linspace(0.0, K, points)
        for s in enumerate_tree_types(l):
            vals = [h_eval(s, l, b) for b in grid]
            margins.append(min(np.diff(vals)))
            margins.append(vals[-1] + 1e-12)
    return _result("h_monotone", margins, "h strictly increasing with h(K_l) >= 0")


def check_concavity(n: int = 100) -> CheckResult:
    margins = []
    for c in np.linspace(1.05, 10.0, n):
        r = CoshRadius(float(c))
        for a in np.linspace(0.01, math.pi - 0.01, n):
            margins.append(-hyptrig.d2beta_dalpha2(float(a), r))
    return _result("beta_concavity", margins, "second derivative of beta(alpha) negative")


def check_equalization(samples: int = 500, seed: int = 0) -> CheckResult:
    system = lagrange.build_system(5)
    rng = np.random.default_rng(seed)
    margins = []
    for _ in range(samples):
        cfg = lagrange.random_configuration(system, rng)
        grp = system.groups[int(rng.integers(len(system.groups)))]
        i, j = (int(v) for v in rng.choice(grp, size=2, replace=False))
        before = hyptrig.solve_circumscribed_radius(cfg.corner_angles()).x
        _, r = lagrange.equalize_pair(cfg, i, j)
        margins.append(r.x - before)
    return _result("pair_equalization", margins, "equalizing a pair increases x")


def check_secant_bounds(l_max: int) -> CheckResult:
    margins = []
    for l in range(5, l_max + 1):
        margins += [hyptrig.jensen_upper_bound_margin(l, i, "rotational") for i in range(1, l)]
        margins += [hyptrig.jensen_upper_bound_margin(l, j, "additional") for j in range(3, l + 1)]
    return _result("secant_bound_margins", margins, "secant upper bounds strict")


def check_circumscribed(samples: int = 100, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    margins = []
    while len(margins) < samples:
        m = int(rng.integers(3, 13))
        angles = rng.uniform(0.05, math.pi - 0.05, size=m)
        if angles.sum() >= (m - 2) * math.pi:
            continue
        r = hyptrig.solve_circumscribed_radius(angles)
        total = math.fsum(hyptrig.beta_of_alpha(a, r) for a in angles)
        margins.append(1e-11 - abs(total - 2.0 * math.pi))
    return _result("circumscribed_solver", margins, "central angles close to 2 pi")


def check_lagrange() -> CheckResult:
    rows = solve_all(4)
    margins = []
    for type_id in (3, 4, 5):
        system = lagrange.build_system(type_id)
        rep = lagrange.bordered_hessian_check(
            system, lagrange.find_stationary(system, system.regular_point())
        )
        cosh_ref = rows[type_id - 1][1].cosh_x
        ok = rep.verdict == "local_max" and rep.projected_gradient_norm < 1e-8
        margins.append((1e-6 - abs(rep.objective - math.cosh(REFERENCE_RADII_L4[type_id - 1]))) if ok else -1.0)
        margins.append(1e-9 - abs(rep.objective - cosh_ref))
    return _result("lagrange_regular_points", margins, "local max matching incircle solver")


def all_checks(l_max: int) -> list[tuple[str, Callable[[], CheckResult]]]:
    checks = [
        ("reference_radii_l4", check_reference_radii),
        ("regular_constants", check_regular_constants),
        ("best_census_closed_form", lambda: check_best_census(l_max)),
        ("enumeration_oracle", lambda: check_enumeration(l_max)),
        ("side_bounds", lambda: check_side_bounds(l_max)),
        ("area_constancy", lambda: check_area_constancy(l_max)),
        ("central_angle_closure", lambda: check_closure(l_max)),
        ("h_monotone", lambda: check_h_monotone(l_max)),
        ("beta_concavity", check_concavity),
        ("pair_equalization", check_equalization),
        ("circumscribed_solver", check_circumscribed),
        ("lagrange_regular_points", check_lagrange),
    ]
    if l_max >= 5:
        checks.append(("secant_bound_margins", lambda: check_secant_bounds(l_max)))
    return checks


def run_checks(l_max: int, faults: frozenset[str] = frozenset()) -> list[CheckResult]:
    """Run every check for ``l = 4 .. l_max``.

    ``faults`` names checks whose verdict is inverted; used to exercise the
    failure path of the harness.
    """
    results = []
    for name, fn in all_checks(l_max):
        res = fn()
        if name in faults:
            res.passed = not res.passed
            res.detail += " [fault injected]"
        results.append(res)
    return results
