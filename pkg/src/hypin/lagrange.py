"""Constrained maximization of the incircle radius for the free-angle types.

For a census with additional points the corner angles at those points are
free, subject only to summing to ``2 pi`` around each point.  The variables are

    X = (alpha_1..alpha_k, beta_1..beta_k, theta)

where ``alpha`` are the free corner angles, ``beta`` their central angles and
``theta`` the central angle at a leaf (corner angle ``2 pi / 3``).  We maximize
``f(X) = 1 / (2 sin(theta / 2))`` (= cosh x) subject to

* ``g_i = cos(pi/3) sin(beta_i/2) - cos(alpha_i/2) sin(theta/2) = 0``,
* closure: ``sum beta_i + (#leaves) theta + (fixed corners) - 2 pi = 0``,
* one angle sum ``sum_{i in P} alpha_i - 2 pi = 0`` per additional point ``P``.

Fixed non-leaf rotational corners of angle ``phi`` enter the closure through
``2 arcsin(2 cos(phi/2) sin(theta/2))``.  Derivatives are central finite
differences.

Second-order test: with ``m`` constraints and ``n`` variables the bordered
Hessian ``[[0, J], [J^T, H_L]]`` is tested on its leading principal minors of
order ``m + p`` for ``p = m+1 .. n``.  A strict local maximum has
``sign = (-1)^p`` for each of them (the first, ``p = m + 1``, has sign
``(-1)^(m+1)``); a strict local minimum has every sign equal to ``(-1)^m``.
Constraint rows are normalized and variables reordered by pivoted QR of ``J``
so that the leading ``m`` columns of ``J`` are independent; neither changes
the signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.linalg import qr

from hypin.census import enumerate_tree_types
from hypin.errors import (
    DomainError,
    InconclusiveError,
    InvalidArgument,
    NonConvergence,
    SingularSystemError,
)
from hypin.hyptrig import CoshRadius, beta_of_alpha, safe_asin, solve_circumscribed_radius

LEAF_ANGLE = 2.0 * math.pi / 3.0
GRAD_STEP = 1e-6
HESS_STEP = 1e-4
HESS_CHECK_STEP = 1e-5
GRAD_TOL = 1e-8
RESIDUAL_TOL = 1e-10
MINOR_TOL = 1e-9
COND_LIMIT = 1e12
BOX_MARGIN = 1e-6

VERDICTS = ("local_max", "local_min", "saddle", "inconclusive")


@dataclass(frozen=True)
class ConfigurationVector:
    """A point of the free-angle formulation plus the layout that gives it meaning.

    ``groups`` lists, per additional point, the indices of its corners in
    ``alphas``.  ``fixed_corners`` holds ``(angle, multiplicity)`` for
    non-leaf rotational corners and ``leaf_count`` the number of leaf corners.
    """

    alphas: tuple[float, ...]
    betas: tuple[float, ...]
    theta: float
    groups: tuple[tuple[int, ...], ...]
    fixed_corners: tuple[tuple[float, int], ...] = ()
    leaf_count: int = 0

    def to_array(self) -> np.ndarray:
        return np.array(self.alphas + self.betas + (self.theta,), dtype=float)

    def with_array(self, X) -> ConfigurationVector:
        k = len(self.alphas)
        X = [float(v) for v in X]
        return replace(self, alphas=tuple(X[:k]), betas=tuple(X[k : 2 * k]), theta=X[2 * k])

    def corner_angles(self) -> list[float]:
        """Every vertex angle of the polygon (order is irrelevant for the radius)."""
        angles = list(self.alphas)
        for phi, mult in self.fixed_corners:
            angles += [phi] * mult
        return angles + [LEAF_ANGLE] * self.leaf_count

    def radius(self) -> CoshRadius:
        return CoshRadius(1.0 / (2.0 * math.sin(self.theta / 2.0)))

    def in_box(self) -> bool:
        X = self.to_array()
        return bool(np.all(X >= 0.0) and np.all(X <= math.pi))

    def group_sum_residual(self) -> float:
        return max(abs(sum(self.alphas[i] for i in grp) - 2.0 * math.pi) for grp in self.groups)


@dataclass(frozen=True)
class LagrangeSystem:
    type_id: int
    groups: tuple[tuple[int, ...], ...]
    fixed_corners: tuple[tuple[float, int], ...]
    leaf_count: int

    @property
    def n_free(self) -> int:
        return sum(len(g) for g in self.groups)

    @property
    def dim(self) -> int:
        return 2 * self.n_free + 1

    @property
    def n_constraints(self) -> int:
        return self.n_free + 1 + len(self.groups)

    def objective(self, X) -> float:
        return 1.0 / (2.0 * math.sin(X[-1] / 2.0))

    def constraints(self, X) -> np.ndarray:
        k = self.n_free
        alphas, betas, theta = X[:k], X[k : 2 * k], X[2 * k]
        s = math.sin(theta / 2.0)
        out = [0.5 * math.sin(b / 2.0) - math.cos(a / 2.0) * s for a, b in zip(alphas, betas)]
        closure = math.fsum(betas) + self.leaf_count * theta - 2.0 * math.pi
        for phi, mult in self.fixed_corners:
            closure += mult * 2.0 * safe_asin(2.0 * math.cos(phi / 2.0) * s)
        out.append(closure)
        for grp in self.groups:
            out.append(math.fsum(alphas[i] for i in grp) - 2.0 * math.pi)
        return np.array(out)

    @property
    def equality_constraints(self) -> list[Callable]:
        return [lambda X, idx=idx: self.constraints(X)[idx] for idx in range(self.n_constraints)]

    def lagrangian(self, X, multipliers) -> float:
        return self.objective(X) - float(np.dot(multipliers, self.constraints(X)))

    def configuration(self, X) -> ConfigurationVector:
        k = self.n_free
        return ConfigurationVector(
            tuple(float(v) for v in X[:k]),
            tuple(float(v) for v in X[k : 2 * k]),
            float(X[2 * k]),
            self.groups,
            self.fixed_corners,
            self.leaf_count,
        )

    def configuration_from_alphas(self, alphas, r: CoshRadius | None = None) -> ConfigurationVector:
        """Fill in central angles from the vertex-angle relation at radius ``r``.

        Without ``r`` the radius is solved from the full corner-angle list, so
        the result is feasible.
        """
        base = ConfigurationVector(
            tuple(float(a) for a in alphas), (), 0.0, self.groups, self.fixed_corners, self.leaf_count
        )
        if r is None:
            r = solve_circumscribed_radius(base.corner_angles())
        betas = tuple(beta_of_alpha(a, r) for a in base.alphas)
        return replace(base, betas=betas, theta=beta_of_alpha(LEAF_ANGLE, r))

    def regular_point(self) -> ConfigurationVector:
        """All corners of each additional point equal: the conjectured optimum."""
        alphas = [0.0] * self.n_free
        for grp in self.groups:
            for i in grp:
                alphas[i] = 2.0 * math.pi / len(grp)
        return self.configuration_from_alphas(alphas)


# l = 4 types with additional points; index of the census in canonical order
_L4_TYPES = {3: 2, 4: 3, 5: 4}


def build_system(type_id: int) -> LagrangeSystem:
    """Free-angle formulation of l = 4 type 3, 4 or 5."""
    if type_id not in _L4_TYPES:
        raise InvalidArgument(f"type_id must be 3, 4 or 5, got {type_id!r}")
    sol = enumerate_tree_types(4)[_L4_TYPES[type_id]]
    leaf_count = sol.A[0]
    fixed = tuple((2.0 * math.pi / (3 * i), i * a) for i, a in sol.rotational_items() if i > 1)
    if type_id == 5:
        # corners 1, 2, 6 at the first point and 3, 4, 5 at the second
        groups = ((0, 1, 5), (2, 3, 4))
    else:
        groups, start = [], 0
        for j, b in sol.additional_items():
            for _ in range(b):
                groups.append(tuple(range(start, start + j)))
                start += j
        groups = tuple(groups)
    return LagrangeSystem(type_id, groups, fixed, leaf_count)


def random_configuration(system: LagrangeSystem, rng: np.random.Generator, margin: float = 0.05):
    """Feasible configuration with random free angles in ``(margin, pi - margin)``."""
    alphas = [0.0] * system.n_free
    for grp in system.groups:
        while True:
            cand = rng.dirichlet(np.ones(len(grp))) * 2.0 * math.pi
            if np.all(cand > margin) and np.all(cand < math.pi - margin):
                break
        for i, a in zip(grp, cand):
            alphas[i] = float(a)
    return system.configuration_from_alphas(alphas)


def gradient(fun: Callable, X: np.ndarray, step: float = GRAD_STEP) -> np.ndarray:
    g = np.empty(len(X))
    for i in range(len(X)):
        e = np.zeros(len(X))
        e[i] = step
        g[i] = (fun(X + e) - fun(X - e)) / (2.0 * step)
    return g


def jacobian(fun: Callable, X: np.ndarray, step: float = GRAD_STEP) -> np.ndarray:
    cols = []
    for i in range(len(X)):
        e = np.zeros(len(X))
        e[i] = step
        cols.append((fun(X + e) - fun(X - e)) / (2.0 * step))
    return np.column_stack(cols)


def hessian(fun: Callable, X: np.ndarray, step: float = HESS_STEP) -> np.ndarray:
    n = len(X)
    H = np.empty((n, n))
    f0 = fun(X)
    eye = np.eye(n) * step
    for i in range(n):
        H[i, i] = (fun(X + eye[i]) - 2.0 * f0 + fun(X - eye[i])) / step**2
        for j in range(i + 1, n):
            v = (
                fun(X + eye[i] + eye[j])
                - fun(X + eye[i] - eye[j])
                - fun(X - eye[i] + eye[j])
                + fun(X - eye[i] - eye[j])
            ) / (4.0 * step**2)
            H[i, j] = H[j, i] = v
    return H


def projected_gradient_norm(system: LagrangeSystem, X: np.ndarray) -> float:
    """Norm of the objective gradient projected onto the constraint tangent space."""
    J = jacobian(system.constraints, X)
    g = gradient(system.objective, X)
    coef, *_ = np.linalg.lstsq(J.T, g, rcond=None)
    return float(np.linalg.norm(g - J.T @ coef))


@dataclass(frozen=True)
class StationaryReport:
    point: ConfigurationVector
    multipliers: tuple[float, ...]
    lagrangian_gradient_norm: float
    constraint_residual_norm: float
    projected_gradient_norm: float
    objective: float
    iterations: int
    clamped: bool = False
    verdict: str | None = None
    minors: tuple[float, ...] = ()

    @property
    def x(self) -> float:
        return math.acosh(self.objective)


def _kkt_state(system: LagrangeSystem, X: np.ndarray, lam: np.ndarray):
    J = jacobian(system.constraints, X)
    grad_L = gradient(system.objective, X) - J.T @ lam
    return J, grad_L, system.constraints(X)


def find_stationary(
    system: LagrangeSystem,
    initial: ConfigurationVector,
    max_iter: int = 100,
    grad_tol: float = GRAD_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> StationaryReport:
    """Newton iteration on the KKT system ``grad f - J^T lam = 0, c = 0``.

    Iterates are clipped to the box ``[0, pi]^n``.  Stops once the Lagrangian
    gradient and constraint residual are below tolerance and the Newton step
    has stalled at roundoff level.
    """
    X = initial.to_array()
    if len(X) != system.dim:
        raise InvalidArgument("initial point has the wrong dimension for this system")
    if np.any(X < 0.0) or np.any(X > math.pi):
        raise InvalidArgument("initial point lies outside [0, pi]^n")
    J = jacobian(system.constraints, X)
    lam, *_ = np.linalg.lstsq(J.T, gradient(system.objective, X), rcond=None)
    clamped = False
    n, m = system.dim, system.n_constraints
    for it in range(1, max_iter + 1):
        J, grad_L, c = _kkt_state(system, X, lam)
        H = hessian(lambda Y: system.lagrangian(Y, lam), X)
        K = np.block([[H, -J.T], [J, np.zeros((m, m))]])
        if np.linalg.cond(K) > COND_LIMIT:
            raise SingularSystemError("KKT matrix is numerically singular")
        step = np.linalg.solve(K, -np.concatenate([grad_L, c]))
        X_new = X + step[:n]
        clipped = np.clip(X_new, 0.0, math.pi)
        clamped = bool(np.any(clipped != X_new))
        X, lam = clipped, lam + step[n:]
        try:
            J, grad_L, c = _kkt_state(system, X, lam)
        except DomainError:
            continue
        g_norm, c_norm = float(np.linalg.norm(grad_L)), float(np.linalg.norm(c))
        if g_norm < grad_tol and c_norm < residual_tol and np.linalg.norm(step) < 1e-9:
            return StationaryReport(
                system.configuration(X),
                tuple(float(v) for v in lam),
                g_norm,
                c_norm,
                projected_gradient_norm(system, X),
                system.objective(X),
                it,
                clamped=clamped or bool(np.any(X < BOX_MARGIN) or np.any(X > math.pi - BOX_MARGIN)),
            )
    raise NonConvergence(f"KKT Newton did not converge in {max_iter} iterations")


def _bordered_minors(J: np.ndarray, H: np.ndarray) -> list[float]:
    m, n = J.shape
    Jn = J / np.linalg.norm(J, axis=1, keepdims=True)
    _, _, piv = qr(Jn, pivoting=True)
    order = list(piv[:m]) + sorted(piv[m:])
    Jp = Jn[:, order]
    Hp = H[np.ix_(order, order)]
    B = np.block([[np.zeros((m, m)), Jp], [Jp.T, Hp]])
    return [float(np.linalg.det(B[: m + p, : m + p])) for p in range(m + 1, n + 1)]


def classify_minors(minors: list[float], m: int) -> str:
    if any(abs(d) < MINOR_TOL for d in minors):
        raise InconclusiveError("a bordered minor is numerically zero")
    signs = [np.sign(d) for d in minors]
    ps = range(m + 1, m + 1 + len(minors))
    if all(s == (-1) ** p for s, p in zip(signs, ps)):
        return "local_max"
    if all(s == (-1) ** m for s in signs):
        return "local_min"
    return "saddle"


def bordered_hessian_check(system: LagrangeSystem, report: StationaryReport) -> StationaryReport:
    """Classify a stationary point by the bordered-determinant criterion."""
    if not report.lagrangian_gradient_norm < GRAD_TOL:
        raise InvalidArgument(
            f"point is not stationary (gradient norm {report.lagrangian_gradient_norm:.3e})"
        )
    if report.clamped:
        return replace(report, verdict="inconclusive")
    X = report.point.to_array()
    lam = np.array(report.multipliers)
    L = lambda Y: system.lagrangian(Y, lam)  # noqa: E731
    H = hessian(L, X, HESS_STEP)
    H_check = hessian(L, X, HESS_CHECK_STEP)
    scale = max(float(np.max(np.abs(H))), 1e-12)
    if float(np.max(np.abs(H - H_check))) > 1e-3 * scale:
        return replace(report, verdict="inconclusive")
    J = jacobian(system.constraints, X)
    minors = _bordered_minors(J, H)
    try:
        verdict = classify_minors(minors, system.n_constraints)
    except InconclusiveError:
        verdict = "inconclusive"
    return replace(report, verdict=verdict, minors=tuple(minors))


def equalize_pair(config: ConfigurationVector, i: int, j: int) -> tuple[ConfigurationVector, CoshRadius]:
    """Replace corners ``i`` and ``j`` of one additional point by their mean and re-solve."""
    if not any(i in grp and j in grp for grp in config.groups):
        raise InvalidArgument(f"corners {i} and {j} do not belong to the same additional point")
    alphas = list(config.alphas)
    alphas[i] = alphas[j] = 0.5 * (alphas[i] + alphas[j])
    probe = replace(config, alphas=tuple(alphas))
    r = solve_circumscribed_radius(probe.corner_angles())
    new = replace(
        probe,
        betas=tuple(beta_of_alpha(a, r) for a in alphas),
        theta=beta_of_alpha(LEAF_ANGLE, r),
    )
    return new, r


def equalize_all(config: ConfigurationVector, sweeps: int = 60) -> tuple[ConfigurationVector, CoshRadius]:
    """Cycle pairwise equalization over every additional point until angles settle."""
    r = config.radius()
    for _ in range(sweeps):
        for grp in config.groups:
            for a, b in zip(grp, grp[1:] + grp[:1]):
                config, r = equalize_pair(config, a, b)
    return config, r


def perturbed_start(system: LagrangeSystem, rng: np.random.Generator, jitter: float = 0.05):
    """Regular point with each free angle jittered; central angles recomputed at the old radius."""
    reg = system.regular_point()
    alphas = [a + rng.uniform(-jitter, jitter) for a in reg.alphas]
    return system.configuration_from_alphas(alphas, reg.radius())


def multi_start(system: LagrangeSystem, seed: int, starts: int = 8) -> list[StationaryReport | Exception]:
    """Regular point plus ``starts - 1`` jittered starts, each Newton-solved and classified.

    Returns per-start outcomes in start order (exceptions for failed starts).
    """
    rng = np.random.default_rng(seed)
    inits = [system.regular_point()] + [perturbed_start(system, rng) for _ in range(starts - 1)]
    out: list[StationaryReport | Exception] = []
    for init in inits:
        try:
            rep = find_stationary(system, init)
            out.append(bordered_hessian_check(system, rep))
        except (NonConvergence, SingularSystemError, DomainError) as exc:
            out.append(exc)
    return out


def best_report(outcomes) -> StationaryReport | None:
    """Largest objective among converged starts; ties broken by lexicographic point."""
    reports = [o for o in outcomes if isinstance(o, StationaryReport)]
    if not reports:
        return None
    return min(reports, key=lambda r: (-round(r.objective, 10), tuple(r.point.to_array())))
