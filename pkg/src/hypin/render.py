"""Poincare-disk layout and SVG drawing of a solved fundamental polygon.

The incircle center sits at the origin.  Vertex ``k`` has angle ``alpha_k``
and central angle ``beta_k``; the two tangency points next to it are at polar
angles ``s_{k-1}`` and ``s_k`` with ``s_k = beta_0 + ... + beta_k``, and the
vertex itself on the bisector, at polar angle ``s_{k-1} + beta_k / 2``.

The right triangle (center, vertex, tangency point) has angles ``beta/2`` at
the center and ``alpha/2`` at the vertex, so its hypotenuse ``d`` satisfies
``cosh d = cot(alpha/2) cot(beta/2)`` and its leg ``x`` (the inradius) obeys
``tanh x = tanh d cos(beta/2)``.  A point at hyperbolic distance ``d`` from the
origin lies at Euclidean radius ``tanh(d/2)``: the disk metric
``2|dz| / (1 - |z|^2)`` integrates along a ray to ``2 artanh(r)``.

Geodesics are arcs of circles orthogonal to the unit circle.  For two disk
points ``p, q`` the center ``c`` of that circle solves
``c.p = (|p|^2 + 1)/2``, ``c.q = (|q|^2 + 1)/2`` (the circle also passes
through the inverses ``p/|p|^2``, ``q/|q|^2``), with radius ``sqrt(|c|^2 - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from hypin.census import TreeTypeSolution
from hypin.errors import DomainError
from hypin.incircle import IncircleResult, additional_corner_angle, rotational_corner_angle
from hypin.hyptrig import safe_acosh

# circle radius beyond which a side is drawn as a straight segment
STRAIGHT_RADIUS = 1e6


@dataclass(frozen=True)
class Corner:
    label: str
    kind: str  # "rotational" or "additional"
    degree: int

    @property
    def alpha(self) -> float:
        if self.kind == "rotational":
            return rotational_corner_angle(self.degree)
        return additional_corner_angle(self.degree)


@dataclass(frozen=True)
class PolygonLayout:
    vertices: tuple[tuple[float, float], ...]
    tangency_points: tuple[tuple[float, float], ...]
    incircle_euclidean_radius: float
    angle_sequence: tuple[tuple[float, float], ...]
    x: float
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class RenderOptions:
    """Drawing parameters; the unit disk maps to a circle of ``disk_radius`` px."""

    size: int = 1000
    disk_radius: float = 480.0
    boundary_stroke: str = "#444444"
    side_stroke: str = "#1f4e9c"
    side_width: float = 2.5
    incircle_stroke: str = "#c0392b"
    incircle_width: float = 2.0
    vertex_fill: str = "#1f4e9c"
    tangency_fill: str = "#c0392b"
    labels: bool = True
    font_size: int = 18
    title: str | None = None


def vertex_distance(alpha: float, beta: float) -> float:
    """Hyperbolic distance from the incenter to a vertex with angles (alpha, beta)."""
    if not (alpha > 0.0 and beta > 0.0 and alpha / 2.0 + beta / 2.0 < math.pi / 2.0):
        raise DomainError(f"alpha={alpha!r}, beta={beta!r} give no hyperbolic right triangle")
    prod = 1.0 / (math.tan(alpha / 2.0) * math.tan(beta / 2.0))
    if prod <= 1.0:
        raise DomainError(f"cot product {prod!r} <= 1")
    return safe_acosh(prod)


def inradius_from_vertex(d: float, beta: float) -> float:
    """Leg adjacent to the center angle beta/2 in the right triangle with hypotenuse d."""
    return math.atanh(math.tanh(d) * math.cos(beta / 2.0))


def caterpillar_walk(sol: TreeTypeSolution) -> list[Corner]:
    """Corners of the polygon in boundary-walk order of a canonical tree.

    The tree is a caterpillar: internal vertices (rotational centers of degree
    >= 2 by increasing degree, then additional points by increasing degree)
    form a path and the leaves hang off it.  Each internal vertex keeps its
    neighbours in the cyclic order (previous spine vertex, own leaves, next
    spine vertex).  Walking around the tree and recording every vertex we
    arrive at yields ``n`` corners; leaves are numbered R1, R2, ... in order of
    appearance, internal centers after them, additional points P1, P2, ...
    """
    internal = [("rotational", i) for i, a in sol.rotational_items() if i > 1 for _ in range(a)]
    internal += [("additional", j) for j, b in sol.additional_items() for _ in range(b)]
    n_leaves = sol.A[0]
    spine = list(range(len(internal)))
    nbrs: dict[int, list[int]] = {}
    leaf_ids = iter(range(len(internal), len(internal) + n_leaves))
    for pos, v in enumerate(spine):
        kind, deg = internal[v]
        prev = [spine[pos - 1]] if pos > 0 else []
        nxt = [spine[pos + 1]] if pos + 1 < len(spine) else []
        leaves = [next(leaf_ids) for _ in range(deg - len(prev) - len(nxt))]
        nbrs[v] = prev + leaves + nxt
        for leaf in leaves:
            nbrs[leaf] = [v]

    def rot_next(v: int, u: int) -> int:
        ring = nbrs[v]
        return ring[(ring.index(u) + 1) % len(ring)]

    start = (spine[0], nbrs[spine[0]][0])
    u, v = start
    order: list[int] = []
    while True:
        order.append(v)
        u, v = v, rot_next(v, u)
        if (u, v) == start:
            break

    names: dict[int, str] = {}
    r_count = p_count = 0
    for v in order:
        if v >= len(internal) and v not in names:
            r_count += 1
            names[v] = f"R{r_count}"
    for v in spine:
        if internal[v][0] == "rotational":
            r_count += 1
            names[v] = f"R{r_count}"
        else:
            p_count += 1
            names[v] = f"P{p_count}"
    corners = []
    for v in order:
        if v >= len(internal):
            corners.append(Corner(names[v], "rotational", 1))
        else:
            kind, deg = internal[v]
            corners.append(Corner(names[v], kind, deg))
    return corners


def layout_from_sequence(
    angles: list[tuple[float, float]], x: float, labels: list[str] | None = None
) -> PolygonLayout:
    """Place vertices and tangency points for ``(alpha, beta)`` pairs in cyclic order."""
    verts, tangs = [], []
    s = 0.0
    for alpha, beta in angles:
        phi = s + beta / 2.0
        rho = math.tanh(vertex_distance(alpha, beta) / 2.0)
        verts.append((rho * math.cos(phi), rho * math.sin(phi)))
        s += beta
        tangs.append((math.tanh(x / 2.0) * math.cos(s), math.tanh(x / 2.0) * math.sin(s)))
    return PolygonLayout(
        tuple(verts),
        tuple(tangs),
        math.tanh(x / 2.0),
        tuple((float(a), float(b)) for a, b in angles),
        x,
        tuple(labels or ()),
    )


def layout_polygon(sol: TreeTypeSolution, res: IncircleResult, rotate: int = 0) -> PolygonLayout:
    """Lay out the census polygon; ``rotate`` cyclically shifts the corner sequence."""
    corners = caterpillar_walk(sol)
    corners = corners[rotate:] + corners[:rotate]
    pairs = []
    for c in corners:
        beta = res.rotational_angles[c.degree] if c.kind == "rotational" else res.additional_angles[c.degree]
        pairs.append((c.alpha, beta))
    return layout_from_sequence(pairs, res.x, [c.label for c in corners])


def geodesic_circle(p, q) -> tuple[np.ndarray, float] | None:
    """Center and radius of the geodesic through ``p`` and ``q``; None for a diameter."""
    p, q = np.asarray(p, float), np.asarray(q, float)
    M = np.array([p, q])
    if abs(np.linalg.det(M)) < 1e-14:
        return None
    rhs = 0.5 * np.array([p @ p + 1.0, q @ q + 1.0])
    c = np.linalg.solve(M, rhs)
    r = math.sqrt(c @ c - 1.0)
    if r > STRAIGHT_RADIUS:
        return None
    return c, r


def geodesic_distance_from_origin(p, q) -> float:
    """Hyperbolic distance from the origin to the full geodesic through ``p``, ``q``."""
    circ = geodesic_circle(p, q)
    if circ is None:
        return 0.0
    c, r = circ
    return 2.0 * math.atanh(float(np.linalg.norm(c)) - r)


def _tangent_toward(v, target, circ) -> np.ndarray:
    v, target = np.asarray(v, float), np.asarray(target, float)
    chord = target - v
    if circ is None:
        t = chord
    else:
        rad = v - circ[0]
        t = np.array([-rad[1], rad[0]])
        if t @ chord < 0:
            t = -t
    return t / np.linalg.norm(t)


def vertex_angles(layout: PolygonLayout) -> list[float]:
    """Interior angle at each vertex, measured between the tangents of its two sides."""
    vs = layout.vertices
    n = len(vs)
    out = []
    for k in range(n):
        prev, v, nxt = vs[k - 1], vs[k], vs[(k + 1) % n]
        t1 = _tangent_toward(v, prev, geodesic_circle(prev, v))
        t2 = _tangent_toward(v, nxt, geodesic_circle(v, nxt))
        out.append(math.acos(max(-1.0, min(1.0, float(t1 @ t2)))))
    return out


def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def render_svg(layout: PolygonLayout, opts: RenderOptions | None = None) -> bytes:
    """SVG 1.1 drawing of the polygon, its incircle and tangency points."""
    opts = opts or RenderOptions()
    C, R = opts.size / 2.0, opts.disk_radius

    def to_px(pt) -> tuple[float, float]:
        return C + R * pt[0], C - R * pt[1]

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.size}" '
        f'height="{opts.size}" viewBox="0 0 {opts.size} {opts.size}">',
    ]
    if opts.title:
        lines.append(f"  <title>{opts.title}</title>")
    lines.append(
        f'  <circle class="boundary" cx="{_fmt(C)}" cy="{_fmt(C)}" r="{_fmt(R)}" '
        f'fill="none" stroke="{opts.boundary_stroke}" stroke-width="1.5"/>'
    )
    lines.append(
        f'  <circle class="incircle" cx="{_fmt(C)}" cy="{_fmt(C)}" '
        f'r="{_fmt(R * layout.incircle_euclidean_radius)}" fill="none" '
        f'stroke="{opts.incircle_stroke}" stroke-width="{opts.incircle_width}"/>'
    )
    vs = layout.vertices
    for k in range(len(vs)):
        p, q = vs[k], vs[(k + 1) % len(vs)]
        (px, py), (qx, qy) = to_px(p), to_px(q)
        circ = geodesic_circle(p, q)
        if circ is None:
            d = f"M {_fmt(px)} {_fmt(py)} L {_fmt(qx)} {_fmt(qy)}"
        else:
            cx, cy = to_px(circ[0])
            cross = (px - cx) * (qy - cy) - (py - cy) * (qx - cx)
            sweep = 1 if cross > 0 else 0
            rr = _fmt(R * circ[1])
            d = f"M {_fmt(px)} {_fmt(py)} A {rr} {rr} 0 0 {sweep} {_fmt(qx)} {_fmt(qy)}"
        lines.append(
            f'  <path class="side" d="{d}" fill="none" stroke="{opts.side_stroke}" '
            f'stroke-width="{opts.side_width}"/>'
        )
    for t in layout.tangency_points:
        tx, ty = to_px(t)
        lines.append(f'  <circle class="tangency" cx="{_fmt(tx)}" cy="{_fmt(ty)}" r="4" fill="{opts.tangency_fill}"/>')
    lines.append(f'  <circle class="center" cx="{_fmt(C)}" cy="{_fmt(C)}" r="3" fill="{opts.incircle_stroke}"/>')
    for k, v in enumerate(vs):
        vx, vy = to_px(v)
        lines.append(f'  <circle class="vertex" cx="{_fmt(vx)}" cy="{_fmt(vy)}" r="5" fill="{opts.vertex_fill}"/>')
        if opts.labels:
            label = layout.labels[k] if k < len(layout.labels) else str(k + 1)
            norm = math.hypot(*v) or 1.0
            lx, ly = to_px((v[0] + 0.05 * v[0] / norm, v[1] + 0.05 * v[1] / norm))
            lines.append(
                f'  <text class="label" x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="{opts.font_size}" '
                f'font-family="sans-serif" text-anchor="middle" dominant-baseline="middle">{label}</text>'
            )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
