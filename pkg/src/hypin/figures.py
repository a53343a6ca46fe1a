"""Matplotlib report figures written next to the CSV/JSON outputs."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from hypin import render  # noqa: E402

REPORT_RC = {
    "font.family": "serif",
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "svg.hashsalt": "hypin",
}


def figsize(scale: float = 1.0) -> tuple[float, float]:
    width = 6.0 * scale
    return width, width * (math.sqrt(5.0) - 1.0) / 2.0


def _save(fig, path: Path) -> Path:
    path = Path(path)
    # no creation date, so identical inputs give identical files
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else {"Date": None})
    plt.close(fig)
    return path


def plot_census_radii(labels, radii, closed_form_x: float, path, l: int | None = None) -> Path:
    """Bar chart of the incircle radius per census with the closed-form optimum."""
    with plt.rc_context(REPORT_RC):
        fig, ax = plt.subplots(figsize=figsize(max(1.0, 0.12 * len(labels))))
        idx = np.arange(len(radii))
        best = int(np.argmax(radii))
        colors = ["#1f4e9c"] * len(radii)
        colors[best] = "#c0392b"
        ax.bar(idx, radii, color=colors)
        ax.axhline(closed_form_x, color="k", lw=0.8, ls="--", label="closed-form optimum")
        ax.set_xticks(idx)
        ax.set_xticklabels(labels, rotation=60 if len(labels) > 6 else 0, ha="right" if len(labels) > 6 else "center")
        ax.set_ylabel("incircle radius x")
        lo = min(radii)
        ax.set_ylim(lo - 0.1 * (closed_form_x - lo + 0.05), closed_form_x + 0.05)
        if l is not None:
            ax.set_title(f"[3,...,3] with l = {l}")
        ax.legend(loc="lower right")
        fig.tight_layout()
        return _save(fig, path)


def plot_bound_margins(rows, path) -> Path:
    """Margins of the secant upper bounds; ``rows`` are ``(l, kind, k, margin)``."""
    with plt.rc_context(REPORT_RC):
        fig, ax = plt.subplots(figsize=figsize())
        for kind, marker in (("rotational", "o"), ("additional", "s")):
            pts = [(l + 0.15 * (kind == "additional"), m) for l, kd, _, m in rows if kd == kind]
            if pts:
                xs, ys = zip(*pts)
                ax.scatter(xs, ys, s=10, marker=marker, label=kind)
        ax.set_yscale("log")
        ax.set_xticks(sorted({r[0] for r in rows}))
        ax.set_xlabel("l")
        ax.set_ylabel("bound margin")
        ax.legend()
        fig.tight_layout()
        return _save(fig, path)


def plot_layout(layout: render.PolygonLayout, path) -> Path:
    """Raster drawing of a Poincare-disk layout (same content as the SVG)."""
    with plt.rc_context(REPORT_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        t = np.linspace(0.0, 2.0 * math.pi, 400)
        ax.plot(np.cos(t), np.sin(t), color="#444444", lw=0.8)
        rho = layout.incircle_euclidean_radius
        ax.plot(rho * np.cos(t), rho * np.sin(t), color="#c0392b", lw=1.0)
        vs = layout.vertices
        for k in range(len(vs)):
            p, q = np.array(vs[k]), np.array(vs[(k + 1) % len(vs)])
            circ = render.geodesic_circle(p, q)
            if circ is None:
                seg = np.array([p, q])
            else:
                c, r = circ
                a0 = math.atan2(*(p - c)[::-1])
                a1 = math.atan2(*(q - c)[::-1])
                da = (a1 - a0 + math.pi) % (2.0 * math.pi) - math.pi
                ang = a0 + np.linspace(0.0, da, 60)
                seg = np.column_stack([c[0] + r * np.cos(ang), c[1] + r * np.sin(ang)])
            ax.plot(seg[:, 0], seg[:, 1], color="#1f4e9c", lw=1.5)
        ax.scatter(*zip(*vs), s=12, color="#1f4e9c", zorder=3)
        ax.scatter(*zip(*layout.tangency_points), s=8, color="#c0392b", zorder=3)
        for label, v in zip(layout.labels, vs):
            norm = math.hypot(*v) or 1.0
            ax.annotate(label, (v[0] * (1 + 0.12 / norm), v[1] * (1 + 0.12 / norm)), ha="center", va="center", fontsize=8)
        ax.set_aspect("equal")
        ax.set_axis_off()
        fig.tight_layout()
        return _save(fig, path)
