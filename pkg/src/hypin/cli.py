"""Command-line interface: ``hypin {enumerate,solve,verify,render,optimize}``.

Exit codes: 0 success, 2 usage or precondition error, 3 solver failure,
4 verification failure, 5 optimizer failure.

Defaults can be overridden by the environment (``HYPIN_TOL``,
``HYPIN_THREADS``); explicit flags win over both.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from hypin import __version__, lagrange
from hypin.census import GroupSpec, enumerate_tree_types, side_bounds
from hypin.errors import DomainError, InvalidArgument, InvalidL, NoRootError
from hypin.incircle import DEFAULT_TOL, optimal_radius_closed_form, solve_all

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY, EXIT_OPTIMIZER = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def num(v: float) -> float:
    """Round to 12 significant digits for stable serialization."""
    return float(f"{v:.12g}")


def _dump_json(obj) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _dump_csv(header, rows) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf)
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue().encode("utf-8")


def _write(path: Path, data: bytes, written: list[Path]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    written.append(path)
    return path


def sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(path: Path, argv: list[str], params: dict, files: list[Path]) -> Path:
    manifest = {
        "tool": "hypin",
        "version": __version__,
        "command": ["hypin", *argv],
        "parameters": params,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "files": [
            {"path": f.name, "sha256": sha256(f), "bytes": f.stat().st_size} for f in files
        ],
    }
    path.write_bytes(_dump_json(manifest))
    return path


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not a number")


def _env_int(name: str, default: int | None) -> int | None:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer")


def _group(l: int) -> GroupSpec:
    try:
        return GroupSpec(l)
    except InvalidL as exc:
        raise UsageError(str(exc))


def census_record(index: int, sol) -> dict:
    return {
        "type": index,
        "w": sol.w,
        "n": sol.n,
        "census": sol.label(),
        "A": {str(i): a for i, a in enumerate(sol.A, start=1)},
        "B": {str(j): b for j, b in enumerate(sol.B, start=3)},
    }


def cmd_enumerate(args, argv) -> int:
    g = _group(args.l)
    sols = enumerate_tree_types(g)
    out_dir = Path(args.out_dir)
    written: list[Path] = []
    stem = f"enumerate_l{g.l}"
    if args.format == "csv":
        header = ["type", "w"] + [f"A{i}" for i in range(1, g.l)] + [f"B{j}" for j in range(3, g.l + 1)] + ["n"]
        rows = [[k, s.w, *s.A, *s.B, s.n] for k, s in enumerate(sols, start=1)]
        _write(out_dir / f"{stem}.csv", _dump_csv(header, rows), written)
    else:
        b = side_bounds(g)
        doc = {
            "l": g.l,
            "count": len(sols),
            "side_bounds": {"n_min": b.n_min, "n_max": b.n_max},
            "censuses": [census_record(k, s) for k, s in enumerate(sols, start=1)],
        }
        _write(out_dir / f"{stem}.json", _dump_json(doc), written)
    write_manifest(out_dir / f"{stem}.manifest.json", argv, {"l": g.l, "format": args.format}, written)
    print(f"{len(sols)} censuses for l={g.l} -> {written[0]}")
    return EXIT_OK


SOLVE_HEADER = ["type", "census", "w", "n", "beta1", "x", "cosh_x", "polygon_area", "circle_area", "density"]


def cmd_solve(args, argv) -> int:
    g = _group(args.l)
    tol = args.tol if args.tol is not None else _env_float("HYPIN_TOL", DEFAULT_TOL)
    threads = args.threads if args.threads is not None else _env_int("HYPIN_THREADS", None)
    if not 1e-14 <= tol <= 1e-6:
        raise UsageError(f"tolerance must lie in [1e-14, 1e-6], got {tol:g}")
    if threads is not None and threads < 1:
        raise UsageError(f"thread count must be positive, got {threads}")
    try:
        rows = solve_all(g, tol, threads)
    except (NoRootError, DomainError, InvalidArgument) as exc:
        print(f"hypin solve: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    table = [
        [k, s.label(), s.w, s.n, r.beta1, r.x, r.cosh_x, r.polygon_area, r.circle_area, r.density]
        for k, (s, r) in enumerate(rows, start=1)
    ]
    best_k = max(range(len(rows)), key=lambda k: (rows[k][1].x, -k))
    best_sol, best_res = rows[best_k]
    closed = optimal_radius_closed_form(g).x
    best = {
        "type": best_k + 1,
        "census": best_sol.label(),
        "x": num(best_res.x),
        "cosh_x": num(best_res.cosh_x),
        "density": num(best_res.density),
        "closed_form_x": num(closed),
        "abs_diff": num(abs(best_res.x - closed)),
        "matches_closed_form": abs(best_res.x - closed) < 1e-10,
    }
    out_dir = Path(args.out_dir)
    stem = f"solve_l{g.l}"
    written: list[Path] = []
    if args.format == "csv":
        _write(out_dir / f"{stem}.csv", _dump_csv(SOLVE_HEADER, table), written)
        _write(out_dir / f"{stem}_best.json", _dump_json(best), written)
    else:
        doc = {
            "l": g.l,
            "tol": tol,
            "rows": [
                dict(zip(SOLVE_HEADER, [num(v) if isinstance(v, float) else v for v in row])) for row in table
            ],
            "best": best,
        }
        _write(out_dir / f"{stem}.json", _dump_json(doc), written)
    if args.figures:
        from hypin import figures

        written.append(
            figures.plot_census_radii(
                [str(k) for k in range(1, len(rows) + 1)],
                [r.x for _, r in rows],
                closed,
                out_dir / f"{stem}_radii.png",
                l=g.l,
            )
        )
    write_manifest(out_dir / f"{stem}.manifest.json", argv, {"l": g.l, "tol": tol}, written)
    for row in table:
        print(f"{row[0]:>4}  {row[1]:<28} x = {row[5]:.6f}")
    print(f"best: type {best['type']} ({best['census']}), x = {best_res.x:.10f}, closed form {closed:.10f}")
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    from hypin import verification

    if not 4 <= args.l_max <= 12:
        raise UsageError(f"--l-max must lie in [4, 12], got {args.l_max}")
    faults = frozenset(args.inject_fault or ())
    results = verification.run_checks(args.l_max, faults)
    failed = [r.name for r in results if not r.passed]
    doc = {
        "l_max": args.l_max,
        "passed": not failed,
        "checks": [
            {**r.as_dict(), "worst_margin": num(r.worst_margin) if math.isfinite(r.worst_margin) else None}
            for r in results
        ],
    }
    out_dir = Path(args.out_dir)
    stem = f"verify_lmax{args.l_max}"
    written: list[Path] = []
    _write(out_dir / f"{stem}.json", _dump_json(doc), written)
    if args.figures and args.l_max >= 5:
        from hypin import figures
        from hypin.hyptrig import jensen_upper_bound_margin

        rows = [(l, "rotational", i, jensen_upper_bound_margin(l, i, "rotational"))
                for l in range(5, args.l_max + 1) for i in range(1, l)]
        rows += [(l, "additional", j, jensen_upper_bound_margin(l, j, "additional"))
                 for l in range(5, args.l_max + 1) for j in range(3, l + 1)]
        written.append(figures.plot_bound_margins(rows, out_dir / f"{stem}_bounds.png"))
    write_manifest(out_dir / f"{stem}.manifest.json", argv, {"l_max": args.l_max}, written)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<26} n={r.samples:<6} worst margin {r.worst_margin:.3e}")
    if failed:
        print(f"hypin verify: failing checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_render(args, argv) -> int:
    from hypin.incircle import solve_incircle
    from hypin.render import RenderOptions, layout_polygon, render_svg

    g = _group(args.l)
    sols = enumerate_tree_types(g)
    if not 1 <= args.type <= len(sols):
        raise UsageError(f"--type must lie in [1, {len(sols)}] for l={g.l}, got {args.type}")
    sol = sols[args.type - 1]
    try:
        res = solve_incircle(sol, g)
    except (NoRootError, DomainError) as exc:
        print(f"hypin render: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    layout = layout_polygon(sol, res)
    title = f"l={g.l} type {args.type}: {sol.label()}, x={res.x:.6f}"
    out = Path(args.out)
    written: list[Path] = []
    _write(out, render_svg(layout, RenderOptions(title=title)), written)
    if args.png:
        from hypin import figures

        written.append(figures.plot_layout(layout, Path(args.png)))
    write_manifest(out.with_name(out.stem + ".manifest.json"), argv, {"l": g.l, "type": args.type}, written)
    print(f"{title} -> {out}")
    return EXIT_OK


def _report_record(rep: lagrange.StationaryReport) -> dict:
    return {
        "status": "converged",
        "verdict": rep.verdict,
        "objective": num(rep.objective),
        "x": num(rep.x),
        "iterations": rep.iterations,
        "lagrangian_gradient_norm": num(rep.lagrangian_gradient_norm),
        "constraint_residual_norm": num(rep.constraint_residual_norm),
        "projected_gradient_norm": num(rep.projected_gradient_norm),
        "multipliers": [num(v) for v in rep.multipliers],
        "point": {
            "alphas": [num(v) for v in rep.point.alphas],
            "betas": [num(v) for v in rep.point.betas],
            "theta": num(rep.point.theta),
        },
    }


def cmd_optimize(args, argv) -> int:
    system = lagrange.build_system(args.type)
    outcomes = lagrange.multi_start(system, args.seed, args.starts)
    starts = []
    for k, o in enumerate(outcomes):
        if isinstance(o, Exception):
            starts.append({"start": k, "status": type(o).__name__, "message": str(o)})
        else:
            starts.append({"start": k, **_report_record(o)})
    best = lagrange.best_report(outcomes)
    doc = {
        "type": args.type,
        "seed": args.seed,
        "variables": system.dim,
        "constraints": system.n_constraints,
        "starts": starts,
        "best": None if best is None else _report_record(best),
    }
    out_dir = Path(args.out_dir)
    stem = f"optimize_type{args.type}_seed{args.seed}"
    written: list[Path] = []
    _write(out_dir / f"{stem}.json", _dump_json(doc), written)
    write_manifest(out_dir / f"{stem}.manifest.json", argv, {"type": args.type, "seed": args.seed}, written)
    if best is None:
        print("hypin optimize: no start converged", file=sys.stderr)
        return EXIT_OPTIMIZER
    print(f"type {args.type}: best f = {best.objective:.10f} (x = {best.x:.10f}), verdict {best.verdict}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypin",
        description="Largest inscribed circles in fundamental domains of [3,3,...,3].",
    )
    parser.add_argument("--version", action="version", version=f"hypin {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=".", help="directory for output files (default: .)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list all degree censuses")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("solve", parents=[common], help="solve the incircle of every census")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--tol", type=float, default=None, help="bracket width on beta (env HYPIN_TOL)")
    p.add_argument("--threads", type=int, default=None, help="parallel census solves (env HYPIN_THREADS)")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--figures", action="store_true", help="also write a radius bar chart (PNG)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--l-max", type=int, default=8)
    p.add_argument("--figures", action="store_true", help="also write a bound-margin plot (PNG)")
    p.add_argument("--inject-fault", action="append", metavar="CHECK", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a fundamental domain as SVG")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--type", type=int, required=True, help="1-based census index")
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--png", default=None, help="optional raster copy via matplotlib")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("optimize", parents=[common], help="Lagrange multi-start for l=4 types 3-5")
    p.add_argument("--type", type=int, choices=(3, 4, 5), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=8)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"hypin {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
