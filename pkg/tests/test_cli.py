import csv
import hashlib
import json
import subprocess
import sys

import pytest

from hypin.cli import main


def manifest_ok(path):
    man = json.loads(path.read_text())
    assert man["tool"] == "hypin" and man["version"]
    for f in man["files"]:
        data = (path.parent / f["path"]).read_bytes()
        assert hashlib.sha256(data).hexdigest() == f["sha256"]
        assert len(data) == f["bytes"]
    return man


def test_enumerate_csv(tmp_path):
    assert main(["enumerate", "--l", "5", "--out-dir", str(tmp_path)]) == 0
    with open(tmp_path / "enumerate_l5.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["type", "w", "A1", "A2", "A3", "A4", "B3", "B4", "B5", "n"]
    assert len(rows) == 11
    man = manifest_ok(tmp_path / "enumerate_l5.manifest.json")
    assert man["command"] == ["hypin", "enumerate", "--l", "5", "--out-dir", str(tmp_path)]


def test_enumerate_json(tmp_path):
    assert main(["enumerate", "--l", "4", "--format", "json", "--out-dir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "enumerate_l4.json").read_text())
    assert doc["count"] == 5
    assert doc["side_bounds"] == {"n_min": 6, "n_max": 10}
    assert list(doc["censuses"][0]) == ["type", "w", "n", "census", "A", "B"]


def test_solve_outputs_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["solve", "--l", "4", "--out-dir", str(a)]) == 0
    assert main(["solve", "--l", "4", "--threads", "3", "--out-dir", str(b)]) == 0
    for name in ("solve_l4.csv", "solve_l4_best.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    best = json.loads((a / "solve_l4_best.json").read_text())
    assert best["type"] == 5 and best["matches_closed_form"]
    manifest_ok(a / "solve_l4.manifest.json")


def test_solve_json_significant_digits(tmp_path):
    assert main(["solve", "--l", "4", "--format", "json", "--out-dir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "solve_l4.json").read_text())
    for v in (doc["rows"][4]["x"], doc["best"]["closed_form_x"]):
        assert abs(v - 1.061275061905036) < 1e-11
        assert len(repr(v).replace(".", "").lstrip("0")) <= 12


def test_solve_figures(tmp_path):
    assert main(["solve", "--l", "4", "--figures", "--out-dir", str(tmp_path)]) == 0
    png = tmp_path / "solve_l4_radii.png"
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    man = manifest_ok(tmp_path / "solve_l4.manifest.json")
    assert "solve_l4_radii.png" in [f["path"] for f in man["files"]]


def test_env_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("HYPIN_TOL", "1e-8")
    assert main(["solve", "--l", "4", "--out-dir", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "solve_l4.manifest.json").read_text())["parameters"]["tol"] == 1e-8
    assert main(["solve", "--l", "4", "--tol", "1e-12", "--out-dir", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "solve_l4.manifest.json").read_text())["parameters"]["tol"] == 1e-12
    monkeypatch.setenv("HYPIN_TOL", "abc")
    assert main(["solve", "--l", "4", "--out-dir", str(tmp_path)]) == 2
    monkeypatch.setenv("HYPIN_TOL", "1e-3")
    assert main(["solve", "--l", "4", "--out-dir", str(tmp_path)]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--l", "3"],
        ["solve", "--l", "2"],
        ["solve", "--l", "4", "--threads", "0"],
        ["verify", "--l-max", "13"],
        ["verify", "--l-max", "3"],
        ["render", "--l", "4", "--type", "6", "--out", "x.svg"],
        ["render", "--l", "4", "--type", "0", "--out", "x.svg"],
        ["optimize", "--type", "2"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2


def test_verify_pass_and_fault(tmp_path):
    assert main(["verify", "--l-max", "5", "--out-dir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "verify_lmax5.json").read_text())
    assert doc["passed"] and all(c["passed"] for c in doc["checks"])
    rc = main(["verify", "--l-max", "4", "--inject-fault", "side_bounds", "--out-dir", str(tmp_path)])
    assert rc == 4
    doc = json.loads((tmp_path / "verify_lmax4.json").read_text())
    assert [c["name"] for c in doc["checks"] if not c["passed"]] == ["side_bounds"]


def test_verify_figures(tmp_path):
    assert main(["verify", "--l-max", "6", "--figures", "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "verify_lmax6_bounds.png").exists()


def test_render(tmp_path):
    out = tmp_path / "t5.svg"
    assert main(["render", "--l", "4", "--type", "5", "--out", str(out), "--png", str(tmp_path / "t5.png")]) == 0
    assert out.read_bytes().startswith(b"<?xml") or b"<svg" in out.read_bytes()[:200]
    man = manifest_ok(tmp_path / "t5.manifest.json")
    assert {f["path"] for f in man["files"]} == {"t5.svg", "t5.png"}


def test_optimize(tmp_path):
    assert main(["optimize", "--type", "5", "--seed", "2", "--starts", "3", "--out-dir", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "optimize_type5_seed2.json").read_text())
    assert len(doc["starts"]) == 3
    assert doc["best"]["verdict"] == "local_max"
    assert doc["best"]["objective"] == pytest.approx((1 + 5**0.5) / 2, abs=1e-9)


def test_optimize_failure_exit(tmp_path, monkeypatch):
    from hypin import lagrange
    from hypin.errors import NonConvergence

    monkeypatch.setattr(lagrange, "multi_start", lambda s, seed, n: [NonConvergence("x")] * n)
    assert main(["optimize", "--type", "3", "--out-dir", str(tmp_path)]) == 5


def test_solver_failure_exit(tmp_path, monkeypatch):
    from hypin import cli
    from hypin.errors import NoRootError

    def boom(*a, **k):
        raise NoRootError("forced")

    monkeypatch.setattr(cli, "solve_all", boom)
    assert main(["solve", "--l", "4", "--out-dir", str(tmp_path)]) == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hypin", "enumerate", "--l", "4", "--out-dir", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "enumerate_l4.csv").exists()
