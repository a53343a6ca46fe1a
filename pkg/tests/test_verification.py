import math

import mpmath as mp
import pytest

import oracle
from hypin import verification
from hypin.incircle import solve_all
from test_incircle import ORACLE_K4, ORACLE_L4_X, ORACLE_REGULAR_AREA
from test_render import ORACLE_VERTEX_D


def test_oracle_freeze():
    # the frozen constants used across the suite re-derive from the mpmath oracle
    got = [float(x) for x in oracle.table1_radii()]
    assert got == pytest.approx(ORACLE_L4_X, abs=1e-15)
    x5 = oracle.table1_radii()[-1]
    assert float(2 * mp.pi * (mp.cosh(x5) - 1)) == pytest.approx(ORACLE_REGULAR_AREA, abs=1e-14)
    assert float(2 * mp.asin(1 / (2 * mp.cos(mp.pi / 9)))) == pytest.approx(ORACLE_K4, abs=1e-15)
    beta = 2 * mp.asin(mp.cos(mp.pi / 3) / mp.cosh(x5))
    assert float(oracle.vertex_distance(2 * mp.pi / 3, beta)) == pytest.approx(ORACLE_VERTEX_D, abs=1e-14)


def test_oracle_equal_angle_form():
    for m in (3, 5, 8):
        alpha = 0.4 * (m - 2) * math.pi / m
        assert float(oracle.equal_angle_cosh(alpha, m)) == pytest.approx(math.cos(alpha / 2) / math.sin(math.pi / m), rel=1e-15)


def test_solver_matches_oracle_l5():
    # one corner-list oracle evaluation per census with explicit degree multisets
    for sol, res in solve_all(5):
        rot = [i for i, a in sol.rotational_items() for _ in range(a)]
        add = [j for j, b in sol.additional_items() for _ in range(b)]
        assert res.cosh_x == pytest.approx(float(oracle.incircle_cosh(rot, add)), abs=1e-12)


@pytest.mark.parametrize("l", range(4, 8))
def test_two_oracles_agree(l):
    assert verification.multiset_censuses(l) == oracle.brute_force_censuses(l)


def test_run_checks_all_pass():
    results = verification.run_checks(8)
    assert [r.name for r in results if not r.passed] == []
    assert all(r.samples > 0 for r in results)


def test_fault_injection_inverts_verdict():
    names = [n for n, _ in verification.all_checks(4)]
    assert "secant_bound_margins" not in names
    res = {r.name: r for r in verification.run_checks(4, frozenset({"beta_concavity"}))}
    assert not res["beta_concavity"].passed
    assert "fault injected" in res["beta_concavity"].detail
    assert res["side_bounds"].passed


def test_as_dict_is_plain():
    r = verification.check_side_bounds(6)
    d = r.as_dict()
    assert list(d) == ["name", "passed", "samples", "worst_margin", "detail"]
    assert type(d["passed"]) is bool
