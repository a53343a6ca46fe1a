from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from hypin import (
    GroupSpec,
    InvalidArgument,
    InvalidL,
    OrbifoldBounds,
    TreeTypeSolution,
    enumerate_tree_types,
    max_additional_points,
    orbifold_side_bounds,
    side_bounds,
)

# l = 4 rows in reference order: (w, A1, A2, A3, B3, B4)
L4_ROWS = [
    (0, 2, 2, 0, 0, 0),
    (0, 3, 0, 1, 0, 0),
    (1, 4, 0, 0, 0, 1),
    (1, 3, 1, 0, 1, 0),
    (2, 4, 0, 0, 2, 0),
]

# counts frozen from the brute-force oracle (l = 4..8), extended by this enumerator
CENSUS_COUNTS = {4: 5, 5: 10, 6: 20, 7: 36, 8: 65, 9: 110, 10: 185, 11: 300, 12: 481}


def test_l4_matches_table_row_for_row():
    got = [(s.w, *s.A, *s.B) for s in enumerate_tree_types(4)]
    assert got == L4_ROWS


def test_l4_unique_at_w2():
    rows = [s for s in enumerate_tree_types(4) if s.w == 2]
    assert rows == [TreeTypeSolution.from_counts(4, {1: 4}, {3: 2})]


@pytest.mark.parametrize("l", range(4, 9))
def test_oracle_set_equality(l):
    got = {(s.A, s.B) for s in enumerate_tree_types(l)}
    assert got == oracle.brute_force_censuses(l)


@pytest.mark.parametrize("l", range(4, 13))
def test_counts_and_invariants(l):
    sols = enumerate_tree_types(l)
    assert len(sols) == CENSUS_COUNTS[l]
    assert len(set(sols)) == len(sols)
    assert sols == sorted(sols, key=TreeTypeSolution.sort_key)
    for s in sols:
        assert sum(s.A) == l and sum(s.B) == s.w
        assert sum(i * a for i, a in enumerate(s.A, 1)) + sum(j * b for j, b in enumerate(s.B, 3)) == s.n
        assert s.n == 2 * (l + s.w - 1)
        assert 0 <= s.w <= l - 2
    assert [s.w for s in sols] == sorted(s.w for s in sols)


@pytest.mark.parametrize("l", range(4, 13))
def test_bounds_attained(l):
    ns = [s.n for s in enumerate_tree_types(l)]
    b = side_bounds(l)
    assert (min(ns), max(ns)) == (b.n_min, b.n_max) == (2 * l - 2, 4 * l - 6)


@pytest.mark.parametrize("l", range(4, 13))
def test_unique_at_max_w(l):
    top = [s for s in enumerate_tree_types(l) if s.w == l - 2]
    assert top == [TreeTypeSolution.from_counts(l, {1: l}, {3: l - 2})]


@pytest.mark.parametrize("l,expected", [(4, (6, 10)), (5, (8, 14)), (10, (18, 34))])
def test_side_bounds_values(l, expected):
    b = side_bounds(GroupSpec(l))
    assert (b.n_min, b.n_max) == expected


@pytest.mark.parametrize("l,expected", [(4, 2), (5, 3), (12, 10)])
def test_max_additional_points(l, expected):
    assert max_additional_points(l) == expected


@pytest.mark.parametrize("fn", [enumerate_tree_types, side_bounds, max_additional_points, GroupSpec])
@pytest.mark.parametrize("l", [3, 0, -2])
def test_invalid_l(fn, l):
    with pytest.raises(InvalidL):
        fn(l)


def test_orbifold_bounds_examples():
    assert orbifold_side_bounds(2, 0, 4, 0, 0, []) == OrbifoldBounds(6, 10)
    assert orbifold_side_bounds(2, 1, 0, 0, 0, []).n_min == 4
    # hand-evaluated golden: n_min = 0+2+0+6+2-2, n_max = 2+0+12+5-6
    assert orbifold_side_bounds(1, 0, 3, 1, 0, [2]) == OrbifoldBounds(8, 13)


@given(st.integers(4, 40))
def test_orbifold_specializes_to_side_bounds(l):
    assert orbifold_side_bounds(2, 0, l, 0, 0) == side_bounds(l)


@pytest.mark.parametrize(
    "args",
    [(3, 0, 4, 0, 0, []), (2, 0, 4, 1, 2, [1]), (2, 0, 4, 2, 0, [1]), (2, -1, 4, 0, 0, []), (2, 0, 4, 1, 0, [-1])],
)
def test_orbifold_rejects(args):
    with pytest.raises(InvalidArgument):
        orbifold_side_bounds(*args)


def test_orbifold_bounds_order():
    with pytest.raises(InvalidArgument):
        OrbifoldBounds(5, 4)


@pytest.mark.parametrize(
    "A,B",
    [((2, 2), (0, 0)), ((2, 2, 1), (0, 0)), ((1, 2, 1), (0, 0)), ((4, 0, 0), (1, 0)), ((3, 1, 0), (0, 1)), ((2, 2, 0), (-1, 1))],
)
def test_census_validation(A, B):
    with pytest.raises(InvalidArgument):
        TreeTypeSolution(4, A, B)


def test_from_counts_rejects_degree():
    with pytest.raises(InvalidArgument):
        TreeTypeSolution.from_counts(4, {4: 1})


def test_label():
    assert enumerate_tree_types(4)[3].label() == "A1=3 A2=1 B3=1"


def test_golden_csv_matches_cli(tmp_path):
    from hypin.cli import main

    assert main(["enumerate", "--l", "4", "--out-dir", str(tmp_path)]) == 0
    golden = Path(__file__).parent / "golden" / "enumerate_l4.csv"
    assert (tmp_path / "enumerate_l4.csv").read_bytes() == golden.read_bytes()
