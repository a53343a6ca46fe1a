"""Independent high-precision reference computations (mpmath, 40 digits).

These do not import hypin. The frozen constants in the tests were produced
by ``python3 tests/oracle.py``, and ``test_oracle_freeze`` re-derives them.
"""

from __future__ import annotations

import functools
import itertools

import mpmath as mp

mp.mp.dps = 40


def incircle_cosh(rot_degrees, add_degrees):
    """cosh x of the incircle for a census given as degree multisets.

    A rotational corner of degree i has angle 2pi/(3i), an additional corner of
    degree j has angle 2pi/j. Central angles follow cos(a/2) = cosh x sin(b/2).
    """
    corners = [2 * mp.pi / (3 * i) for i in rot_degrees for _ in range(i)]
    corners += [2 * mp.pi / j for j in add_degrees for _ in range(j)]

    def excess(c):
        return mp.fsum(2 * mp.asin(mp.cos(a / 2) / c) for a in corners) - 2 * mp.pi

    # excess is decreasing in c and defined once c >= max cos(a/2)
    a = max(mp.cos(t / 2) for t in corners)
    b = 100 * a
    for _ in range(200):
        mid = (a + b) / 2
        if excess(mid) > 0:
            a = mid
        else:
            b = mid
    return (a + b) / 2


def table1_censuses():
    return [
        ([1, 1, 2, 2], []),
        ([1, 1, 1, 3], []),
        ([1, 1, 1, 1], [4]),
        ([1, 1, 1, 2], [3]),
        ([1, 1, 1, 1], [3, 3]),
    ]


def table1_radii():
    return [mp.acosh(incircle_cosh(r, a)) for r, a in table1_censuses()]


def equal_angle_cosh(alpha, m):
    return mp.cos(mp.mpf(alpha) / 2) / mp.sin(mp.pi / m)


@functools.cache
def brute_force_censuses(l):
    """Nested product over count vectors, each count capped by what the total weight allows.

    B vectors are bucketed by sum(j B_j) - 2w so each A needs one lookup.
    """
    cap = 2 * (2 * l - 3)
    buckets = {}
    for B in itertools.product(*[range(min(l - 2, cap // j) + 1) for j in range(3, l + 1)]):
        w = sum(B)
        if w <= l - 2:
            key = sum(j * b for j, b in enumerate(B, 3)) - 2 * w
            buckets.setdefault(key, []).append(B)
    found = set()
    for A in itertools.product(*[range(min(l, cap // i) + 1) for i in range(1, l)]):
        if sum(A) != l:
            continue
        need = 2 * (l - 1) - sum(i * a for i, a in enumerate(A, 1))
        for B in buckets.get(need, ()):
            found.add((A, B))
    return found


def vertex_distance(alpha, beta):
    return mp.acosh(mp.cot(mp.mpf(alpha) / 2) * mp.cot(mp.mpf(beta) / 2))


if __name__ == "__main__":
    for x in table1_radii():
        print(mp.nstr(x, 16))
    x5 = table1_radii()[-1]
    area = 2 * mp.pi * (mp.cosh(x5) - 1)
    print("area", mp.nstr(area, 16), "density", mp.nstr(area / (4 * mp.pi / 3), 16))
    print("K4", mp.nstr(2 * mp.asin(1 / (2 * mp.cos(mp.pi / 9))), 16))
    print("beta(pi/3, cosh 1)", mp.nstr(2 * mp.asin(mp.cos(mp.pi / 6) / mp.cosh(1)), 16))
    c5 = mp.cosh(x5)
    print("d", mp.nstr(vertex_distance(2 * mp.pi / 3, 2 * mp.asin(mp.cos(mp.pi / 3) / c5)), 16))
    print([len(brute_force_censuses(l)) for l in range(4, 8)])
