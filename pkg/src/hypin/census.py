"""Combinatorial types of fundamental domains for G = [3,3,...,3].

A fundamental polygon is obtained by cutting the quotient sphere along a tree
whose vertices are the ``l`` rotation centers plus ``w`` additional points of
degree at least 3.  The tree only matters through its degree census:

* ``A[i]`` rotation centers of degree ``i`` (1 <= i <= l-1),
* ``B[j]`` additional points of degree ``j`` (3 <= j <= l),

subject to ``sum A = l``, ``sum B = w`` and the handshake identity
``sum i*A_i + sum j*B_j = 2(l + w - 1) = n``, where ``n`` is the number of
sides of the polygon.  Everything in this module is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from hypin.errors import InvalidArgument, InvalidL


@dataclass(frozen=True)
class GroupSpec:
    """The group [3,3,...,3] with ``l`` rotation centers of order 3."""

    l: int

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 4:
            raise InvalidL(f"need l >= 4 rotation centers, got {self.l!r}")


def as_group(g: GroupSpec | int) -> GroupSpec:
    return g if isinstance(g, GroupSpec) else GroupSpec(int(g))


@dataclass(frozen=True)
class TreeTypeSolution:
    """Degree census of one fundamental-domain type.

    ``A[k]`` counts rotation centers of degree ``k + 1`` and ``B[k]`` counts
    additional points of degree ``k + 3``.
    """

    l: int
    A: tuple[int, ...]
    B: tuple[int, ...]

    def __post_init__(self):
        if len(self.A) != self.l - 1 or len(self.B) != self.l - 2:
            raise InvalidArgument("census vectors have the wrong length for l")
        if min(self.A + self.B) < 0:
            raise InvalidArgument("census counts must be nonnegative")
        if sum(self.A) != self.l:
            raise InvalidArgument("rotation-center counts must sum to l")
        if not 0 <= self.w <= self.l - 2:
            raise InvalidArgument("additional-point count outside [0, l-2]")
        degree_sum = sum(i * a for i, a in self.rotational_items()) + sum(
            j * b for j, b in self.additional_items()
        )
        if degree_sum != self.n:
            raise InvalidArgument("census violates the handshake identity")

    @classmethod
    def from_counts(cls, l: int, A: dict[int, int], B: dict[int, int] | None = None):
        """Build a census from sparse ``{degree: count}`` maps."""
        B = B or {}
        if any(not 1 <= i <= l - 1 for i in A) or any(not 3 <= j <= l for j in B):
            raise InvalidArgument("degree out of range")
        return cls(
            l,
            tuple(A.get(i, 0) for i in range(1, l)),
            tuple(B.get(j, 0) for j in range(3, l + 1)),
        )

    @property
    def w(self) -> int:
        return sum(self.B)

    @property
    def n(self) -> int:
        return 2 * (self.l + self.w - 1)

    def rotational_items(self) -> list[tuple[int, int]]:
        """``(degree, count)`` pairs with nonzero count, by degree."""
        return [(i, a) for i, a in enumerate(self.A, start=1) if a]

    def additional_items(self) -> list[tuple[int, int]]:
        return [(j, b) for j, b in enumerate(self.B, start=3) if b]

    def label(self) -> str:
        parts = [f"A{i}={a}" for i, a in self.rotational_items()]
        parts += [f"B{j}={b}" for j, b in self.additional_items()]
        return " ".join(parts)

    def sort_key(self) -> tuple:
        # Lexicographic from the highest degree down; reproduces the row
        # order of the l = 4 table (types 1..5).
        return (self.w, self.n, self.A[::-1], self.B[::-1])


@dataclass(frozen=True)
class OrbifoldBounds:
    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min > self.n_max:
            raise InvalidArgument(f"n_min={self.n_min} exceeds n_max={self.n_max}")


def _compositions(count: int, lo: int, hi: int, degrees: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Count vectors ``c`` over ``degrees`` with ``sum c = count`` and ``lo <= sum d*c <= hi``.

    Branches whose reachable weight range misses ``[lo, hi]`` are pruned.
    """
    if not degrees:
        if count == 0 and lo <= 0 <= hi:
            yield ()
        return
    d, rest = degrees[0], degrees[1:]
    for c in range(count, -1, -1):
        remaining = count - c
        if rest:
            reach_lo, reach_hi = min(rest) * remaining, max(rest) * remaining
        elif remaining:
            continue
        else:
            reach_lo = reach_hi = 0
        if reach_hi < lo - d * c or reach_lo > hi - d * c:
            continue
        for tail in _compositions(remaining, lo - d * c, hi - d * c, rest):
            yield (c,) + tail


def enumerate_tree_types(g: GroupSpec | int) -> list[TreeTypeSolution]:
    """Every degree census of G, in canonical order (w, n, then degree counts)."""
    l = as_group(g).l
    rot = list(range(1, l))
    add = list(range(3, l + 1))
    found = []
    for w in range(0, l - 1):
        n = 2 * (l + w - 1)
        # the l rotation centers weigh between l and l(l-1)
        for B in _compositions(w, n - l * (l - 1), n - l, add):
            left = n - sum(j * b for j, b in zip(add, B))
            for A in _compositions(l, left, left, rot):
                found.append(TreeTypeSolution(l, A, B))
    return sorted(found, key=TreeTypeSolution.sort_key)


def side_bounds(g: GroupSpec | int) -> OrbifoldBounds:
    """Extreme side counts ``(2l - 2, 4l - 6)`` of fundamental polygons."""
    l = as_group(g).l
    return OrbifoldBounds(2 * l - 2, 4 * l - 6)


def max_additional_points(g: GroupSpec | int) -> int:
    return as_group(g).l - 2


def orbifold_side_bounds(
    alpha: int, g: int, l: int, q: int, q0: int, l_k: Sequence[int] = ()
) -> OrbifoldBounds:
    """Side-count range for a general compact orbifold signature.

    ``alpha`` is 2 for orientable and 1 for non-orientable quotients, ``g``
    the genus, ``l`` the number of cone points, ``q`` the number of boundary
    components (``q0`` of them without dihedral corners) and ``l_k`` the
    corner count on each boundary component.
    """
    l_k = list(l_k)
    if alpha not in (1, 2):
        raise InvalidArgument(f"alpha must be 1 or 2, got {alpha!r}")
    if min(g, l, q, q0) < 0 or any(c < 0 for c in l_k):
        raise InvalidArgument("signature entries must be nonnegative")
    if q0 > q:
        raise InvalidArgument("q0 cannot exceed q")
    if len(l_k) != q:
        raise InvalidArgument("need one corner count per boundary component")
    corners = sum(l_k)
    if l == 0 and q == 0:
        n_min = 2 * alpha * g
    else:
        n_min = q0 + corners + 2 * alpha * g + 2 * l + 2 * q - 2
    n_max = corners + 6 * alpha * g + 4 * l + 5 * q - 6
    return OrbifoldBounds(n_min, n_max)
