"""Orders on simplices and the minimal-pair decomposition.

Simplices are increasing vertex tuples. Within one dimension they are
ordered lexicographically, and ordered pairs ``(first < second)`` of
same-dimension simplices are ordered lexicographically on
``(first, second)``.

Any ``(k+1)``-simplex ``tau = (t0 < ... < t_{k+1})`` is the union of many
pairs of its ``k``-faces. The least such pair drops the largest vertex
(``first``) and the second-largest vertex (``second``). The two faces
share ``tau`` minus its two largest vertices, which is the least
``(k-1)``-face of ``tau``. The one vertex pair not covered by either face
is the two largest vertices of ``tau``. New-VR builds every simplex from
this pair, checking only that one edge.
"""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple, Sequence

from .errors import ValidationError
from .simplex_tree import Simplex, as_simplex

__all__ = [
    "SimplexPair",
    "MinimalPairDecomposition",
    "missing_pair",
    "compare_simplices",
    "compare_pairs",
    "make_pair",
    "faces",
    "minimal_pair",
    "minimal_pair_by_enumeration",
]


class SimplexPair(NamedTuple):
    first: Simplex
    second: Simplex


class MinimalPairDecomposition(NamedTuple):
    sigma0: Simplex
    sigma1: Simplex
    rho: Simplex
    v0: int
    v1: int

    @property
    def pair(self) -> SimplexPair:
        return SimplexPair(self.sigma0, self.sigma1)


def missing_pair(s: Sequence[int], s0: Sequence[int], s1: Sequence[int]) -> tuple[int, int]:
    """Return ``(s - s0, s - s1)``, the only 2-subset of ``s`` outside both faces.

    ``s0`` and ``s1`` must be distinct subsets of ``s`` with one vertex
    fewer than ``s``.
    """
    s, s0, s1 = set(s), set(s0), set(s1)
    if not (len(s) == len(s0) + 1 == len(s1) + 1):
        raise ValidationError("faces must have exactly one vertex fewer than the simplex")
    if len(s) < 2:
        raise ValidationError("the simplex needs at least two vertices")
    if not (s0 < s and s1 < s):
        raise ValidationError("faces must be subsets of the simplex")
    if s0 == s1:
        raise ValidationError("faces must be distinct")
    (t0,) = s - s0
    (t1,) = s - s1
    return t0, t1


def _check_same_dim(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValidationError(
            f"cannot compare simplices of different dimensions: {tuple(a)} vs {tuple(b)}"
        )


def compare_simplices(a: Sequence[int], b: Sequence[int]) -> int:
    """Three-way lexicographic comparison (-1, 0, 1) of equal-dimension simplices."""
    _check_same_dim(a, b)
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def make_pair(a: Sequence[int], b: Sequence[int]) -> SimplexPair:
    """Order two distinct same-dimension simplices into a :class:`SimplexPair`."""
    c = compare_simplices(a, b)
    if c == 0:
        raise ValidationError(f"a pair needs two distinct simplices, got {tuple(a)} twice")
    a, b = tuple(a), tuple(b)
    return SimplexPair(a, b) if c < 0 else SimplexPair(b, a)


def compare_pairs(p: SimplexPair, q: SimplexPair) -> int:
    _check_same_dim(p.first, q.first)
    _check_same_dim(p.first, p.second)
    _check_same_dim(q.first, q.second)
    c = compare_simplices(p.first, q.first)
    if c:
        return c
    return compare_simplices(p.second, q.second)


def faces(tau: Sequence[int]) -> list[Simplex]:
    """Codimension-one faces of ``tau`` in lexicographic order."""
    tau = tuple(tau)
    return sorted(tau[:i] + tau[i + 1:] for i in range(len(tau)))


def minimal_pair(tau: Sequence[int]) -> MinimalPairDecomposition:
    """Closed-form minimal pair of ``k``-faces of a ``(k+1)``-simplex, ``k >= 1``."""
    tau = as_simplex(tau)
    if len(tau) < 3:
        raise ValidationError(f"minimal pair needs at least 3 vertices, got {tau}")
    head, a, b = tau[:-2], tau[-2], tau[-1]
    return MinimalPairDecomposition(head + (a,), head + (b,), head, a, b)


def minimal_pair_by_enumeration(tau: Sequence[int]) -> SimplexPair:
    """Reference: minimum under :func:`compare_pairs` over all pairs of faces."""
    tau = as_simplex(tau)
    if len(tau) < 3:
        raise ValidationError(f"minimal pair needs at least 3 vertices, got {tau}")
    best = None
    for a, b in combinations(faces(tau), 2):
        pair = make_pair(a, b)
        if best is None or compare_pairs(pair, best) < 0:
            best = pair
    return best
