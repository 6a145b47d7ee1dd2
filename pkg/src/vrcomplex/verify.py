"""Cross-checks between the constructions and the brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import faces, minimal_pair, minimal_pair_by_enumeration, missing_pair
from .construction import brute_force_vr, incremental_vr, inductive_vr, new_vr
from .errors import StructuralError
from .graph import Graph, erdos_renyi

__all__ = [
    "EquivalenceCase",
    "VerifyReport",
    "equivalence_cases",
    "check_equivalence",
    "verify_equivalence",
    "check_pair_theorem",
    "check_minimal_pair_theorem",
]

DEFAULT_PROBS = (0.1, 0.3, 0.5, 0.8)
DEFAULT_DIMS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class EquivalenceCase:
    index: int
    n: int
    p: float
    d: int
    seed: int

    def graph(self) -> Graph:
        return erdos_renyi(self.n, self.p, self.seed)


@dataclass
class VerifyReport:
    cases: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def equivalence_cases(trials: int, min_n: int = 5, max_n: int = 20, seed: int = 0, probs: Sequence[float] = DEFAULT_PROBS, dims: Sequence[int] = DEFAULT_DIMS) -> Iterator[EquivalenceCase]:
    """Deterministic (n, p, d) draws; graph ``i`` is seeded with ``seed + i``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    for i in range(trials):
        n = int(rng.integers(min_n, max_n + 1))
        p = float(probs[int(rng.integers(len(probs)))])
        d = int(dims[int(rng.integers(len(dims)))])
        yield EquivalenceCase(i, n, p, d, seed + i)


def check_equivalence(g: Graph, d: int) -> list[str]:
    """Run all four constructions on ``g`` and describe any disagreement."""
    problems = []
    oracle = brute_force_vr(g, d).as_simplex_set()
    try:
        tree, counters = new_vr(g, d, verify_kernels=True)
    except StructuralError as exc:
        return [f"new: {exc}"]
    if counters.nodes_created != tree.size:
        problems.append(f"new: {counters.nodes_created} insertions for {tree.size} simplices")
    if counters.merge_comparisons:
        problems.append("new: merge comparisons recorded")
    candidates = {
        "new": tree.as_simplex_set(),
        "incremental": incremental_vr(g, d)[0].as_simplex_set(),
        "inductive": inductive_vr(g, d).as_simplex_set(),
    }
    for name, simplices in candidates.items():
        if simplices != oracle:
            missing = sorted(set(oracle) - set(simplices))[:3]
            extra = sorted(set(simplices) - set(oracle))[:3]
            problems.append(f"{name}: differs from oracle (missing {missing}, extra {extra})")
    return problems


def verify_equivalence(trials: int = 200, min_n: int = 5, max_n: int = 20, seed: int = 0, probs: Sequence[float] = DEFAULT_PROBS, dims: Sequence[int] = DEFAULT_DIMS) -> VerifyReport:
    report = VerifyReport()
    for case in equivalence_cases(trials, min_n, max_n, seed, probs, dims):
        g = case.graph()
        problems = check_equivalence(g, case.d)
        report.cases += 1
        for msg in problems:
            report.mismatches.append(f"case {case.index} (n={case.n}, p={case.p}, d={case.d}, seed={case.seed}): {msg}")
    return report


def check_pair_theorem(g: Graph, max_dim: int) -> int:
    """Check the single-edge criterion on every pair of k-cliques sharing a (k-1)-face.

    For ``1 <= k < max_dim``, the union of two such cliques is a clique iff
    their missing pair is an edge. Returns the number of pairs checked and
    raises ``AssertionError`` on the first violation.
    """
    levels = [set(brute_force_vr(g, max_dim).simplices_at_level(k)) for k in range(max_dim + 1)]
    checked = 0
    for k in range(1, max_dim):
        upper = levels[k + 1] if k + 1 < len(levels) else set()
        for s0 in sorted(levels[k]):
            for drop in s0:
                rest = tuple(x for x in s0 if x != drop)
                for add in range(g.n):
                    if add in s0:
                        continue
                    s1 = tuple(sorted(rest + (add,)))
                    if s1 <= s0 or s1 not in levels[k]:
                        continue
                    union = tuple(sorted(set(s0) | set(s1)))
                    a, b = missing_pair(union, s0, s1)
                    if (union in upper) != bool(g.rows[a][b]):
                        raise AssertionError(f"pair check fails for {s0}, {s1}")
                    checked += 1
    return checked


def check_minimal_pair_theorem(g: Graph, max_dim: int) -> int:
    """Check the minimal-pair bijection on every clique of dimension 2..max_dim.

    For each level the closed-form decomposition must match the enumerated
    minimum, be injective, and have ``rho`` equal to the least
    codimension-two face. Returns the number of simplices checked.
    """
    tree = brute_force_vr(g, max_dim)
    checked = 0
    for k in range(2, max_dim + 1):
        seen = {}
        for tau in tree.simplices_at_level(k):
            mp = minimal_pair(tau)
            if mp.pair != minimal_pair_by_enumeration(tau):
                raise AssertionError(f"closed form disagrees with enumeration on {tau}")
            if mp.pair in seen:
                raise AssertionError(f"{tau} and {seen[mp.pair]} share a minimal pair")
            seen[mp.pair] = tau
            if tuple(sorted(set(mp.sigma0) | set(mp.sigma1))) != tau:
                raise AssertionError(f"minimal pair of {tau} does not span it")
            least_face = min(f for s in faces(tau) for f in faces(s)) if len(tau) > 2 else ()
            if tuple(sorted(set(mp.sigma0) & set(mp.sigma1))) != mp.rho or mp.rho != least_face:
                raise AssertionError(f"shared face of {tau} is not its least (k-1)-face")
            if missing_pair(tau, mp.sigma0, mp.sigma1) != (mp.v1, mp.v0):
                raise AssertionError(f"missing pair of {tau} is not its two largest vertices")
            checked += 1
    return checked
