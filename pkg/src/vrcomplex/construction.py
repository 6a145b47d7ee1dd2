"""Clique-complex expansion algorithms and their instrumented kernels.

All constructions produce a :class:`~vrcomplex.simplex_tree.SimplexTree`
containing every clique of the graph of dimension at most ``d``.

``new_vr``
    Recursive expansion in which the children of ``tau + v`` are the later
    siblings ``w`` of ``v`` that pass a single edge-table probe ``{v, w}``.
``incremental_vr``
    Same recursion, but the children come from a sorted-list intersection
    of the siblings with the upper neighbors of ``v``.
``inductive_vr``
    Level-by-level sweep that intersects the upper neighborhoods of every
    vertex of each simplex from scratch.
``brute_force_vr``
    Enumerates every vertex subset and keeps the cliques. Test oracle only.

Layer convention for per-layer counters: a kernel call made for vertex
``v`` while expanding ``tau`` is attributed to the tree depth of the node
``tau + v`` (equivalently ``dim(tau) + 1``).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from bisect import bisect_left
from itertools import combinations
from typing import Callable, Sequence

from .errors import StructuralError, ValidationError
from .graph import Graph
from .simplex_tree import Node, SimplexTree

__all__ = [
    "ComparisonCounters",
    "table_lookup",
    "simplified_table_lookup",
    "merge_intersect",
    "simplified_merge_intersect",
    "new_add_cofaces",
    "add_cofaces",
    "new_vr",
    "incremental_vr",
    "inductive_vr",
    "brute_force_vr",
    "ALGORITHMS",
    "run_algorithm",
]

# Depth above which the expansion switches from recursion to an explicit stack.
RECURSION_DEPTH_LIMIT = max(50, sys.getrecursionlimit() // 2 - 100)


@dataclass
class ComparisonCounters:
    """Work tallies for one construction run.

    The per-layer lists are indexed by tree depth (see module docstring).
    ``lookup_siblings`` / ``merge_siblings`` sum the sibling-list length
    seen by each kernel call, so ``siblings / calls`` estimates the mean
    number of siblings per call.
    """

    edge_probes: int = 0
    merge_comparisons: int = 0
    nodes_created: int = 0
    lookup_calls: list[int] = field(default_factory=list)
    lookup_probes: list[int] = field(default_factory=list)
    lookup_siblings: list[int] = field(default_factory=list)
    merge_calls: list[int] = field(default_factory=list)
    merge_comps: list[int] = field(default_factory=list)
    merge_siblings: list[int] = field(default_factory=list)

    _LAYERED = (
        "lookup_calls",
        "lookup_probes",
        "lookup_siblings",
        "merge_calls",
        "merge_comps",
        "merge_siblings",
    )

    def ensure_layers(self, n: int) -> None:
        for name in self._LAYERED:
            lst = getattr(self, name)
            if len(lst) < n:
                lst.extend([0] * (n - len(lst)))

    def __iadd__(self, other: "ComparisonCounters") -> "ComparisonCounters":
        self.edge_probes += other.edge_probes
        self.merge_comparisons += other.merge_comparisons
        self.nodes_created += other.nodes_created
        for name in self._LAYERED:
            mine, theirs = getattr(self, name), getattr(other, name)
            if len(mine) < len(theirs):
                mine.extend([0] * (len(theirs) - len(mine)))
            for i, x in enumerate(theirs):
                mine[i] += x
        return self

    def __add__(self, other: "ComparisonCounters") -> "ComparisonCounters":
        out = ComparisonCounters()
        out += self
        out += other
        return out

    def totals(self) -> tuple[int, int, int]:
        return self.edge_probes, self.merge_comparisons, self.nodes_created

    def trimmed(self) -> "ComparisonCounters":
        """Copy with trailing all-zero layers removed (for comparisons and dumps)."""
        out = ComparisonCounters(self.edge_probes, self.merge_comparisons, self.nodes_created)
        width = 0
        for name in self._LAYERED:
            lst = getattr(self, name)
            nz = [i for i, x in enumerate(lst) if x]
            if nz:
                width = max(width, nz[-1] + 1)
        for name in self._LAYERED:
            lst = getattr(self, name)
            setattr(out, name, (lst[:width] + [0] * width)[:width])
        return out


def _layer(lst: Sequence[int], k: int) -> int:
    return lst[k] if k < len(lst) else 0


def mean_per_call(total: Sequence[int], calls: Sequence[int], k: int) -> float:
    """``total[k] / calls[k]``, or NaN when no call happened at layer ``k``."""
    c = _layer(calls, k)
    return _layer(total, k) / c if c else float("nan")


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def _lookup(rows, largest, cands, i, v):
    # Candidates after position i, stopping once past v's largest neighbor.
    bound = largest[v]
    out = []
    if bound is None:
        return out, 0
    row = rows[v]
    probes = 0
    for j in range(i + 1, len(cands)):
        w = cands[j]
        if w > bound:
            break
        probes += 1
        if row[w]:
            out.append(w)
    return out, probes


def _merge(l1, l2):
    out = []
    if not l1 or not l2:
        return out, 0
    last1 = l1[-1]
    last2 = l2[-1]
    n1 = len(l1)
    n2 = len(l2)
    i = j = comps = 0
    while i < n1 and j < n2:
        a = l1[i]
        b = l2[j]
        comps += 1
        if a == b:
            out.append(a)
            i += 1
            j += 1
        elif a > last2 or b > last1:
            # the larger head is past the other list's end: nothing left to match
            break
        elif a < b:
            i += 1
        else:
            j += 1
    return out, comps


def _simple_merge(l1, l2):
    out = []
    n1 = len(l1)
    n2 = len(l2)
    i = j = comps = 0
    while i < n1 and j < n2:
        a = l1[i]
        b = l2[j]
        comps += 1
        if a == b:
            out.append(a)
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return out, comps


def _check_increasing(seq: Sequence[int], name: str) -> None:
    for a, b in zip(seq, seq[1:]):
        if a >= b:
            raise ValidationError(f"{name} must be strictly increasing, got {list(seq)}")


def table_lookup(g: Graph, siblings: Sequence[int], v: int, counters=None) -> list[int]:
    """Children of ``v`` among its later siblings, one edge probe per candidate.

    Scans ``w`` in ``siblings`` after ``v`` and stops at the first ``w``
    larger than the largest neighbor of ``v``.
    """
    siblings = list(siblings)
    i = bisect_left(siblings, v)
    if i == len(siblings) or siblings[i] != v:
        raise StructuralError(f"vertex {v} is not among the siblings {siblings}")
    out, probes = _lookup(g.rows, g.largest_neighbor, siblings, i, v)
    if counters is not None:
        counters.edge_probes += probes
    return out


def simplified_table_lookup(g: Graph, candidates: Sequence[int], v: int, counters=None) -> list[int]:
    """Probe every candidate ``w > v`` with no early stop."""
    row = g.rows[v]
    out = []
    probes = 0
    for w in candidates:
        if w > v:
            probes += 1
            if row[w]:
                out.append(w)
    if counters is not None:
        counters.edge_probes += probes
    return out


def merge_intersect(l1: Sequence[int], l2: Sequence[int], counters=None, check: bool = False) -> list[int]:
    """Sorted-list intersection with early exits on list ranges.

    One comparison is counted per loop iteration (one element pair).
    Set ``check`` to validate that both inputs are strictly increasing.
    """
    if check:
        _check_increasing(l1, "l1")
        _check_increasing(l2, "l2")
    out, comps = _merge(l1, l2)
    if counters is not None:
        counters.merge_comparisons += comps
    return out


def simplified_merge_intersect(l1: Sequence[int], l2: Sequence[int], counters=None, check: bool = False) -> list[int]:
    """Plain three-way merge intersection, no range guards."""
    if check:
        _check_increasing(l1, "l1")
        _check_increasing(l2, "l2")
    out, comps = _simple_merge(l1, l2)
    if counters is not None:
        counters.merge_comparisons += comps
    return out


# ---------------------------------------------------------------------------
# recursive expansion
# ---------------------------------------------------------------------------

Kernel = Callable[[Sequence[int], int, int], "tuple[list[int], int]"]


def _lookup_kernel(g: Graph) -> Kernel:
    rows, largest = g.rows, g.largest_neighbor

    def kernel(cands, i, v):
        return _lookup(rows, largest, cands, i, v)

    return kernel


def _merge_kernel(g: Graph) -> Kernel:
    upper = g.upper

    def kernel(cands, i, v):
        return _merge(cands, upper[v])

    return kernel


def _checked_kernel(g: Graph) -> Kernel:
    """Table lookup that also runs the merge kernel and insists they agree."""
    lookup, merge = _lookup_kernel(g), _merge_kernel(g)

    def kernel(cands, i, v):
        m, probes = lookup(cands, i, v)
        other, _ = merge(cands, i, v)
        if m != other:
            raise StructuralError(
                f"kernel mismatch at v={v}, siblings={list(cands)}: lookup {m} vs merge {other}"
            )
        return m, probes

    return kernel


def _expand_lookup(d, node, cands, rows, largest, tree, c, calls, cost, sibs):
    kids = tree.extend_children(node, cands)
    c.nodes_created += len(kids)
    depth = node.depth + 1
    if depth >= d:
        return
    ncands = len(cands)
    calls[depth] += ncands
    sibs[depth] += ncands * ncands
    probes = 0
    for i in range(ncands):
        v = cands[i]
        bound = largest[v]
        row = rows[v]
        m = []
        for j in range(i + 1, ncands):
            w = cands[j]
            if w > bound:
                break
            probes += 1
            if row[w]:
                m.append(w)
        if m:
            _expand_lookup(d, kids[i], m, rows, largest, tree, c, calls, cost, sibs)
    cost[depth] += probes


def _expand_merge(d, node, cands, upper, tree, c, calls, cost, sibs):
    kids = tree.extend_children(node, cands)
    c.nodes_created += len(kids)
    depth = node.depth + 1
    if depth >= d:
        return
    n1 = len(cands)
    last1 = cands[-1]
    calls[depth] += n1
    sibs[depth] += n1 * n1
    comps = 0
    for k in range(n1):
        l2 = upper[cands[k]]
        m = []
        if l2:
            # inlined _merge(cands, l2)
            n2 = len(l2)
            last2 = l2[-1]
            i = j = 0
            while i < n1 and j < n2:
                a = cands[i]
                b = l2[j]
                comps += 1
                if a == b:
                    m.append(a)
                    i += 1
                    j += 1
                elif a > last2 or b > last1:
                    break
                elif a < b:
                    i += 1
                else:
                    j += 1
        if m:
            _expand_merge(d, kids[k], m, upper, tree, c, calls, cost, sibs)
    cost[depth] += comps


def _expand_generic(d, node, cands, tree, kernel, c, calls, cost, sibs):
    # Kernel-agnostic form of the loops above, with an explicit stack so that
    # depth is not limited by the interpreter's recursion limit.
    stack = [(node, cands)]
    while stack:
        node, cands = stack.pop()
        kids = tree.extend_children(node, cands)
        c.nodes_created += len(kids)
        depth = node.depth + 1
        if depth >= d:
            continue
        ncands = len(cands)
        calls[depth] += ncands
        sibs[depth] += ncands * ncands
        pending = []
        for i, v in enumerate(cands):
            m, work = kernel(cands, i, v)
            cost[depth] += work
            if m:
                pending.append((kids[i], m))
        stack.extend(reversed(pending))


def _layer_lists(counters, d, merge_based):
    counters.ensure_layers(d + 1)
    if merge_based:
        return counters.merge_calls, counters.merge_comps, counters.merge_siblings
    return counters.lookup_calls, counters.lookup_probes, counters.lookup_siblings


def _dispatch(g, d, tau, cands, tree, counters, kernel, merge_based, lists):
    calls, cost, sibs = lists
    if kernel is not None or d > RECURSION_DEPTH_LIMIT:
        if kernel is None:
            kernel = _merge_kernel(g) if merge_based else _lookup_kernel(g)
        _expand_generic(d, tau, cands, tree, kernel, counters, calls, cost, sibs)
    elif merge_based:
        _expand_merge(d, tau, cands, g.upper, tree, counters, calls, cost, sibs)
    else:
        _expand_lookup(d, tau, cands, g.rows, g.largest_neighbor, tree, counters, calls, cost, sibs)


def _fold_totals(counters, merge_based, cost, before):
    if merge_based:
        counters.merge_comparisons += sum(cost) - before
    else:
        counters.edge_probes += sum(cost) - before


def _run_expansion(g, d, tau, candidates, tree, counters, kernel, merge_based):
    """Expand ``tau`` with ``candidates`` as its children; fold work into counters."""
    if tau.depth >= d or not candidates:
        return
    lists = _layer_lists(counters, d, merge_based)
    before = sum(lists[1])
    _dispatch(g, d, tau, tuple(candidates), tree, counters, kernel, merge_based, lists)
    _fold_totals(counters, merge_based, lists[1], before)


def _build_from_vertices(g, d, vertices, tree, counters, kernel, merge_based):
    """Add each vertex in ``vertices`` as a top-level node and expand it."""
    lists = _layer_lists(counters, d, merge_based)
    before = sum(lists[1])
    upper = g.upper
    add_vertex = tree.add_vertex
    for u in vertices:
        counters.nodes_created += 1
        root = add_vertex(u)
        cands = upper[u]
        if cands and d > 0:
            _dispatch(g, d, root, cands, tree, counters, kernel, merge_based, lists)
    _fold_totals(counters, merge_based, lists[1], before)


def _check_dim(d: int) -> None:
    if d < 0:
        raise ValidationError(f"maximum dimension must be nonnegative, got {d}")


def new_add_cofaces(g: Graph, d: int, tau: Node, candidates: Sequence[int], tree: SimplexTree, counters: ComparisonCounters, *, verify_kernels: bool = False) -> None:
    """Add all cofaces of ``tau`` (built from ``candidates``) up to dimension ``d``.

    ``tau`` must already be in ``tree``; ``candidates`` are the future
    children of ``tau``: vertices above ``max(tau)`` adjacent to all of it.
    """
    kernel = _checked_kernel(g) if verify_kernels else None
    _run_expansion(g, d, tau, candidates, tree, counters, kernel, merge_based=False)


def add_cofaces(g: Graph, d: int, tau: Node, candidates: Sequence[int], tree: SimplexTree, counters: ComparisonCounters) -> None:
    """Merge-intersection counterpart of :func:`new_add_cofaces`."""
    _run_expansion(g, d, tau, candidates, tree, counters, None, merge_based=True)


def _vertex_rooted(g, d, counters, node_budget, kernel, merge_based):
    _check_dim(d)
    counters = ComparisonCounters() if counters is None else counters
    tree = SimplexTree(node_budget=node_budget)
    _build_from_vertices(g, d, range(g.n), tree, counters, kernel, merge_based)
    return tree, counters


def new_vr(g: Graph, d: int, *, counters: ComparisonCounters | None = None, node_budget: int | None = None, verify_kernels: bool = False) -> tuple[SimplexTree, ComparisonCounters]:
    """Clique complex of ``g`` up to dimension ``d`` via edge-table lookups.

    With ``verify_kernels`` every lookup is cross-checked against the merge
    intersection; a disagreement raises :class:`StructuralError`.
    """
    kernel = _checked_kernel(g) if verify_kernels else None
    return _vertex_rooted(g, d, counters, node_budget, kernel, merge_based=False)


def incremental_vr(g: Graph, d: int, *, counters: ComparisonCounters | None = None, node_budget: int | None = None) -> tuple[SimplexTree, ComparisonCounters]:
    """Clique complex of ``g`` up to dimension ``d`` via merge intersections."""
    return _vertex_rooted(g, d, counters, node_budget, None, merge_based=True)


def inductive_vr(g: Graph, d: int, *, counters: ComparisonCounters | None = None, node_budget: int | None = None) -> SimplexTree:
    """Level-by-level construction, intersecting all upper neighborhoods per simplex.

    Merge work for a simplex at depth ``k`` is recorded at layer ``k``.
    """
    _check_dim(d)
    c = ComparisonCounters() if counters is None else counters
    c.ensure_layers(d + 1)
    upper = g.upper
    tree = SimplexTree(node_budget=node_budget)
    frontier = []
    for u in range(g.n):
        c.nodes_created += 1
        frontier.append((tree.add_vertex(u), (u,)))
    for k in range(d):
        nxt = []
        for node, tau in frontier:
            common = upper[tau[0]]
            comps = 0
            for v in tau[1:]:
                if not common:
                    break
                common, work = _merge(common, upper[v])
                comps += work
            c.merge_calls[k] += 1
            c.merge_comps[k] += comps
            c.merge_comparisons += comps
            for w in common:
                c.nodes_created += 1
                nxt.append((tree.insert_child(node, w), tau + (w,)))
        if not nxt:
            break
        frontier = nxt
    return tree


def brute_force_vr(g: Graph, d: int) -> SimplexTree:
    """Every vertex subset of size at most ``d + 1`` whose pairs are all edges.

    Exponential in ``n``; intended for ``n`` up to about 25 with ``d <= 4``.
    """
    _check_dim(d)
    rows = g.rows
    tree = SimplexTree()
    level = {}
    for u in range(g.n):
        level[(u,)] = tree.add_vertex(u)
    for k in range(1, min(d, g.n - 1) + 1):
        nxt = {}
        for s in combinations(range(g.n), k + 1):
            if all(rows[a][b] for a, b in combinations(s, 2)):
                nxt[s] = tree.insert_child(level[s[:-1]], s[-1])
        if not nxt:
            break
        level = nxt
    return tree


def _inductive_with_counters(g, d, *, counters=None, node_budget=None):
    c = ComparisonCounters() if counters is None else counters
    return inductive_vr(g, d, counters=c, node_budget=node_budget), c


def _brute_with_counters(g, d, *, counters=None, node_budget=None):
    c = ComparisonCounters() if counters is None else counters
    tree = brute_force_vr(g, d)
    c.nodes_created += tree.size
    return tree, c


ALGORITHMS: dict[str, Callable[..., tuple[SimplexTree, ComparisonCounters]]] = {
    "new": new_vr,
    "incremental": incremental_vr,
    "inductive": _inductive_with_counters,
    "brute": _brute_with_counters,
}


def run_algorithm(name: str, g: Graph, d: int, *, workers: int = 1, node_budget: int | None = None) -> tuple[SimplexTree, ComparisonCounters]:
    """Dispatch by name; ``workers > 1`` selects the parallel variants."""
    if name not in ALGORITHMS:
        raise ValidationError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}")
    if workers != 1 and name in ("new", "incremental"):
        from .parallel import parallel_incremental_vr, parallel_new_vr

        fn = parallel_new_vr if name == "new" else parallel_incremental_vr
        return fn(g, d, workers, node_budget=node_budget)
    return ALGORITHMS[name](g, d, node_budget=node_budget)
