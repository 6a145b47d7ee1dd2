"""Per-root parallel construction.

The subtree under each top-level vertex depends only on the (read-only)
graph, so roots are independent work units. Workers pull roots from a
shared queue ordered by decreasing upper degree, since low labels tend to
own the largest subtrees. Each worker builds whole subtrees in private
trees with private counters. The main thread then grafts them in vertex
order, so the merged tree and the summed counters do not depend on
scheduling.

Workers are threads. Under CPython's GIL this gives no speedup for the
pure-Python kernels; the point is the decomposition and its determinism.
"""

from __future__ import annotations

import os
import threading
from collections import deque
from dataclasses import dataclass, field

from .construction import (
    ComparisonCounters,
    _build_from_vertices,
    _check_dim,
)
from .errors import ValidationError
from .graph import Graph
from .simplex_tree import SimplexTree

__all__ = ["WorkerPlan", "plan_workers", "resolve_workers", "run_parallel", "parallel_new_vr", "parallel_incremental_vr"]


@dataclass
class WorkerPlan:
    """Root scheduling order and, after a run, which worker built each root."""

    worker_count: int
    order: tuple[int, ...]
    assignment: dict[int, int] = field(default_factory=dict)


def resolve_workers(workers: int) -> int:
    """Map the CLI convention ``0 -> logical CPU count``; reject negatives."""
    if workers < 0:
        raise ValidationError(f"workers must be >= 0, got {workers}")
    if workers == 0:
        return os.cpu_count() or 1
    return workers


def plan_workers(g: Graph, workers: int) -> WorkerPlan:
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    order = tuple(sorted(range(g.n), key=lambda u: (-len(g.upper[u]), u)))
    return WorkerPlan(workers, order)


def _build_root(g, d, u, merge_based, node_budget):
    c = ComparisonCounters()
    tree = SimplexTree(node_budget=node_budget)
    _build_from_vertices(g, d, (u,), tree, c, None, merge_based)
    return tree, c


def run_parallel(g: Graph, d: int, workers: int, *, merge_based: bool = False, node_budget: int | None = None, plan: WorkerPlan | None = None) -> tuple[SimplexTree, ComparisonCounters, WorkerPlan]:
    """Build the complex with ``workers`` threads; also return the realized plan."""
    _check_dim(d)
    workers = resolve_workers(workers)
    plan = plan_workers(g, workers) if plan is None else plan
    if sorted(plan.order) != list(range(g.n)):
        raise ValidationError("plan order must list every vertex exactly once")
    results: dict[int, tuple[SimplexTree, ComparisonCounters]] = {}
    queue = deque(plan.order)
    lock = threading.Lock()
    errors: list[BaseException] = []

    def worker(idx: int) -> None:
        while True:
            with lock:
                if errors or not queue:
                    return
                u = queue.popleft()
            try:
                out = _build_root(g, d, u, merge_based, node_budget)
            except BaseException as exc:  # re-raised on the main thread
                with lock:
                    errors.append(exc)
                return
            with lock:
                results[u] = out
                plan.assignment[u] = idx

    active = min(plan.worker_count, max(g.n, 1))
    if active == 1:
        worker(0)
    else:
        threads = [threading.Thread(target=worker, args=(i,), daemon=True) for i in range(active)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    if errors:
        raise errors[0]

    tree = SimplexTree(node_budget=node_budget)
    counters = ComparisonCounters()
    counters.ensure_layers(d + 1)
    for u in range(g.n):
        sub, c = results[u]
        tree.graft(sub)
        counters += c
    return tree, counters, plan


def parallel_new_vr(g: Graph, d: int, workers: int, *, node_budget: int | None = None) -> tuple[SimplexTree, ComparisonCounters]:
    tree, counters, _ = run_parallel(g, d, workers, merge_based=False, node_budget=node_budget)
    return tree, counters


def parallel_incremental_vr(g: Graph, d: int, workers: int, *, node_budget: int | None = None) -> tuple[SimplexTree, ComparisonCounters]:
    tree, counters, _ = run_parallel(g, d, workers, merge_based=True, node_budget=node_budget)
    return tree, counters
