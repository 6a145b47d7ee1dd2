"""Erdős–Rényi timing grid for the expansion algorithms.

Every cell ``(p, dim)`` runs ``trials`` graphs ``G(n, p)`` seeded with
``seed + trial``. Each graph is fed to every selected algorithm, so the
algorithms always see identical inputs. Only construction is timed (one
``perf_counter_ns`` interval per trial, GC paused). One untimed warm-up run
per cell and algorithm precedes the timed trials. Trials that exceed the
node budget count as failures. A cell where every trial failed renders as
``No Data Available``.
"""

from __future__ import annotations

import csv
import gc
import io
import math
import statistics
import time
from dataclasses import dataclass, field
from typing import Sequence

from .construction import ComparisonCounters, run_algorithm
from .errors import NodeBudgetExceeded, ValidationError
from .graph import erdos_renyi

__all__ = [
    "ExperimentConfig",
    "CellResult",
    "TrialRecord",
    "VerificationFailure",
    "run_experiment",
    "emit_table",
    "write_stats_csv",
    "NO_DATA",
]

NO_DATA = "No Data Available"
BENCH_ALGORITHMS = ("new", "incremental", "inductive")
METRICS = ("mean_time_us", "mean_edge_probes", "mean_merge_comparisons", "mean_nodes")


class VerificationFailure(AssertionError):
    """Algorithms disagreed on the simplex set of the same graph."""


@dataclass
class ExperimentConfig:
    n: int = 100
    p_list: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6)
    dim_list: Sequence[int] = (2, 3, 4, 5, 6)
    trials: int = 100
    seed: int = 0
    algorithms: Sequence[str] = ("new", "incremental")
    workers: int = 1
    node_budget: int | None = None
    warmup: bool = True

    def validate(self) -> None:
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if self.n < 0:
            raise ValidationError(f"n must be nonnegative, got {self.n}")
        for p in self.p_list:
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"probability {p} outside [0, 1]")
        for d in self.dim_list:
            if d < 0:
                raise ValidationError(f"dimension {d} is negative")
        if not self.algorithms:
            raise ValidationError("select at least one algorithm")
        for a in self.algorithms:
            if a not in BENCH_ALGORITHMS:
                raise ValidationError(f"unknown algorithm {a!r}; choose from {BENCH_ALGORITHMS}")

    def trial_seed(self, trial: int) -> int:
        return self.seed + trial


@dataclass
class TrialRecord:
    trial: int
    p: float
    dim: int
    algorithm: str
    time_us: float | None
    edge_probes: int | None
    merge_comparisons: int | None
    nodes_created: int | None
    f_vector: tuple[int, ...] = ()

    @property
    def failed(self) -> bool:
        return self.time_us is None


@dataclass
class CellResult:
    p: float
    dim: int
    algorithm: str
    trials: int
    failures: int = 0
    mean_time_us: float = math.nan
    stddev_time_us: float = math.nan
    mean_edge_probes: float = math.nan
    mean_merge_comparisons: float = math.nan
    mean_nodes: float = math.nan
    mean_f_vector: tuple[float, ...] = ()
    records: list[TrialRecord] = field(default_factory=list, repr=False)

    @property
    def exhausted(self) -> bool:
        return self.failures >= self.trials


def _timed(name, g, d, workers, node_budget):
    gc_was_enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        t0 = time.perf_counter_ns()
        tree, counters = run_algorithm(name, g, d, workers=workers, node_budget=node_budget)
        elapsed = time.perf_counter_ns() - t0
    finally:
        if gc_was_enabled:
            gc.enable()
    return tree, counters, elapsed / 1000.0


def _summarize(cell: CellResult) -> None:
    ok = [r for r in cell.records if not r.failed]
    cell.failures = len(cell.records) - len(ok)
    if not ok:
        return
    times = [r.time_us for r in ok]
    cell.mean_time_us = statistics.fmean(times)
    cell.stddev_time_us = statistics.stdev(times) if len(times) > 1 else 0.0
    cell.mean_edge_probes = statistics.fmean(r.edge_probes for r in ok)
    cell.mean_merge_comparisons = statistics.fmean(r.merge_comparisons for r in ok)
    cell.mean_nodes = statistics.fmean(r.nodes_created for r in ok)
    width = max(len(r.f_vector) for r in ok)
    cell.mean_f_vector = tuple(
        statistics.fmean(r.f_vector[k] if k < len(r.f_vector) else 0 for r in ok)
        for k in range(width)
    )


def run_experiment(cfg: ExperimentConfig, progress=None) -> list[CellResult]:
    """Run the grid; returns one :class:`CellResult` per (p, dim, algorithm).

    Trial 0 of every cell is a correctness spot check: all selected
    algorithms must produce the same simplex set, otherwise
    :class:`VerificationFailure` is raised.
    """
    cfg.validate()
    results: list[CellResult] = []
    for p in cfg.p_list:
        graphs = [erdos_renyi(cfg.n, p, cfg.trial_seed(t)) for t in range(cfg.trials)]
        for d in cfg.dim_list:
            cells = {a: CellResult(p, d, a, cfg.trials) for a in cfg.algorithms}
            if cfg.warmup:
                for a in cfg.algorithms:
                    try:
                        run_algorithm(a, graphs[0], d, workers=cfg.workers, node_budget=cfg.node_budget)
                    except NodeBudgetExceeded:
                        pass
            for t, g in enumerate(graphs):
                reference = None
                for a in cfg.algorithms:
                    try:
                        tree, counters, us = _timed(a, g, d, cfg.workers, cfg.node_budget)
                    except NodeBudgetExceeded:
                        cells[a].records.append(TrialRecord(t, p, d, a, None, None, None, None))
                        continue
                    cells[a].records.append(
                        TrialRecord(
                            t, p, d, a, us,
                            counters.edge_probes,
                            counters.merge_comparisons,
                            counters.nodes_created,
                            tree.f_vector(),
                        )
                    )
                    if t == 0:
                        simplices = tree.as_simplex_set()
                        if reference is None:
                            reference = (a, simplices)
                        elif simplices != reference[1]:
                            raise VerificationFailure(
                                f"{a} and {reference[0]} disagree on G(n={cfg.n}, p={p}, "
                                f"seed={cfg.trial_seed(t)}) at dim {d}"
                            )
                    del tree
            for a in cfg.algorithms:
                _summarize(cells[a])
                results.append(cells[a])
                if progress is not None:
                    progress(cells[a])
    return results


def _grid(results: Sequence[CellResult], algorithm: str):
    ps = sorted({r.p for r in results if r.algorithm == algorithm})
    dims = sorted({r.dim for r in results if r.algorithm == algorithm})
    cells = {(r.p, r.dim): r for r in results if r.algorithm == algorithm}
    return ps, dims, cells


_TITLES = {
    "mean_time_us": "Mean run times (microseconds)",
    "mean_edge_probes": "Mean edge probes",
    "mean_merge_comparisons": "Mean merge comparisons",
    "mean_nodes": "Mean simplex-tree nodes",
}


def emit_table(results: Sequence[CellResult], fmt: str = "md", metric: str = "mean_time_us") -> str:
    """Render one p-by-dimension table per algorithm.

    ``fmt`` is ``"md"`` (thousands separators, two decimals) or ``"csv"``
    (header ``algorithm,p,<dims...>``, plain decimals).
    """
    if metric not in METRICS:
        raise ValidationError(f"unknown metric {metric!r}; choose from {METRICS}")
    algorithms = list(dict.fromkeys(r.algorithm for r in results))
    if fmt in ("md", "markdown"):
        blocks = []
        for a in algorithms:
            ps, dims, cells = _grid(results, a)
            lines = [
                f"**{_TITLES[metric]}: {a}**",
                "",
                "| p \\ Dimension | " + " | ".join(map(str, dims)) + " |",
                "|---" * (len(dims) + 1) + "|",
            ]
            for p in ps:
                row = []
                for d in dims:
                    cell = cells.get((p, d))
                    if cell is None:
                        row.append("")
                    elif cell.exhausted:
                        row.append(NO_DATA)
                    else:
                        row.append(f"{getattr(cell, metric):,.2f}")
                lines.append(f"| {p:g} | " + " | ".join(row) + " |")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        dims = sorted({r.dim for r in results})
        writer.writerow(["algorithm", "p", *dims])
        for a in algorithms:
            ps, _, cells = _grid(results, a)
            for p in ps:
                row = [a, f"{p:g}"]
                for d in dims:
                    cell = cells.get((p, d))
                    if cell is None:
                        row.append("")
                    elif cell.exhausted:
                        row.append(NO_DATA)
                    else:
                        row.append(f"{getattr(cell, metric):.3f}")
                writer.writerow(row)
        return buf.getvalue()
    raise ValidationError(f"unknown output format {fmt!r}; use 'csv' or 'md'")


STATS_COLUMNS = ("trial", "algorithm", "dim", "time_us", "edge_probes", "merge_comparisons", "nodes_created", "p")


def write_stats_csv(records: Sequence[TrialRecord], out) -> None:
    """Per-trial counter dump. Failed trials leave the measurement columns empty."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(STATS_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.trial,
                r.algorithm,
                r.dim,
                "" if r.time_us is None else f"{r.time_us:.3f}",
                "" if r.edge_probes is None else r.edge_probes,
                "" if r.merge_comparisons is None else r.merge_comparisons,
                "" if r.nodes_created is None else r.nodes_created,
                "" if r.p is None else f"{r.p:g}",
            ]
        )


def counters_record(trial: int, algorithm: str, dim: int, time_us: float, counters: ComparisonCounters, p=None) -> TrialRecord:
    return TrialRecord(trial, p, dim, algorithm, time_us, counters.edge_probes, counters.merge_comparisons, counters.nodes_created)
