"""End-to-end acceptance checks.

Each test appends one ``PASS``/``FAIL`` line to the session summary (see
``conftest.py``) and then asserts, so a failing criterion is both reported
and red. Tolerances are the stated ones; nothing is relaxed here.
"""

import statistics
import time
from itertools import combinations

import pytest

from vrcomplex.bench import ExperimentConfig, run_experiment
from vrcomplex.combinatorics import missing_pair
from vrcomplex.construction import (
    ComparisonCounters,
    brute_force_vr,
    incremental_vr,
    inductive_vr,
    mean_per_call,
    merge_intersect,
    new_vr,
    table_lookup,
)
from vrcomplex.errors import StructuralError
from vrcomplex.graph import build_graph, erdos_renyi
from vrcomplex.parallel import parallel_incremental_vr, parallel_new_vr
from vrcomplex.verify import check_minimal_pair_theorem, check_pair_theorem, equivalence_cases

from conftest import ACCEPTANCE_LINES, EXAMPLE_EDGES, networkx_cliques

pytestmark = pytest.mark.acceptance


def _report(label, ok, detail, started):
    elapsed = time.perf_counter() - started
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail} [{elapsed:.1f}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _criterion1_cases():
    return list(equivalence_cases(200, 5, 20, seed=0, probs=(0.1, 0.3, 0.5, 0.8), dims=(1, 2, 3, 4, 5)))


def test_c1_oracle_equivalence():
    t0 = time.perf_counter()
    bad = []
    cases = _criterion1_cases()
    for case in cases:
        g, d = case.graph(), case.d
        oracle = brute_force_vr(g, d).as_simplex_set()
        others = {
            "new": new_vr(g, d)[0].as_simplex_set(),
            "incremental": incremental_vr(g, d)[0].as_simplex_set(),
            "inductive": inductive_vr(g, d).as_simplex_set(),
        }
        bad += [(case.index, name) for name, s in others.items() if s != oracle]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    _report("1 oracle equivalence", ok, f"{len(cases)} graphs, {len(bad)} mismatches", t0)
    assert not bad
    assert elapsed < 30


def test_c2_example_golden():
    t0 = time.perf_counter()
    g = build_graph(11, EXAMPLE_EDGES)
    tree, _ = new_vr(g, 3)
    f = tree.f_vector()
    top = tree.simplices_at_level(3)
    oracle_f = tuple(sum(1 for s in networkx_cliques(g, 3) if len(s) == k + 1) for k in range(4))
    c = ComparisonCounters()
    looked = table_lookup(g, (1, 2, 10), 2, c)
    probes = c.edge_probes
    c = ComparisonCounters()
    merged = merge_intersect((2, 10), tuple(range(3, 11)), c)
    comps = c.merge_comparisons
    # the single match is found on the last comparison, after 10 has been
    # compared against each of 3..10 (plus the one comparison that advances past 2)
    ok = (
        f == oracle_f == (11, 13, 4, 1)
        and top == [(0, 1, 2, 10)]
        and looked == [10] and probes == 1
        and merged == [10] and comps == 1 + 8
        and time.perf_counter() - t0 < 1
    )
    _report("2 worked example golden", ok,
            f"f={f}, top={top}, lookup probes={probes}, merge comparisons={comps} (saved {comps - 1 - probes})", t0)
    assert f == (11, 13, 4, 1) and oracle_f == f
    assert top == [(0, 1, 2, 10)]
    assert looked == [10] and probes == 1
    assert merged == [10] and comps == 9


def test_c3_theorem_suite():
    t0 = time.perf_counter()
    lemma = 0
    for size in range(2, 8):
        for s in combinations(range(7), size):
            for s0, s1 in combinations(list(combinations(s, size - 1)), 2):
                outside = [set(p) for p in combinations(s, 2) if not set(p) <= set(s0) and not set(p) <= set(s1)]
                assert outside == [set(missing_pair(s, s0, s1))]
                lemma += 1
    pair_checks = main_checks = 0
    for i in range(100):
        n = 5 + i % 11
        p = (0.3, 0.5, 0.7, 0.9)[i % 4]
        g = erdos_renyi(n, p, 5000 + i)
        pair_checks += check_pair_theorem(g, 5)
        main_checks += check_minimal_pair_theorem(g, 5)
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60 and pair_checks > 0 and main_checks > 0
    _report("3 theorem suite", ok,
            f"missing-pair {lemma} cases, pair check {pair_checks} pairs, minimal pair {main_checks} simplices", t0)
    assert pair_checks > 0 and main_checks > 0
    assert elapsed < 60


@pytest.fixture(scope="module")
def layer_stats():
    lookup, merge = ComparisonCounters(), ComparisonCounters()
    for seed in range(100):
        g = erdos_renyi(100, 0.1, seed)
        new_vr(g, 3, counters=lookup)
        incremental_vr(g, 3, counters=merge)
    return lookup, merge


def test_c4a_probe_trend(layer_stats):
    t0 = time.perf_counter()
    lookup, _ = layer_stats
    parts, ok = [], True
    for k in (1, 2):
        target = 100 * 0.1**k
        probes = mean_per_call(lookup.lookup_probes, lookup.lookup_calls, k)
        sibs = mean_per_call(lookup.lookup_siblings, lookup.lookup_calls, k)
        inside = target / 3 <= probes <= target * 3
        ok &= inside
        parts.append(f"k={k}: probes/call={probes:.3f} window=[{target / 3:.3f}, {target * 3:.3f}] "
                     f"(siblings/call={sibs:.3f})")
    _report("4a probes per lookup ~ n p^k", ok, "; ".join(parts), t0)
    assert ok


def test_c4b_merge_vs_probe(layer_stats):
    t0 = time.perf_counter()
    lookup, merge = layer_stats
    probes2 = mean_per_call(lookup.lookup_probes, lookup.lookup_calls, 2)
    comps = {k: mean_per_call(merge.merge_comps, merge.merge_calls, k) for k in (1, 2)}
    ok = all(comps[k] >= 3 * probes2 for k in (1, 2))
    _report("4b merge comparisons >= 3x layer-2 probes", ok,
            f"comparisons/call k=1 {comps[1]:.3f}, k=2 {comps[2]:.3f}; probes/call k=2 {probes2:.3f}", t0)
    assert ok


def test_c5_speedup_trend():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(n=100, p_list=(0.1,), dim_list=(3, 4, 5, 6), trials=20, seed=0)
    results = run_experiment(cfg)
    mean = {(r.algorithm, r.dim): r.mean_time_us for r in results}
    ratios = [mean["incremental", d] / mean["new", d] for d in (3, 4, 5, 6)]
    drops = [(b - a) / a for a, b in zip(ratios, ratios[1:]) if b < a]
    trend_ok = len(drops) <= 1 and all(-x <= 0.10 for x in drops)
    level_ok = ratios[-1] >= 2
    detail = ", ".join(f"d={d}: {r:.2f}x" for d, r in zip((3, 4, 5, 6), ratios))
    _report("5 wall-time speedup", trend_ok and level_ok,
            f"{detail}; ratio at d=6 >= 2: {level_ok}; trend within noise: {trend_ok}", t0)
    assert level_ok
    assert trend_ok


def test_c6_parallel_determinism():
    t0 = time.perf_counter()
    mismatches = 0
    for seed in range(20):
        g = erdos_renyi(40, 0.1 + 0.05 * (seed % 8), seed)
        d = 2 + seed % 4
        serial = {"new": new_vr(g, d), "incremental": incremental_vr(g, d)}
        for workers in (1, 2, 4, 8):
            for name, fn in (("new", parallel_new_vr), ("incremental", parallel_incremental_vr)):
                tree, c = fn(g, d, workers)
                ref_tree, ref_c = serial[name]
                if tree.dump() != ref_tree.dump() or c.totals() != ref_c.totals():
                    mismatches += 1
    ok = mismatches == 0 and time.perf_counter() - t0 < 60
    _report("6 parallel determinism", ok, f"20 graphs x 4 worker counts x 2 algorithms, {mismatches} mismatches", t0)
    assert mismatches == 0


def test_c7_new_vr_uniqueness():
    t0 = time.perf_counter()
    bad, errors = 0, 0
    for case in _criterion1_cases():
        try:
            tree, c = new_vr(case.graph(), case.d, verify_kernels=True)
        except StructuralError:
            errors += 1
            continue
        if c.nodes_created != sum(tree.f_vector()):
            bad += 1
    ok = bad == 0 and errors == 0
    _report("7 New-VR uniqueness", ok, f"{bad} count mismatches, {errors} structural errors", t0)
    assert ok
