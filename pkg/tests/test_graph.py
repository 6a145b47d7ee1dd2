import io
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vrcomplex.errors import ParseError, ValidationError
from vrcomplex.graph import (
    PointCloud,
    build_graph,
    erdos_renyi,
    from_point_cloud,
    has_edge,
    read_edge_list,
    read_point_cloud,
    upper_neighbors,
    write_edge_list,
)
from vrcomplex.construction import ComparisonCounters

from conftest import complete_graph


def test_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.adjacency[1] == (0, 2)
    assert g.edge_count == 3


def test_example_graph(example):
    assert example.edge_count == 13
    assert example.largest_neighbor[2] == 10
    assert example.largest_neighbor[3] == 2


def test_edgeless():
    g = build_graph(4, [])
    assert g.largest_neighbor == (None, None, None, None)
    assert all(a == () for a in g.adjacency)


def test_duplicates_and_reversals_collapse():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.edges() == [(0, 1)]


@pytest.mark.parametrize("pair", [(0, 3), (-1, 0), (1, 1)])
def test_build_rejects_bad_pairs(pair):
    with pytest.raises(ValidationError, match=str(pair[0])):
        build_graph(3, [pair])


def test_has_edge(example):
    assert has_edge(example, 2, 10)
    assert not has_edge(example, 3, 10)
    assert not any(has_edge(example, u, u) for u in range(11))


def test_has_edge_counts_probes(example):
    c = ComparisonCounters()
    has_edge(example, 2, 10, c)
    has_edge(example, 3, 10, c)
    assert c.edge_probes == 2


def test_has_edge_range_check(example):
    with pytest.raises(ValidationError):
        has_edge(example, 0, 11)


def test_upper_neighbors(example):
    assert upper_neighbors(example, 2) == (3, 4, 5, 6, 7, 8, 9, 10)
    assert upper_neighbors(example, 0) == (1, 2, 10)
    assert upper_neighbors(example, 10) == ()


def test_erdos_renyi_extremes():
    assert erdos_renyi(5, 1.0, 3) == complete_graph(5)
    assert erdos_renyi(5, 0.0, 3).edge_count == 0


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_erdos_renyi_rejects_bad_p(p):
    with pytest.raises(ValidationError):
        erdos_renyi(5, p, 0)


def test_erdos_renyi_golden():
    # Regression pin for the documented PCG64 raw-draw scheme.
    assert erdos_renyi(10, 0.5, 42).edges() == [
        (0, 2), (0, 5), (0, 9), (1, 2), (1, 3), (1, 7), (1, 8), (2, 3), (2, 7), (3, 5), (3, 6),
        (3, 7), (3, 8), (4, 7), (4, 8), (4, 9), (5, 6), (5, 7), (5, 8), (5, 9), (6, 8), (7, 9),
    ]


def test_erdos_renyi_matches_independent_draws():
    n, p, seed = 17, 0.37, 2024
    raw = np.random.PCG64(seed).random_raw(n * (n - 1) // 2)
    pairs = list(combinations(range(n), 2))
    expected = [pr for pr, x in zip(pairs, raw) if int(x) >> 11 < p * 2**53]
    assert erdos_renyi(n, p, seed).edges() == expected


def test_erdos_renyi_deterministic():
    a = erdos_renyi(40, 0.3, 11)
    b = erdos_renyi(40, 0.3, 11)
    assert a == b
    assert np.array_equal(a.edge_table, b.edge_table)
    assert a != erdos_renyi(40, 0.3, 12)


def test_erdos_renyi_mean_edge_count():
    counts = [erdos_renyi(100, 0.1, s).edge_count for s in range(100)]
    expected = 4950 * 0.1
    sem = (4950 * 0.1 * 0.9) ** 0.5 / 10
    assert abs(np.mean(counts) - expected) <= 3 * sem


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), st.floats(0, 1), st.integers(0, 2**64 - 1))
def test_graph_invariants(n, p, seed):
    g = erdos_renyi(n, p, seed)
    table = g.edge_table
    assert np.array_equal(table, table.T)
    assert not table.diagonal().any()
    for u in range(n):
        assert list(g.adjacency[u]) == list(np.flatnonzero(table[u]))
        up = g.upper_neighbors(u)
        assert all(a < b for a, b in zip(up, up[1:]))
        assert all(w > u and g.has_edge(u, w) for w in up)
        if g.adjacency[u]:
            assert g.largest_neighbor[u] == max(g.adjacency[u])


def test_point_cloud_triangle():
    pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 3**0.5 / 2)]
    assert from_point_cloud(pts, 1.1) == complete_graph(3)
    assert from_point_cloud(pts, 0.9).edge_count == 0


def test_point_cloud_collinear():
    g = from_point_cloud(PointCloud.from_rows([(0,), (1,), (2,)]), 1.0)
    assert g.edges() == [(0, 1), (1, 2)]


def test_point_cloud_mixed_dimensions():
    with pytest.raises(ValidationError):
        PointCloud.from_rows([(0, 0), (1,)])
    with pytest.raises(ParseError, match="line 2"):
        read_point_cloud("0,0\n1\n")


def test_point_cloud_negative_epsilon():
    with pytest.raises(ValidationError):
        from_point_cloud([(0.0,)], -1)


def test_read_point_cloud():
    pc = read_point_cloud("0,0\n1.5,2\n")
    assert pc.points == ((0.0, 0.0), (1.5, 2.0))


def test_read_edge_list_path():
    g = read_edge_list("3 2\n0 1\n1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_read_edge_list_comments_and_stream():
    g = read_edge_list(io.StringIO("# header comment\n3 1\n# mid\n2 0\n"))
    assert g.edges() == [(0, 2)]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 1\n0 3\n", 2, "vertex 3 out of range"),
        ("3 1\n0 x\n", 2, "two integers"),
        ("3 1\n0 1 2\n", 2, "two integers"),
        ("3 2\n0 1\n", None, "declared 2 edges"),
        ("3 1\n0 1\n1 2\n", 3, "more than"),
        ("3 1\n1 1\n", 2, "self-loop"),
        ("", None, "header"),
    ],
)
def test_read_edge_list_errors(text, line, fragment):
    with pytest.raises(ParseError, match=fragment) as info:
        read_edge_list(text)
    assert info.value.line == line


def test_edge_list_round_trip():
    text = "# c\n4 4\n3 0\n0 3\n2 1\n0 1\n"
    canonical = "4 3\n0 1\n0 3\n1 2\n"
    assert write_edge_list(read_edge_list(text)) == canonical
    assert write_edge_list(read_edge_list(canonical)) == canonical


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 25), st.floats(0, 1), st.integers(0, 10**6))
def test_edge_list_round_trip_property(n, p, seed):
    g = erdos_renyi(n, p, seed)
    text = write_edge_list(g)
    assert text.endswith("\n")
    assert read_edge_list(text) == g
    assert write_edge_list(read_edge_list(text)) == text
