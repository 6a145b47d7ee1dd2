"""Vietoris-Rips (clique) complex construction on simplex trees."""

from .combinatorics import (
    MinimalPairDecomposition,
    SimplexPair,
    compare_pairs,
    compare_simplices,
    minimal_pair,
    missing_pair,
)
from .construction import (
    ComparisonCounters,
    add_cofaces,
    brute_force_vr,
    incremental_vr,
    inductive_vr,
    merge_intersect,
    new_add_cofaces,
    new_vr,
    simplified_merge_intersect,
    simplified_table_lookup,
    table_lookup,
)
from .errors import NodeBudgetExceeded, ParseError, StructuralError, ValidationError
from .graph import (
    Graph,
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
from .parallel import parallel_incremental_vr, parallel_new_vr
from .simplex_tree import Node, Simplex, SimplexTree

__version__ = "0.1.0"
