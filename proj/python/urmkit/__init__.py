"""Solvers and generators for uniquely restricted matchings."""

from ._core import (
    Graph,
    build_gadget,
    free_tree_count,
    line_graph,
    max_urm_bb,
    max_urm_brute,
    parse_graph,
    partition_count,
    random_graph,
    root_graph,
    solve_treewidth,
    urm_line_decide,
    verify,
    verify_by_enumeration,
    write_graph,
)

__all__ = [
    "Graph",
    "build_gadget",
    "free_tree_count",
    "line_graph",
    "max_urm_bb",
    "max_urm_brute",
    "parse_graph",
    "partition_count",
    "random_graph",
    "root_graph",
    "solve_treewidth",
    "urm_line_decide",
    "verify",
    "verify_by_enumeration",
    "write_graph",
]
