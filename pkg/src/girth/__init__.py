"""Exact minimum-weight cycles through minimum-triangle reductions.

Undirected graphs with weights in [1, M], directed graphs with weights in
[-M, M] and mixed graphs with weights in [1, M], plus the triangle -> k-cycle
gadget and brute-force oracles to check all of it.
"""

from .graph import (
    INF, CycleWitness, Edge, Graph, GraphError, InvalidCycle, Kind, apply_random_potentials, parse_graph,
    plant_negative_cycle, random_graph, read_graph, serialize_graph, validate_cycle, write_graph,
)
from .oracles import NegativeCycle, OracleTooLarge, oracle_apsp, oracle_girth, oracle_min_kcycle, oracle_min_triangle
from .minplus import distance_product, min_triangle
from .undirected import girth_undirected, run_undirected
from .directed import girth_directed, run_directed, sampled_estimates
from .mixed import girth_mixed, run_mixed
from .kcycle import girth_via_kcycle, triangle_to_kcycle, tripartitize
from .instance import TriangleInstance, load_instance


def girth(g: Graph, seed: int = 0, **kw):
    """Dispatch on the graph kind; returns a CycleWitness or None."""
    if g.kind is Kind.UNDIRECTED:
        return girth_undirected(g, seed=seed, **kw)
    if g.kind is Kind.DIRECTED:
        return girth_directed(g, seed=seed)
    return girth_mixed(g, seed=seed, **kw)


__all__ = [
    "INF", "CycleWitness", "Edge", "Graph", "GraphError", "InvalidCycle", "Kind", "NegativeCycle",
    "OracleTooLarge", "TriangleInstance", "apply_random_potentials", "distance_product", "girth",
    "girth_directed", "girth_mixed", "girth_undirected", "girth_via_kcycle", "load_instance",
    "min_triangle", "oracle_apsp", "oracle_girth", "oracle_min_kcycle", "oracle_min_triangle",
    "parse_graph", "plant_negative_cycle", "random_graph", "read_graph", "run_directed", "run_mixed",
    "run_undirected", "sampled_estimates", "serialize_graph", "triangle_to_kcycle", "tripartitize",
    "validate_cycle", "write_graph",
]
