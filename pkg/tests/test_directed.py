import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girth.directed import (
    NoCycle, build_tripartite, detect_negative_cycle, girth_directed, reduce_weights, run_directed,
    sampled_estimates, search_threshold, stage_count, threshold_and_reduce, triangle_walk,
)
from girth.graph import INF, Graph, Kind, apply_random_potentials, parse_graph, plant_negative_cycle, \
    random_graph, to_weight_matrix, validate_cycle
from girth.instance import TriangleInstance
from girth.minplus import distance_product, min_triangle
from girth.oracles import NegativeCycle, oracle_apsp, oracle_girth
from girth.walks import lightest_cycle_in_walk

from strategies import directed_graphs

TRI = parse_graph("p directed 3 3\na 1 2 2\na 2 3 -1\na 3 1 3\n")
TWO = parse_graph("p directed 2 2\na 1 2 1\na 2 1 1\n")


def _shifted(draw_graph, bound, seed):
    g, _ = apply_random_potentials(draw_graph, bound, seed)
    return g


def _dist_matrix(g):
    d, neg = oracle_apsp(g)
    out = np.array([[INF if math.isinf(x) else int(x) for x in row] for row in d], dtype=np.int64)
    return out.reshape(g.n, g.n), neg


def test_single_arc_estimates():
    g = parse_graph("p directed 2 1\na 1 2 7\n")
    est = sampled_estimates(g)
    assert np.array_equal(est.D, to_weight_matrix(g, distance_form=True))
    one = sampled_estimates(Graph(1, (), Kind.DIRECTED))
    assert one.D.tolist() == [[0]]
    assert stage_count(1) == 0


def test_stage_sets_shrink():
    g = random_graph(40, 0.1, 0, 5, Kind.DIRECTED, seed=1)
    est = sampled_estimates(g, seed=3)
    assert len(est.stages) == stage_count(40) + 1
    for prev, cur in zip(est.stages, est.stages[1:]):
        assert set(cur.tolist()) <= set(prev.tolist())


@given(directed_graphs(max_n=8, lo=0, hi=9), st.integers(0, 9), st.integers(0, 10**6))
def test_estimates_contract(g, bound, seed):
    g = _shifted(g, bound, seed)
    est = sampled_estimates(g, seed)
    d, _ = _dist_matrix(g)
    assert np.all(est.D >= d)
    assert np.array_equal(distance_product(est.D, est.D), d)
    for i in range(g.n):
        for j in range(g.n):
            if est.D[i, j] < INF and i != j:
                walk = est.walk(i, j)
                assert walk[0] == i and walk[-1] == j
                assert sum(g.weight(walk[k], walk[k + 1]) for k in range(len(walk) - 1)) == est.D[i, j]
                assert est.pred[i, j] == walk[-2] and est.succ[i, j] == walk[1]


def test_negative_cycle_detection():
    pos = random_graph(10, 0.4, 1, 9, Kind.DIRECTED, seed=2)
    assert not detect_negative_cycle(sampled_estimates(pos))
    shifted, _ = apply_random_potentials(pos, 9, seed=2)
    assert not detect_negative_cycle(sampled_estimates(shifted))
    bad = plant_negative_cycle(pos, 4, seed=3)
    assert detect_negative_cycle(sampled_estimates(bad)) == oracle_apsp(bad)[1] is True
    with pytest.raises(NegativeCycle):
        girth_directed(bad)


def test_tripartite_examples():
    inst = build_tripartite(TRI, sampled_estimates(TRI))
    assert min_triangle(inst.adjacency)[3] == 4
    inst = build_tripartite(TWO, sampled_estimates(TWO))
    tri = min_triangle(inst.adjacency)
    assert tri[3] == 2
    dag = parse_graph("p directed 3 3\na 1 2 1\na 2 3 1\na 1 3 1\n")
    assert min_triangle(build_tripartite(dag, sampled_estimates(dag)).adjacency) is None


def _single_triangle(d12, d31, closing, M):
    A = np.full((3, 3), INF, dtype=np.int64)
    A[0, 1] = A[1, 0] = d12
    A[2, 0] = A[0, 2] = d31
    A[1, 2] = A[2, 1] = closing
    return TriangleInstance(A, np.array([1, 2, 3]), np.array([0, 0, 0]), 0, 0, M)


def test_threshold_example():
    inst = _single_triangle(4, 5, 1, 2)
    assert search_threshold(inst, 2) == 5
    red = threshold_and_reduce(inst, 2)
    assert (red.adjacency[0, 1], red.adjacency[2, 0]) == (-1, 0)
    assert red.offset == 10


def test_reduce_drops_heavy_edge():
    inst = _single_triangle(7, 5, 1, 2)  # t = 5, D = t + M
    red = reduce_weights(inst, 5, 2)
    assert red.adjacency[0, 1] == INF


def test_acyclic_raises_no_cycle():
    dag = parse_graph("p directed 3 2\na 1 2 1\na 2 3 1\n")
    with pytest.raises(NoCycle):
        threshold_and_reduce(build_tripartite(dag, sampled_estimates(dag)), 1)
    assert girth_directed(dag) is None


@given(directed_graphs(max_n=8, lo=0, hi=9), st.integers(0, 9), st.integers(0, 10**6))
def test_reduction_preserves_min_triangle(g, bound, seed):
    g = _shifted(g, bound, seed)
    M = g.weight_bound
    inst = build_tripartite(g, sampled_estimates(g, seed))
    before = min_triangle(inst.adjacency)
    if before is None:
        return
    red = threshold_and_reduce(inst, M)
    assert red.weights_within(-M, M)
    after = min_triangle(red.adjacency)
    assert after[3] + red.offset == before[3]
    girth = oracle_girth(g).weight
    assert red.t <= girth // 2
    assert girth <= 2 * red.t + M


def test_examples():
    assert girth_directed(TRI).weight == 4
    assert girth_directed(TWO).weight == 2


@given(directed_graphs(max_n=8, lo=0, hi=9), st.integers(0, 9), st.integers(0, 10**6))
def test_matches_oracle_and_preshift(g, bound, seed):
    h = _shifted(g, bound, seed)
    rep = run_directed(h, seed=seed)
    want = oracle_girth(g).weight
    assert rep.weight == want == oracle_girth(h).weight
    if rep.witness is not None:
        validate_cycle(h, rep.witness)
    assert not rep.diagnostics


@settings(max_examples=30)
@given(directed_graphs(min_n=2, max_n=7, lo=0, hi=6), st.integers(0, 6), st.integers(0, 10**6))
def test_every_triangle_maps_to_lighter_cycle(g, bound, seed):
    g = _shifted(g, bound, seed)
    est = sampled_estimates(g, seed)
    inst = build_tripartite(g, est)
    for tri, w in inst.triangles():
        cyc = lightest_cycle_in_walk(g, triangle_walk(est, inst, tri))
        validate_cycle(g, cyc)
        assert cyc.weight <= w


def test_seed_determinism():
    g, _ = apply_random_potentials(random_graph(25, 0.2, 0, 9, Kind.DIRECTED, seed=9), 5, seed=9)
    a = sampled_estimates(g, seed=4)
    b = sampled_estimates(g, seed=4)
    assert np.array_equal(a.D, b.D) and np.array_equal(a.pred, b.pred)
    assert run_directed(g, seed=4).witness == run_directed(g, seed=4).witness


def test_rejects_undirected():
    with pytest.raises(ValueError):
        run_directed(parse_graph("p undirected 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n"))
