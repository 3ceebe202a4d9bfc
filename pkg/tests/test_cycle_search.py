import numpy as np
import pytest
from hypothesis import given, strategies as st

from girth.cycle_search import cycle_or_distances, find_threshold, min_cycle_sweep, path_from_table
from girth.graph import INF, parse_graph, validate_cycle
from girth.oracles import oracle_apsp, oracle_girth

from strategies import undirected_graphs

K3 = parse_graph("p undirected 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n")
C4 = parse_graph("p undirected 4 4\ne 1 2 1\ne 2 3 2\ne 3 4 3\ne 4 1 4\n")
C6 = parse_graph("p undirected 6 6\n" + "".join(f"e {i} {i % 6 + 1} 1\n" for i in range(1, 7)))


def test_path_source():
    g = parse_graph("p undirected 3 2\ne 1 2 2\ne 2 3 3\n")
    out = cycle_or_distances(g, 0, 5)
    assert out.cycle is None
    assert out.dist == {0: 0, 1: 2, 2: 5}


def test_k3_below_and_above():
    out = cycle_or_distances(K3, 0, 1)
    assert out.cycle is None and out.dist == {0: 0, 1: 1, 2: 1}
    out = cycle_or_distances(K3, 0, 2)
    assert out.cycle is not None and out.cycle.weight == 3


def test_sweep_examples():
    forest = parse_graph("p undirected 5 3\ne 1 2 4\ne 2 3 1\ne 4 5 2\n")
    out = min_cycle_sweep(forest, 4)
    d, _ = oracle_apsp(forest)
    for s in range(5):
        for v in range(5):
            want = d[s][v] if d[s][v] <= 4 else INF
            assert out.dist[s, v] == want
    hit = min_cycle_sweep(K3, 2)
    assert hit.reported and hit.cycle.weight == 3
    c6 = min_cycle_sweep(C6, 2)
    assert not c6.reported
    d, _ = oracle_apsp(C6)
    for s in range(6):
        for v in range(6):
            if d[s][v] <= 2:
                assert c6.dist[s, v] == d[s][v]


def test_threshold_examples():
    forest = parse_graph("p undirected 4 3\ne 1 2 3\ne 2 3 1\ne 3 4 2\n")
    thr = find_threshold(forest)
    assert thr.candidate is None and thr.t == 4 * 3
    assert np.all(thr.table.dist < INF)
    thr = find_threshold(K3)
    assert thr.t == 1 and thr.candidate.weight == 3
    thr = find_threshold(C4)
    assert not min_cycle_sweep(C4, thr.t).reported
    assert min_cycle_sweep(C4, thr.t + 1).reported
    assert thr.candidate.weight <= 2 * thr.t + 2


@given(undirected_graphs(max_n=9), st.integers(0, 40))
def test_dichotomy(g, t):
    out = min_cycle_sweep(g, t)
    if out.reported:
        validate_cycle(g, out.cycle)
        assert out.cycle.weight <= 2 * t
        return
    d, _ = oracle_apsp(g)
    for s in range(g.n):
        for v in range(g.n):
            if d[s][v] <= t:
                assert out.dist[s, v] == d[s][v]
                p = path_from_table(out.pred, s, v)
                assert p[0] == s and p[-1] == v
                assert sum(g.weight(p[i], p[i + 1]) for i in range(len(p) - 1)) == d[s][v]
            else:
                assert out.dist[s, v] == INF


@given(undirected_graphs(max_n=9))
def test_boundary_point(g):
    thr = find_threshold(g)
    girth = oracle_girth(g).weight
    if girth is None:
        assert thr.candidate is None
        return
    validate_cycle(g, thr.candidate)
    assert thr.candidate.weight <= 2 * thr.t + 2
    assert girth <= thr.candidate.weight
    assert not min_cycle_sweep(g, thr.t).reported
    assert min_cycle_sweep(g, thr.t + 1).reported


def test_directed_input_rejected():
    g = parse_graph("p directed 2 2\na 1 2 1\na 2 1 1\n")
    with pytest.raises(ValueError):
        min_cycle_sweep(g, 3)


def test_missing_path():
    out = min_cycle_sweep(parse_graph("p undirected 2 0\n"), 3)
    with pytest.raises(KeyError):
        path_from_table(out.pred, 0, 1)
