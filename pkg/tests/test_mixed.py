import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from girth.coloring import sample_colorings
from girth.directed import NoCycle, girth_directed, reduce_weights, sampled_estimates, search_threshold
from girth.graph import Kind, parse_graph, random_graph, symmetrize, validate_cycle
from girth.mixed import _loop_erase, build_mixed_instance, girth_mixed, mixed_walk, run_mixed, simple_paths
from girth.oracles import oracle_girth
from girth.walks import lightest_cycle_on_support

from strategies import mixed_graphs

EXAMPLE = parse_graph("p mixed 4 5\na 1 2 1\na 2 1 1\ne 2 3 5\ne 3 4 5\ne 4 2 5\n")


def test_example_two_cycle_beats_triangle():
    assert girth_mixed(EXAMPLE).weight == 2


def test_undirected_triangle_only():
    g = parse_graph("p mixed 3 3\ne 1 2 5\ne 2 3 5\ne 3 1 5\n")
    assert girth_mixed(g).weight == 15


def test_single_undirected_edge_is_acyclic():
    assert girth_mixed(parse_graph("p mixed 2 1\ne 1 2 3\n")) is None


@pytest.mark.parametrize("seed", range(6))
def test_purely_directed_matches_directed(seed):
    g = random_graph(14, 0.25, 1, 9, Kind.DIRECTED, seed=seed)
    a = girth_mixed(g, seed=seed)
    b = girth_directed(g, seed=seed)
    assert (a is None and b is None) or a.weight == b.weight


@pytest.mark.parametrize("seed", range(10))
def test_purely_undirected_matches_oracle(seed):
    g = random_graph(12, 0.3, 1, 9, Kind.UNDIRECTED, seed=seed)
    w = girth_mixed(g, seed=seed)
    want = oracle_girth(g).weight
    assert (w is None and want is None) or w.weight == want


@given(mixed_graphs(max_n=8), st.integers(0, 10**6))
def test_matches_oracle(g, seed):
    w = girth_mixed(g, seed=seed)
    want = oracle_girth(g).weight
    assert (w is None and want is None) or w.weight == want
    if w is not None:
        validate_cycle(g, w)


def test_loop_erase():
    assert _loop_erase([0, 1, 2, 1, 3]) == [0, 1, 3]
    assert _loop_erase([0, 1, 2, 3, 1, 4, 2, 5]) == [0, 1, 4, 2, 5]


@given(mixed_graphs(min_n=2, max_n=8), st.integers(0, 10**6))
def test_simple_paths_are_upper_bounds(g, seed):
    est = sampled_estimates(symmetrize(g), seed)
    sp = simple_paths(g, est)
    assert np.all(sp.D <= est.D)
    for (x, y), p in sp.paths.items():
        assert len(set(p)) == len(p) and p[0] == x and p[-1] == y
        assert sum(g.weight(p[i], p[i + 1]) for i in range(len(p) - 1)) == sp.D[x, y]


@settings(max_examples=30)
@given(mixed_graphs(min_n=2, max_n=7), st.integers(0, 10**6))
def test_no_false_triangles(g, seed):
    sp = simple_paths(g, sampled_estimates(symmetrize(g), seed))
    M = g.weight_bound
    for col in sample_colorings(g.n, 3, seed):
        inst = build_mixed_instance(g, sp, col)
        try:
            red = reduce_weights(inst, search_threshold(inst, M), M)
        except NoCycle:
            continue
        assert red.weights_within(-M, M)
        for tri, w in red.triangles():
            cyc = lightest_cycle_on_support(g, mixed_walk(g, sp, red, tri))
            assert cyc is not None
            validate_cycle(g, cyc)
            assert cyc.weight <= red.certified_weight(tri, w)


def test_rejects_nonpositive_weights():
    g = parse_graph("p directed 2 2\na 1 2 0\na 2 1 1\n")
    with pytest.raises(ValueError):
        run_mixed(g)
