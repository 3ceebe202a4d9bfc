import numpy as np
import pytest
from hypothesis import given, strategies as st

from girth.graph import (
    INF, CycleWitness, Edge, Graph, GraphError, InvalidCycle, Kind, apply_random_potentials, canonical_cycle,
    cycle_weight, parse_graph, plant_negative_cycle, random_graph, serialize_graph, symmetrize, to_weight_matrix,
    validate_cycle,
)
from girth.oracles import enumerate_simple_cycles, oracle_apsp, oracle_girth

from strategies import directed_graphs, mixed_graphs, undirected_graphs


def test_parse_k3():
    g = parse_graph("p undirected 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n")
    assert g.kind is Kind.UNDIRECTED
    assert g.n == 3 and g.m == 3
    assert {e.w for e in g.edges} == {1}
    assert g.weight(2, 0) == 1


def test_parse_opposite_arcs():
    g = parse_graph("p directed 2 2\na 1 2 5\na 2 1 -3\n")
    assert cycle_weight(g, (0, 1)) == 2


def test_parse_duplicate_edge():
    with pytest.raises(GraphError, match="duplicate"):
        parse_graph("p undirected 2 2\ne 1 2 1\ne 1 2 2\n")


@pytest.mark.parametrize("text, fragment", [
    ("p undirected 2 1\ne 1 1 1\n", "self-loop"),
    ("p undirected 2 1\ne 1 3 1\n", "out of range"),
    ("p undirected 2 1\ne 1 2 0\n", ">= 1"),
    ("p directed 2 1\ne 1 2 1\n", "undirected edge"),
    ("p undirected 2 1\na 1 2 1\n", "arc"),
    ("p mixed 2 2\ne 1 2 1\na 2 1 1\n", "joined"),
    ("p undirected 2 2\ne 1 2 1\n", "declares"),
    ("e 1 2 1\n", "header"),
    ("p undirected 2 1\ne 1 2\n", "line 2"),
    ("p weird 2 0\n", "line 1"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GraphError) as info:
        parse_graph(text)
    assert fragment in str(info.value)


def test_comments_and_mixed():
    g = parse_graph("c hello\np mixed 3 3\nc mid\ne 1 2 4\na 2 3 1\na 3 1 2\n")
    assert g.kind is Kind.MIXED
    assert g.step(1, 0).directed is False
    assert g.step(2, 1) is None


def test_overflow_cap():
    with pytest.raises(GraphError, match="overflow"):
        Graph(4, (Edge(0, 1, 1 << 58, True),), Kind.DIRECTED)


@given(st.one_of(undirected_graphs(), directed_graphs(lo=-9), mixed_graphs()))
def test_round_trip(g):
    text = serialize_graph(g)
    again = parse_graph(text, signed=g.signed)
    assert again == g
    assert serialize_graph(again) == text


def test_weight_matrix():
    k3 = parse_graph("p undirected 3 3\ne 1 2 1\ne 2 3 2\ne 1 3 3\n")
    A = to_weight_matrix(k3)
    assert np.array_equal(A, A.T)
    assert np.all(np.diagonal(A) == INF)
    assert np.all(np.diagonal(to_weight_matrix(k3, distance_form=True)) == 0)
    arc = parse_graph("p directed 2 1\na 1 2 4\n")
    A = to_weight_matrix(arc)
    assert A[0, 1] == 4 and A[1, 0] == INF


def test_symmetrize_mixed():
    g = parse_graph("p mixed 3 2\ne 1 2 4\na 2 3 1\n")
    s = symmetrize(g)
    A = to_weight_matrix(s)
    assert A[0, 1] == A[1, 0] == 4
    assert A[2, 1] == INF


@given(mixed_graphs())
def test_weight_matrix_only_real_connections(g):
    A = to_weight_matrix(g)
    for u in range(g.n):
        for v in range(g.n):
            assert (A[u, v] < INF) == (g.step(u, v) is not None)


def test_random_graph_complete_and_deterministic():
    g = random_graph(5, 1.0, 1, 1, Kind.UNDIRECTED, seed=3)
    assert g.m == 10
    a = random_graph(20, 0.3, 1, 10, Kind.UNDIRECTED, seed=7)
    b = random_graph(20, 0.3, 1, 10, Kind.UNDIRECTED, seed=7)
    assert a == b
    assert oracle_girth(a).weight == oracle_girth(b).weight
    for n in (0, 1):
        assert oracle_girth(random_graph(n, 1.0, 1, 5, seed=1)).weight is None


def test_random_graph_bad_bounds():
    with pytest.raises(GraphError):
        random_graph(4, 0.5, 0, 3, Kind.UNDIRECTED)
    with pytest.raises(GraphError):
        random_graph(4, 0.5, 3, 2, Kind.DIRECTED)


def test_potentials_examples():
    g = Graph(3, (Edge(0, 1, 1, True), Edge(1, 2, 1, True), Edge(2, 0, 2, True)), Kind.DIRECTED)
    same = g.with_weights(e.w + 5 - 5 for e in g.edges)
    assert same == g
    shifted = g.with_weights([1 + 0 - 1, 1 + 1 - 0, 2 + 0 - 0])
    assert [e.w for e in shifted.edges] == [0, 2, 2]
    assert cycle_weight(shifted, (0, 1, 2)) == 4


@given(directed_graphs(max_n=7), st.integers(0, 10), st.integers(0, 2**31 - 1))
def test_potentials_preserve_cycles(g, bound, seed):
    h, p = apply_random_potentials(g, bound, seed)
    assert all(0 <= x <= bound for x in p)
    before = dict(enumerate_simple_cycles(g))
    after = dict(enumerate_simple_cycles(h))
    assert before == after


def test_planted_negative_cycle():
    g = random_graph(8, 0.4, 1, 5, Kind.DIRECTED, seed=1)
    bad = plant_negative_cycle(g, 4, seed=2)
    assert oracle_apsp(bad)[1]


def test_validate_cycle():
    g = parse_graph("p mixed 3 3\ne 1 2 1\na 2 3 1\na 3 1 1\n")
    validate_cycle(g, CycleWitness((0, 1, 2), 3))
    with pytest.raises(InvalidCycle):
        validate_cycle(g, CycleWitness((0, 1, 2), 4))
    with pytest.raises(InvalidCycle):
        validate_cycle(g, CycleWitness((0, 2, 1), 3))
    with pytest.raises(InvalidCycle):
        validate_cycle(g, CycleWitness((0, 1), 2))
    with pytest.raises(InvalidCycle):
        validate_cycle(g, CycleWitness((0, 1, 0), 2))


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
