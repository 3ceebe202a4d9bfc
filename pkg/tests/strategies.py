"""Hypothesis strategies for small graphs."""

from hypothesis import strategies as st

from girth.graph import Edge, Graph, Kind


@st.composite
def undirected_graphs(draw, min_n=0, max_n=9, max_w=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = [Edge(u, v, draw(st.integers(1, max_w)), False) for u, v in chosen]
    return Graph(n, tuple(edges), Kind.UNDIRECTED)


@st.composite
def directed_graphs(draw, min_n=0, max_n=8, lo=0, hi=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = [Edge(u, v, draw(st.integers(lo, hi)), True) for u, v in chosen]
    return Graph(n, tuple(edges), Kind.DIRECTED)


@st.composite
def mixed_graphs(draw, min_n=0, max_n=8, max_w=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = []
    for u, v in chosen:
        how = draw(st.sampled_from(("edge", "fwd", "back", "both")))
        if how == "edge":
            edges.append(Edge(u, v, draw(st.integers(1, max_w)), False))
        if how in ("fwd", "both"):
            edges.append(Edge(u, v, draw(st.integers(1, max_w)), True))
        if how in ("back", "both"):
            edges.append(Edge(v, u, draw(st.integers(1, max_w)), True))
    return Graph(n, tuple(edges), Kind.MIXED)
