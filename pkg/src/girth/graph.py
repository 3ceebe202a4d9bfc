"""Weighted graphs with per-edge orientation, edge-list I/O and generators.

Vertices are 0-indexed in memory and 1-indexed in files.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

# +inf sentinel for integer weight matrices. Finite magnitudes are capped far
# below it so that the sum of two finite entries never reaches it.
INF = np.int64(1 << 61)
INF_INT = int(INF)
MAX_MAGNITUDE = 1 << 58


class GraphError(ValueError):
    """Raised on malformed input or a violated graph invariant."""


class Kind(str, enum.Enum):
    UNDIRECTED = "undirected"
    DIRECTED = "directed"
    MIXED = "mixed"


class Edge(NamedTuple):
    u: int
    v: int
    w: int
    directed: bool


@dataclass(frozen=True)
class Graph:
    """A simple weighted graph.

    ``edges`` holds directed arcs (u -> v) and undirected edges {u, v}. A vertex
    pair never carries both kinds; opposite arcs may coexist.

    ``signed`` relaxes the weight range of undirected/mixed graphs to [-M, M];
    only reduced triangle instances use it.
    """

    n: int
    edges: tuple[Edge, ...]
    kind: Kind
    signed: bool = False
    _lookup: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "_lookup", _validate(self))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weight_bound(self) -> int:
        """M: the largest absolute edge weight (at least 1)."""
        return max([1] + [abs(e.w) for e in self.edges])

    def step(self, u: int, v: int) -> Edge | None:
        """The edge that permits travel u -> v, if any."""
        return self._lookup.get((u, v))

    def weight(self, u: int, v: int) -> int | None:
        e = self._lookup.get((u, v))
        return None if e is None else e.w

    def neighbors(self) -> list[list[tuple[int, int, Edge]]]:
        """Outgoing travel options per vertex: ``(v, w, edge)`` triples."""
        out: list[list] = [[] for _ in range(self.n)]
        for (u, v), e in self._lookup.items():
            out[u].append((v, e.w, e))
        for lst in out:
            lst.sort(key=lambda x: (x[1], x[0]))
        return out

    def has_undirected(self) -> bool:
        return any(not e.directed for e in self.edges)

    def relabel(self, perm) -> "Graph":
        """Apply the vertex permutation ``perm`` (old id -> new id)."""
        edges = [Edge(int(perm[e.u]), int(perm[e.v]), e.w, e.directed) for e in self.edges]
        return Graph(self.n, tuple(edges), self.kind, self.signed)

    def with_weights(self, weights: Iterable[int], kind: Kind | None = None) -> "Graph":
        edges = [e._replace(w=int(w)) for e, w in zip(self.edges, weights)]
        return Graph(self.n, tuple(edges), kind or self.kind, self.signed)


def _validate(g: Graph) -> dict:
    if g.n < 0:
        raise GraphError("negative vertex count")
    lookup: dict[tuple[int, int], Edge] = {}
    undirected_pairs: set[frozenset] = set()
    directed_pairs: set[frozenset] = set()
    M = max([1] + [abs(e.w) for e in g.edges])
    if M * max(g.n, 1) > MAX_MAGNITUDE:
        raise GraphError(f"weight bound {M} times n={g.n} exceeds the overflow cap")
    for e in g.edges:
        u, v, w, directed = e
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError(f"edge {_fmt(e)}: vertex out of range")
        if u == v:
            raise GraphError(f"edge {_fmt(e)}: self-loop")
        if g.kind is Kind.UNDIRECTED and directed:
            raise GraphError(f"edge {_fmt(e)}: arc in an undirected graph")
        if g.kind is Kind.DIRECTED and not directed:
            raise GraphError(f"edge {_fmt(e)}: undirected edge in a directed graph")
        if g.kind is not Kind.DIRECTED and not g.signed and w < 1:
            raise GraphError(f"edge {_fmt(e)}: weight {w} out of range, must be >= 1")
        pair = frozenset((u, v))
        if directed:
            if pair in undirected_pairs:
                raise GraphError(f"edge {_fmt(e)}: pair already joined by an undirected edge")
            if (u, v) in lookup:
                raise GraphError(f"edge {_fmt(e)}: duplicate arc")
            directed_pairs.add(pair)
            lookup[(u, v)] = e
        else:
            if pair in undirected_pairs:
                raise GraphError(f"edge {_fmt(e)}: duplicate edge")
            if pair in directed_pairs:
                raise GraphError(f"edge {_fmt(e)}: pair already joined by an arc")
            undirected_pairs.add(pair)
            lookup[(u, v)] = e
            lookup[(v, u)] = e
    return lookup


def _fmt(e: Edge) -> str:
    tag = "a" if e.directed else "e"
    return f"{tag} {e.u + 1} {e.v + 1} {e.w}"


# --------------------------------------------------------------------------
# Edge-list text format


def parse_graph(text: str | bytes, signed: bool = False) -> Graph:
    """Parse the ``p``/``e``/``a`` edge-list format.

    Raises GraphError with the offending line number on syntax errors and with
    the offending edge on invariant violations.
    """
    if isinstance(text, bytes):
        text = text.decode()
    header = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "p":
                if header is not None:
                    raise GraphError(f"line {lineno}: duplicate header")
                if len(parts) != 4:
                    raise GraphError(f"line {lineno}: expected 'p <kind> <n> <m>'")
                kind = Kind(parts[1])
                header = (kind, int(parts[2]), int(parts[3]))
            elif tag in ("e", "a"):
                if header is None:
                    raise GraphError(f"line {lineno}: edge before header")
                if len(parts) != 4:
                    raise GraphError(f"line {lineno}: expected '{tag} u v w'")
                u, v, w = (int(x) for x in parts[1:])
                if not (1 <= u <= header[1] and 1 <= v <= header[1]):
                    raise GraphError(f"line {lineno}: vertex out of range 1..{header[1]}")
                edges.append(Edge(u - 1, v - 1, w, tag == "a"))
            else:
                raise GraphError(f"line {lineno}: unknown line type {tag!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: {exc}") from None
    if header is None:
        raise GraphError("missing 'p' header")
    kind, n, m = header
    if m != len(edges):
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges), kind, signed)


def serialize_graph(g: Graph) -> str:
    lines = [f"p {g.kind.value} {g.n} {g.m}"]
    lines.extend(_fmt(e) for e in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path, signed: bool = False) -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read(), signed=signed)


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_graph(g))


# --------------------------------------------------------------------------
# Matrices


def to_weight_matrix(g: Graph, distance_form: bool = False) -> np.ndarray:
    """Adjacency over the (min,+) semiring.

    Undirected edges give two finite entries (the arc-pair symmetrization).
    The diagonal is INF, or 0 when ``distance_form`` is set.
    """
    A = np.full((g.n, g.n), INF, dtype=np.int64)
    for (u, v), e in g._lookup.items():
        A[u, v] = e.w
    if distance_form:
        np.fill_diagonal(A, 0)
    return A


def symmetrize(g: Graph) -> Graph:
    """Replace every undirected edge by the two opposite arcs."""
    edges: list[Edge] = []
    for e in g.edges:
        if e.directed:
            edges.append(e)
        else:
            edges.append(Edge(e.u, e.v, e.w, True))
            edges.append(Edge(e.v, e.u, e.w, True))
    return Graph(g.n, tuple(edges), Kind.DIRECTED)


# --------------------------------------------------------------------------
# Generators


def random_graph(
    n: int,
    edge_probability: float,
    weight_low: int,
    weight_high: int,
    kind: Kind | str = Kind.UNDIRECTED,
    seed: int = 0,
    undirected_fraction: float = 0.5,
) -> Graph:
    """Seeded Erdos-Renyi style graph.

    Directed graphs draw each ordered pair independently. Mixed graphs draw
    each unordered pair once, then make it undirected with probability
    ``undirected_fraction`` or else one or both arcs.
    """
    kind = Kind(kind)
    if weight_low > weight_high:
        raise GraphError("empty weight range")
    if kind is not Kind.DIRECTED and weight_low < 1:
        raise GraphError(f"{kind.value} graphs need weights >= 1")
    rng = np.random.default_rng(seed)
    edges: list[Edge] = []
    for u in range(n):
        for v in range(u + 1, n):
            if kind is Kind.DIRECTED:
                for a, b in ((u, v), (v, u)):
                    if rng.random() < edge_probability:
                        edges.append(Edge(a, b, int(rng.integers(weight_low, weight_high + 1)), True))
            elif rng.random() < edge_probability:
                w = int(rng.integers(weight_low, weight_high + 1))
                if kind is Kind.UNDIRECTED or rng.random() < undirected_fraction:
                    edges.append(Edge(u, v, w, False))
                else:
                    r = rng.random()
                    if r < 1 / 3:
                        edges.append(Edge(u, v, w, True))
                    elif r < 2 / 3:
                        edges.append(Edge(v, u, w, True))
                    else:
                        edges.append(Edge(u, v, w, True))
                        edges.append(Edge(v, u, int(rng.integers(weight_low, weight_high + 1)), True))
    return Graph(n, tuple(edges), kind)


def apply_random_potentials(g: Graph, potential_bound: int, seed: int = 0) -> tuple[Graph, np.ndarray]:
    """Reweight arcs by w(u,v) + p(u) - p(v) with p drawn from [0, potential_bound].

    Every cycle keeps its weight, so a graph without negative cycles stays
    that way while individual arcs may turn negative. Returns the graph and p.
    """
    if g.kind is not Kind.DIRECTED:
        raise GraphError("potentials apply to directed graphs")
    if any(e.w < 0 for e in g.edges):
        raise GraphError("potentials need nonnegative input weights")
    rng = np.random.default_rng(seed)
    p = rng.integers(0, potential_bound + 1, size=g.n)
    return g.with_weights(e.w + int(p[e.u]) - int(p[e.v]) for e in g.edges), p


def plant_negative_cycle(g: Graph, length: int, seed: int = 0) -> Graph:
    """Overwrite a random directed cycle so that its total weight is -1."""
    if g.kind is not Kind.DIRECTED or g.n < 2:
        raise GraphError("need a directed graph on at least 2 vertices")
    rng = np.random.default_rng(seed)
    length = max(2, min(length, g.n))
    nodes = [int(x) for x in rng.choice(g.n, size=length, replace=False)]
    arcs = {(nodes[i], nodes[(i + 1) % length]) for i in range(length)}
    weights = [0] * (length - 1) + [-1]
    kept = [e for e in g.edges if (e.u, e.v) not in arcs]
    planted = [Edge(nodes[i], nodes[(i + 1) % length], weights[i], True) for i in range(length)]
    return Graph(g.n, tuple(kept + planted), Kind.DIRECTED)


# --------------------------------------------------------------------------
# Cycles


@dataclass(frozen=True)
class CycleWitness:
    nodes: tuple[int, ...]
    weight: int

    def __len__(self):
        return len(self.nodes)

    def edges(self):
        k = len(self.nodes)
        return [(self.nodes[i], self.nodes[(i + 1) % k]) for i in range(k)]


class InvalidCycle(ValueError):
    pass


def cycle_weight(g: Graph, nodes) -> int:
    total = 0
    k = len(nodes)
    for i in range(k):
        w = g.weight(nodes[i], nodes[(i + 1) % k])
        if w is None:
            raise InvalidCycle(f"no edge permits {nodes[i]} -> {nodes[(i + 1) % k]}")
        total += w
    return total


def validate_cycle(g: Graph, c: CycleWitness) -> None:
    """Raise InvalidCycle unless ``c`` is a simple cycle of g of its stated weight."""
    nodes = list(c.nodes)
    if len(set(nodes)) != len(nodes):
        raise InvalidCycle(f"repeated vertex in {nodes}")
    if len(nodes) < 2:
        raise InvalidCycle("a cycle needs at least two vertices")
    if len(nodes) == 2:
        a, b = nodes
        ea, eb = g.step(a, b), g.step(b, a)
        if ea is None or eb is None or not (ea.directed and eb.directed):
            raise InvalidCycle(f"2-cycle {nodes} would reuse an undirected edge")
    w = cycle_weight(g, nodes)
    if w != c.weight:
        raise InvalidCycle(f"stated weight {c.weight}, actual {w}")


def canonical_cycle(nodes) -> tuple[int, ...]:
    """Rotate so the smallest vertex comes first (direction preserved)."""
    nodes = list(nodes)
    i = nodes.index(min(nodes))
    return tuple(nodes[i:] + nodes[:i])
