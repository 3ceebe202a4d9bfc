"""Reduced minimum-triangle instances and their on-disk form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import INF, Edge, Graph, Kind, read_graph, serialize_graph
from .minplus import min_triangle


@dataclass
class TriangleInstance:
    """Undirected triangle instance.

    ``adjacency`` is a symmetric weight matrix over instance nodes. ``part``
    gives each node's layer (1, 2 or 3) and ``back_map`` the source vertex it
    copies. A triangle touching layer 1 certifies a cycle of weight
    ``triangle + offset``; a triangle inside layers 2/3 certifies its own
    weight (``class_rule`` = "touches V1").
    """

    adjacency: np.ndarray
    part: np.ndarray
    back_map: np.ndarray
    offset: int
    t: int
    M: int
    class_rule: str = "touches V1"
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    def certified_weight(self, nodes, weight: int) -> int:
        touches = any(int(self.part[x]) == 1 for x in nodes)
        return weight + self.offset if touches else weight

    def edge_weights(self) -> np.ndarray:
        A = self.adjacency
        iu = np.triu_indices(self.n, 1)
        vals = A[iu]
        return vals[vals < INF]

    def weights_within(self, lo: int, hi: int) -> bool:
        w = self.edge_weights()
        return bool(w.size == 0 or (w.min() >= lo and w.max() <= hi))

    def triangles(self):
        """Enumerate every triangle as ((a, b, c), weight); brute force."""
        A = self.adjacency
        fin = A < INF
        n = self.n
        for a in range(n):
            nb = np.nonzero(fin[a])[0]
            nb = nb[nb > a]
            for i, b in enumerate(nb):
                for c in nb[i + 1:]:
                    if fin[b, c]:
                        yield (a, int(b), int(c)), int(A[a, b] + A[b, c] + A[a, c])

    def to_graph(self) -> Graph:
        A = self.adjacency
        ii, jj = np.nonzero(np.triu(A < INF, 1))
        edges = tuple(Edge(int(i), int(j), int(A[i, j]), False) for i, j in zip(ii, jj))
        return Graph(self.n, edges, Kind.UNDIRECTED, signed=True)

    def sidecar(self) -> dict:
        return {
            "partition": [int(x) for x in self.part],
            "back_map": [int(x) for x in self.back_map],
            "offset": int(self.offset),
            "class_rule": self.class_rule,
            "t": int(self.t),
            "M": int(self.M),
            **self.meta,
        }

    def save(self, stem) -> tuple[Path, Path]:
        stem = Path(stem)
        gpath = stem.with_suffix(".gr")
        jpath = stem.with_suffix(".json")
        gpath.write_text(serialize_graph(self.to_graph()))
        jpath.write_text(json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n")
        return gpath, jpath


def restrict(A: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Copy of A with rows/columns outside ``keep`` set to INF."""
    B = A.copy()
    drop = ~keep
    B[drop, :] = INF
    B[:, drop] = INF
    return B


def load_instance(stem) -> TriangleInstance:
    stem = Path(stem)
    g = read_graph(stem.with_suffix(".gr"), signed=True)
    side = json.loads(stem.with_suffix(".json").read_text())
    A = np.full((g.n, g.n), INF, dtype=np.int64)
    for e in g.edges:
        A[e.u, e.v] = A[e.v, e.u] = e.w
    meta = {k: v for k, v in side.items()
            if k not in ("partition", "back_map", "offset", "class_rule", "t", "M")}
    return TriangleInstance(
        adjacency=A,
        part=np.array(side["partition"], dtype=np.int64),
        back_map=np.array(side["back_map"], dtype=np.int64),
        offset=int(side["offset"]),
        t=int(side["t"]),
        M=int(side["M"]),
        class_rule=side["class_rule"],
        meta=meta,
    )


def lightest_triangle_per_class(inst: TriangleInstance) -> list[tuple[tuple[int, int, int], int]]:
    """Minimum triangle touching layer 1, and minimum triangle avoiding it."""
    out = []
    found = min_triangle(inst.adjacency)
    if found is not None:
        i, j, k, w = found
        out.append(((i, j, k), w))
        if any(int(inst.part[x]) == 1 for x in (i, j, k)):
            inner = min_triangle(restrict(inst.adjacency, inst.part != 1))
            if inner is not None:
                out.append((inner[:3], inner[3]))
    return out


def empty_like(n: int) -> np.ndarray:
    return np.full((n, n), INF, dtype=np.int64)


def instance_summary(inst: TriangleInstance) -> dict:
    w = inst.edge_weights()
    return {
        "nodes": inst.n,
        "edges": int(w.size),
        "min_weight": int(w.min()) if w.size else None,
        "max_weight": int(w.max()) if w.size else None,
    }

