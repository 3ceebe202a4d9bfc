"""Minimum triangle -> minimum k-cycle gadget, and the composed girth pipeline.

Every layer-1 node v of a tripartite triangle instance becomes a zero-weight
path v_1 .. v_{k-2}; layer-2 neighbors attach to v_1, layer-3 neighbors to
v_{k-2}, and every non-path edge gains 5M. A triangle of weight W turns into a
k-cycle of weight W + 15M, while any k-cycle avoiding the paths weighs at
least 4kM >= 16M.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .coloring import colorings_for
from .cycle_search import find_threshold
from .directed import (
    NoCycle, build_tripartite, detect_negative_cycle, reduce_weights, sampled_estimates,
    search_threshold, threshold_and_reduce,
)
from .graph import INF, Edge, Graph, Kind, read_graph, serialize_graph, symmetrize
from .instance import TriangleInstance
from .mixed import build_mixed_instance, simple_paths
from .oracles import NegativeCycle, oracle_min_kcycle
from .undirected import build_instance

MAX_K = 6


def tripartitize(inst) -> TriangleInstance:
    """Three copies a, b, c of the nodes; each edge {u, v} yields its six cross-copy edges.

    Accepts an undirected Graph or a TriangleInstance. Triangles of the result
    are the original triangles (each once per copy rotation), with equal
    weight. ``back_map`` points at the source node.
    """
    if isinstance(inst, Graph):
        inst = _as_instance(inst)
    A = inst.adjacency
    n = inst.n
    T = np.full((3 * n, 3 * n), INF, dtype=np.int64)
    for src, dst in ((0, 1), (1, 2), (2, 0)):
        blk = T[src * n:(src + 1) * n, dst * n:(dst + 1) * n]
        blk[:] = A
        T[dst * n:(dst + 1) * n, src * n:(src + 1) * n] = A.T
    part = np.repeat(np.array([1, 2, 3], dtype=np.int64), n)
    back = np.tile(np.arange(n, dtype=np.int64), 3)
    return TriangleInstance(T, part, back, offset=0, t=inst.t, M=inst.M, class_rule="none",
                            meta={"kind": "tripartitized"})


def _as_instance(g: Graph) -> TriangleInstance:
    if g.kind is not Kind.UNDIRECTED:
        raise ValueError("tripartitize needs an undirected graph")
    A = np.full((g.n, g.n), INF, dtype=np.int64)
    for e in g.edges:
        A[e.u, e.v] = A[e.v, e.u] = e.w
    return TriangleInstance(A, np.ones(g.n, dtype=np.int64), np.arange(g.n, dtype=np.int64),
                            offset=0, t=0, M=g.weight_bound, class_rule="none")


@dataclass
class Gadget:
    graph: Graph
    k: int
    M: int
    offset: int
    back_map: list  # per gadget node: ("path", v, i) or ("node", v), v an input node
    instance_nodes: Optional[list] = None  # v -> node of the originating triangle instance

    def sidecar(self) -> dict:
        out = {"k": self.k, "M": self.M, "offset": self.offset,
               "back_map": [list(x) for x in self.back_map]}
        if self.instance_nodes is not None:
            out["instance_nodes"] = list(self.instance_nodes)
        return out

    def save(self, stem) -> tuple[Path, Path]:
        stem = Path(stem)
        gpath, jpath = stem.with_suffix(".gr"), stem.with_suffix(".json")
        gpath.write_text(serialize_graph(self.graph))
        jpath.write_text(json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n")
        return gpath, jpath

    def strip(self, nodes) -> tuple[tuple[int, int, int], bool]:
        """Instance triangle behind a k-cycle; flag says whether it used a path."""
        paths = {self.back_map[x][1] for x in nodes if self.back_map[x][0] == "path"}
        others = [self.back_map[x][1] for x in nodes if self.back_map[x][0] == "node"]
        if len(paths) == 1 and len(others) == 2:
            return (paths.pop(), others[0], others[1]), True
        return tuple(others), False


def load_gadget(stem) -> Gadget:
    stem = Path(stem)
    side = json.loads(stem.with_suffix(".json").read_text())
    g = read_graph(stem.with_suffix(".gr"), signed=True)
    back = [tuple(x) for x in side["back_map"]]
    if len(back) != g.n:
        raise ValueError(f"{stem}: back_map covers {len(back)} of {g.n} nodes")
    return Gadget(g, int(side["k"]), int(side["M"]), int(side["offset"]), back, side.get("instance_nodes"))


def triangle_to_kcycle(inst: TriangleInstance, k: int, M: int | None = None,
                       keep=None) -> Gadget:
    """Gadget graph with weights in [0, 6M] for a tripartite instance in [-M, M].

    ``keep`` optionally restricts the gadget to a subset of instance nodes.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    M = inst.M if M is None else M
    A = inst.adjacency
    part = inst.part
    n = inst.n
    fin = A < INF
    if np.any(fin & (part[:, None] == 1) & (part[None, :] == 1)):
        raise ValueError("instance is not tripartite: edge inside layer 1")
    if np.any(fin & (part[:, None] == part[None, :])):
        raise ValueError("instance is not tripartite")
    if fin.any():
        wmin, wmax = int(A[fin].min()), int(A[fin].max())
        if wmin < -M or wmax > M:
            raise ValueError(f"instance weights [{wmin}, {wmax}] exceed [-{M}, {M}]")
    nodes = np.arange(n) if keep is None else np.asarray(sorted(keep))
    ids: dict = {}
    back: list = []
    for v in nodes.tolist():
        if part[v] == 1:
            for i in range(k - 2):
                ids[(v, i)] = len(back)
                back.append(("path", v, i))
        else:
            ids[v] = len(back)
            back.append(("node", v))
    edges: list[Edge] = []
    for v in nodes.tolist():
        if part[v] == 1:
            edges.extend(Edge(ids[(v, i)], ids[(v, i + 1)], 0, False) for i in range(k - 3))
    chosen = set(nodes.tolist())
    ii, jj = np.nonzero(np.triu(fin, 1))
    for a, b in zip(ii.tolist(), jj.tolist()):
        if a not in chosen or b not in chosen:
            continue
        w = int(A[a, b]) + 5 * M
        if part[a] == 1 or part[b] == 1:
            v, u = (a, b) if part[a] == 1 else (b, a)
            end = 0 if part[u] == 2 else k - 3
            edges.append(Edge(ids[(v, end)], ids[u], w, False))
        else:
            edges.append(Edge(ids[a], ids[b], w, False))
    g = Graph(len(back), tuple(edges), Kind.UNDIRECTED, signed=True)
    return Gadget(g, k, M, 15 * M, back)


def triangle_nodes(inst: TriangleInstance) -> set:
    """Instance nodes lying on at least one triangle."""
    A = inst.adjacency
    fin = (A < INF).astype(np.int64)
    common = fin @ fin
    on = (fin * (common > 0)).any(axis=1)
    return set(np.nonzero(on)[0].tolist())


def _sub_instance(inst: TriangleInstance, mask: np.ndarray) -> TriangleInstance:
    idx = np.nonzero(mask)[0]
    return TriangleInstance(inst.adjacency[np.ix_(idx, idx)], inst.part[idx], idx.astype(np.int64),
                            offset=inst.offset, t=inst.t, M=inst.M, class_rule=inst.class_rule)


def instance_gadget(inst: TriangleInstance, k: int, M: int | None = None, tripartite: bool = True,
                    mask=None) -> Optional[Gadget]:
    """Gadget for the triangles of ``inst`` (optionally only among ``mask`` nodes).

    Two-layer instances are tripartitized first. Nodes on no triangle are
    dropped. Returns None when there is no triangle at all.
    """
    M = inst.M if M is None else M
    ident = np.arange(inst.n, dtype=np.int64)
    sub = inst
    if mask is not None:
        sub = _sub_instance(inst, np.asarray(mask, dtype=bool))
        ident = sub.back_map
    tri = sub
    if not tripartite:
        tri = tripartitize(sub)
        ident = ident[tri.back_map]
    keep = triangle_nodes(tri)
    if not keep:
        return None
    gadget = triangle_to_kcycle(tri, k, M, keep=keep)
    gadget.instance_nodes = [int(x) for x in ident]
    return gadget


def solve_gadget(gadget: Gadget):
    """Minimum k-cycle by brute force, stripped to ((a, b, c), W) in instance nodes, or None."""
    res = oracle_min_kcycle(gadget.graph, gadget.k)
    if res.weight is None:
        return None
    nodes, through_path = gadget.strip(res.witness.nodes)
    if not through_path:
        return None
    if gadget.instance_nodes is not None:
        nodes = tuple(gadget.instance_nodes[x] for x in nodes)
    return nodes, res.weight - gadget.offset


def instance_gadgets(inst: TriangleInstance, k: int, M: int | None = None) -> list[Gadget]:
    """Gadgets covering every triangle class of ``inst``.

    Two-layer instances certify differently by class, so they get one gadget
    for all triangles and one for the layer-2 triangles.
    """
    if int(inst.part.max(initial=1)) >= 3:
        out = [instance_gadget(inst, k, M, tripartite=True)]
    else:
        out = [instance_gadget(inst, k, M, tripartite=False),
               instance_gadget(inst, k, M, tripartite=False, mask=inst.part != 1)]
    return [x for x in out if x is not None]


def best_certified(inst: TriangleInstance, gadgets) -> Optional[int]:
    best = None
    for gad in gadgets:
        found = solve_gadget(gad)
        if found is not None:
            w = inst.certified_weight(*found)
            best = w if best is None else min(best, w)
    return best


def girth_via_kcycle(g: Graph, k: int, seed: int = 0, trials: int | None = None) -> Optional[int]:
    """Girth through cycle -> triangle -> k-cycle, solving the last step by brute force.

    Verification scale only: every gadget must fit the k-cycle oracle.
    """
    if not 4 <= k <= MAX_K:
        raise ValueError(f"k must lie in [4, {MAX_K}]")
    M = g.weight_bound
    if g.kind is Kind.UNDIRECTED:
        thr = find_threshold(g)
        if thr.candidate is None:
            return None
        best = thr.candidate.weight
        for col in colorings_for(g.n, False, trials, seed):
            inst = build_instance(g, thr.t, thr.table, col)
            w = best_certified(inst, instance_gadgets(inst, k, M))
            if w is not None:
                best = min(best, w)
        return best
    if g.kind is Kind.DIRECTED:
        est = sampled_estimates(g, seed)
        if detect_negative_cycle(est):
            raise NegativeCycle("graph contains a negative cycle")
        try:
            red = threshold_and_reduce(build_tripartite(g, est), M)
        except NoCycle:
            return None
        return best_certified(red, instance_gadgets(red, k, M))
    sp = simple_paths(g, sampled_estimates(symmetrize(g), seed))
    best = None
    for col in colorings_for(g.n, False, trials, seed):
        inst = build_mixed_instance(g, sp, col)
        try:
            red = reduce_weights(inst, search_threshold(inst, M), M)
        except NoCycle:
            continue
        w = best_certified(red, instance_gadgets(red, k, M))
        if w is not None:
            best = w if best is None else min(best, w)
    return best
