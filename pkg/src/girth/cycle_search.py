"""Bounded Dijkstra sweeps that either close a short cycle or settle short distances.

``cycle_or_distances`` grows a shortest-path tree from one source and only
relaxes an edge (u, v) when d[u] + w(u, v) <= t. The first edge that lands on
an already labelled vertex (other than u's tree parent) closes a cycle of
weight at most 2t. If that never happens, every vertex within distance t of
the source carries its exact distance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import INF, CycleWitness, Graph, Kind


@dataclass
class SourceOutcome:
    source: int
    cycle: Optional[CycleWitness] = None
    dist: dict = field(default_factory=dict)
    pred: dict = field(default_factory=dict)


@dataclass
class SweepOutcome:
    """Either ``cycle`` is set, or ``dist``/``pred`` hold every distance <= t.

    ``dist[s, v]`` is INF for pairs not settled; ``pred[s, v]`` is the vertex
    before v on the stored shortest s -> v path (-1 for v == s or unsettled).
    """

    t: int
    cycle: Optional[CycleWitness] = None
    dist: Optional[np.ndarray] = None
    pred: Optional[np.ndarray] = None

    @property
    def reported(self) -> bool:
        return self.cycle is not None


def _sorted_adjacency(g: Graph):
    if g.kind is not Kind.UNDIRECTED:
        raise ValueError("cycle search needs an undirected graph")
    if any(e.w < 1 for e in g.edges):
        raise ValueError("cycle search needs weights >= 1")
    return [[(w, v) for v, w, _ in nbrs] for nbrs in g.neighbors()]


def _tree_path(pred: dict, v: int) -> list[int]:
    path = [v]
    while pred[path[-1]] != -1:
        path.append(pred[path[-1]])
    return path[::-1]


def _close_cycle(pred: dict, dist: dict, u: int, v: int, w: int) -> CycleWitness:
    # Both tree paths diverge after their lowest common ancestor, so the two
    # branches plus edge (u, v) form a simple cycle.
    pu, pv = _tree_path(pred, u), _tree_path(pred, v)
    k = 0
    while k < min(len(pu), len(pv)) and pu[k] == pv[k]:
        k += 1
    lca = pu[k - 1]
    nodes = pu[k - 1:] + pv[k:][::-1]
    weight = dist[u] - dist[lca] + w + dist[v] - dist[lca]
    return CycleWitness(tuple(nodes), int(weight))


def cycle_or_distances(g: Graph, s: int, t: int, adjacency=None) -> SourceOutcome:
    adj = adjacency if adjacency is not None else _sorted_adjacency(g)
    dist = {s: 0}
    pred = {s: -1}
    heap = [(0, s)]
    while heap:
        du, u = heapq.heappop(heap)
        parent = pred[u]
        # adjacency is sorted by weight: the first failing guard ends the scan
        for w, v in adj[u]:
            if du + w > t:
                break
            if v == parent:
                continue
            if v in dist:
                return SourceOutcome(s, cycle=_close_cycle(pred, dist, u, v, w))
            dist[v] = du + w
            pred[v] = u
            heapq.heappush(heap, (du + w, v))
    return SourceOutcome(s, dist=dist, pred=pred)


def min_cycle_sweep(g: Graph, t: int, adjacency=None) -> SweepOutcome:
    """Run the bounded search from every source and keep the lightest cycle."""
    adj = adjacency if adjacency is not None else _sorted_adjacency(g)
    best = None
    outcomes = []
    for s in range(g.n):
        out = cycle_or_distances(g, s, t, adj)
        if out.cycle is not None:
            if best is None or out.cycle.weight < best.weight:
                best = out.cycle
        elif best is None:
            outcomes.append(out)
    if best is not None:
        return SweepOutcome(t, cycle=best)
    dist = np.full((g.n, g.n), INF, dtype=np.int64)
    pred = np.full((g.n, g.n), -1, dtype=np.int64)
    for out in outcomes:
        s = out.source
        for v, d in out.dist.items():
            dist[s, v] = d
            pred[s, v] = out.pred[v]
    return SweepOutcome(t, dist=dist, pred=pred)


@dataclass
class Threshold:
    """A boundary point: no report at ``t``, report (``candidate``) at t + 1.

    For an acyclic graph ``t`` is n*M and ``candidate`` is None.
    """

    t: int
    candidate: Optional[CycleWitness]
    table: SweepOutcome
    sweeps: int = 0


def find_threshold(g: Graph) -> Threshold:
    """Bisect [0, nM] for a point where the sweep flips from distances to a cycle.

    Only the boundary matters, not monotonicity: ``lo`` always holds a
    no-report value and ``hi`` a reporting one.
    """
    adj = _sorted_adjacency(g)
    hi = max(1, g.n * g.weight_bound)
    top = min_cycle_sweep(g, hi, adj)
    sweeps = 1
    if not top.reported:
        return Threshold(hi, None, top, sweeps)
    lo = 0
    lo_out = None
    hi_out = top
    while hi - lo > 1:
        mid = (lo + hi) // 2
        out = min_cycle_sweep(g, mid, adj)
        sweeps += 1
        if out.reported:
            hi, hi_out = mid, out
        else:
            lo, lo_out = mid, out
    if lo_out is None:
        lo_out = min_cycle_sweep(g, lo, adj)
        sweeps += 1
    return Threshold(lo, hi_out.cycle, lo_out, sweeps)


def path_from_table(pred: np.ndarray, s: int, v: int) -> list[int]:
    """Shortest s -> v path stored in a distance-branch predecessor table."""
    path = [v]
    while path[-1] != s:
        p = int(pred[s, path[-1]])
        if p < 0:
            raise KeyError(f"no stored path {s} -> {v}")
        path.append(p)
    return path[::-1]
