"""Minimum-weight cycle of undirected graphs with weights in [1, M] via triangles.

Pipeline: bisect for a boundary threshold t, build one two-layer triangle
instance per coloring from the exact distances <= t, shift the layer-crossing
weights by -t, solve each instance for its lightest triangle, and map the
winner back to a simple cycle of the input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coloring import Coloring, colorings_for
from .cycle_search import SweepOutcome, Threshold, find_threshold, path_from_table
from .graph import INF, CycleWitness, Graph, InvalidCycle, Kind, validate_cycle
from .instance import TriangleInstance, lightest_triangle_per_class
from .walks import two_paths_cycle

log = logging.getLogger(__name__)


class MalformedTable(ValueError):
    pass


def build_instance(g: Graph, t: int, table: SweepOutcome, coloring: Coloring) -> TriangleInstance:
    """Layer 1 copies every vertex, layer 2 copies the C2 vertices.

    Layer-2 edges copy the edges of g between C2 vertices. A layer-crossing
    edge (x1, z2) exists when d(x, z) <= t was settled, z is C2 and the vertex
    before z on the stored path is C1. Crossing edges outside (t - M, t] are
    dropped and the rest shifted down by t, so a crossing triangle certifies
    its weight + 2t.
    """
    if table.dist is None or table.pred is None:
        raise MalformedTable("table holds no distances (the sweep reported a cycle)")
    n = g.n
    M = g.weight_bound
    c2 = np.asarray(coloring.colors, dtype=bool)
    layer2 = np.nonzero(c2)[0]
    N = n + len(layer2)
    slot = np.full(n, -1, dtype=np.int64)
    slot[layer2] = n + np.arange(len(layer2))

    dist, pred = table.dist, table.pred
    settled = (dist <= t) & ~np.eye(n, dtype=bool)
    if np.any(settled & (pred < 0)):
        raise MalformedTable("settled pair without a predecessor")
    pred_c1 = np.zeros((n, n), dtype=bool)
    pred_c1[settled] = ~c2[pred[settled]]
    cross = settled & pred_c1 & c2[None, :] & (dist > t - M)

    A = np.full((N, N), INF, dtype=np.int64)
    xs, zs = np.nonzero(cross)
    w = dist[xs, zs] - t
    A[xs, slot[zs]] = w
    A[slot[zs], xs] = w
    for e in g.edges:
        if c2[e.u] and c2[e.v]:
            A[slot[e.u], slot[e.v]] = A[slot[e.v], slot[e.u]] = e.w

    part = np.concatenate([np.ones(n, dtype=np.int64), np.full(len(layer2), 2, dtype=np.int64)])
    back = np.concatenate([np.arange(n, dtype=np.int64), layer2.astype(np.int64)])
    return TriangleInstance(A, part, back, offset=2 * t, t=t, M=M,
                            meta={"coloring": coloring.tag, "kind": "undirected"})


def recover_cycle(g: Graph, inst: TriangleInstance, table: SweepOutcome, nodes) -> CycleWitness:
    """Map an instance triangle back to a simple cycle of g."""
    layer1 = [x for x in nodes if inst.part[x] == 1]
    if not layer1:
        cyc = tuple(int(inst.back_map[x]) for x in nodes)
        w = sum(g.weight(cyc[i], cyc[(i + 1) % 3]) for i in range(3))
        return CycleWitness(cyc, w)
    if len(layer1) != 1:
        raise InvalidCycle("triangle with two layer-1 nodes")
    x = int(inst.back_map[layer1[0]])
    y, z = (int(inst.back_map[v]) for v in nodes if inst.part[v] != 1)
    p_xy = path_from_table(table.pred, x, y)
    p_xz = path_from_table(table.pred, x, z)
    return two_paths_cycle(g, p_xy, p_xz)


@dataclass
class UndirectedReport:
    witness: Optional[CycleWitness]
    t: int
    upper_candidate: Optional[CycleWitness]
    colorings: int = 0
    instances: list = field(default_factory=list)

    @property
    def weight(self):
        return None if self.witness is None else self.witness.weight


def best_from_instances(g: Graph, thr: Threshold, colorings, keep_instances: bool = False):
    """Lightest cycle certified by any instance triangle, ignoring the upper candidate."""
    best = None
    kept = []
    for col in colorings:
        inst = build_instance(g, thr.t, thr.table, col)
        if keep_instances:
            kept.append(inst)
        for tri, w in lightest_triangle_per_class(inst):
            claimed = inst.certified_weight(tri, w)
            if best is not None and claimed >= best.weight:
                continue
            cyc = recover_cycle(g, inst, thr.table, tri)
            if cyc.weight > claimed:
                raise InvalidCycle(f"triangle {tri} certifies {claimed} but maps to weight {cyc.weight}")
            validate_cycle(g, cyc)
            best = cyc
    return best, kept


def run_undirected(
    g: Graph,
    *,
    seed: int = 0,
    trials: int | None = None,
    deterministic: bool = False,
    keep_instances: bool = False,
    threshold: Threshold | None = None,
) -> UndirectedReport:
    if g.kind is not Kind.UNDIRECTED:
        raise ValueError("girth_undirected needs an undirected graph")
    thr = threshold or find_threshold(g)
    if thr.candidate is None:
        return UndirectedReport(None, thr.t, None)
    validate_cycle(g, thr.candidate)
    colorings = colorings_for(g.n, deterministic, trials, seed)
    found, kept = best_from_instances(g, thr, colorings, keep_instances)
    best = thr.candidate
    if found is not None and found.weight < best.weight:
        best = found
    return UndirectedReport(best, thr.t, thr.candidate, len(colorings), kept)


def girth_undirected(g: Graph, *, seed: int = 0, trials: int | None = None,
                     deterministic: bool = False) -> Optional[CycleWitness]:
    """Minimum-weight cycle of an undirected graph, or None if acyclic.

    Randomized mode is exact with probability >= 1 - n^-3 at the default trial
    count; deterministic mode enumerates a verified perfect-hash coloring family.
    """
    return run_undirected(g, seed=seed, trials=trials, deterministic=deterministic).witness
