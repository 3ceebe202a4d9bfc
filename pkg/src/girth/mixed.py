"""Minimum-weight cycle of mixed graphs with weights in [1, M].

Distance estimates come from the directed machinery on the arc-pair
symmetrization. Each coloring then gates only the pieces that touch an
undirected edge: the closing edge of a triangle, the last step of a layer-1
-> layer-2 path and the first step of a layer-3 -> layer-1 path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coloring import Coloring, colorings_for
from .directed import (
    DistanceEstimates, NoCycle, derived_seed, reduce_weights, sampled_estimates, search_threshold,
)
from .graph import INF, CycleWitness, Graph, symmetrize, validate_cycle
from .instance import TriangleInstance
from .minplus import min_triangle
from .walks import lightest_cycle_on_support

MAX_RETRIES = 3


@dataclass
class SimplePaths:
    """Loop-erased estimate paths: D, first/last steps and the vertex lists."""

    D: np.ndarray
    pred: np.ndarray
    succ: np.ndarray
    paths: dict


def _loop_erase(walk: list[int]) -> list[int]:
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            for u in out[pos[v] + 1:]:
                del pos[u]
            del out[pos[v] + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def simple_paths(g: Graph, est: DistanceEstimates) -> SimplePaths:
    """Replace every estimate walk by its loop erasure.

    Positive weights make every erased loop cost something, so the new values
    stay upper bounds that are no larger than before.
    """
    n = g.n
    D = np.full((n, n), INF, dtype=np.int64)
    np.fill_diagonal(D, 0)
    pred = np.full((n, n), -1, dtype=np.int64)
    succ = np.full((n, n), -1, dtype=np.int64)
    paths = {}
    xs, ys = np.nonzero((est.D < INF) & ~np.eye(n, dtype=bool))
    for x, y in zip(xs.tolist(), ys.tolist()):
        p = _loop_erase(est.walk(x, y))
        w = sum(g.weight(p[i], p[i + 1]) for i in range(len(p) - 1))
        D[x, y] = w
        pred[x, y] = p[-2]
        succ[x, y] = p[1]
        paths[(x, y)] = p
    return SimplePaths(D, pred, succ, paths)


def build_mixed_instance(g: Graph, sp: SimplePaths, coloring: Coloring) -> TriangleInstance:
    n = g.n
    c2 = np.asarray(coloring.colors, dtype=bool)
    A = np.full((3 * n, 3 * n), INF, dtype=np.int64)

    def put(a, b, w):
        A[a, b] = A[b, a] = w

    for e in g.edges:
        if e.directed:
            put(n + e.u, 2 * n + e.v, e.w)
        elif c2[e.u] and c2[e.v]:
            put(n + e.u, 2 * n + e.v, e.w)
            put(n + e.v, 2 * n + e.u, e.w)

    D, pred, succ = sp.D, sp.pred, sp.succ
    finite = D < INF
    eye = np.eye(n, dtype=bool)
    last_undirected = np.zeros((n, n), dtype=bool)
    first_undirected = np.zeros((n, n), dtype=bool)
    for (x, y) in sp.paths:
        last_undirected[x, y] = not g.step(int(pred[x, y]), y).directed
        first_undirected[x, y] = not g.step(x, int(succ[x, y])).directed

    safe_pred = np.where(pred >= 0, pred, 0)
    safe_succ = np.where(succ >= 0, succ, 0)
    gate12 = ~last_undirected | (~c2[safe_pred] & c2[None, :])
    gate31 = ~first_undirected | (~c2[safe_succ] & c2[:, None])
    ok12 = finite & (eye | gate12)
    ok31 = finite & (eye | gate31)
    # (x1, y2) carries D[x, y]; (x3, y1) carries D[x, y]
    blk12 = np.where(ok12, D, INF)
    blk31 = np.where(ok31, D, INF)
    A[0:n, n:2 * n] = blk12
    A[n:2 * n, 0:n] = blk12.T
    A[2 * n:3 * n, 0:n] = blk31
    A[0:n, 2 * n:3 * n] = blk31.T
    part = np.repeat(np.array([1, 2, 3], dtype=np.int64), n)
    back = np.tile(np.arange(n, dtype=np.int64), 3)
    return TriangleInstance(A, part, back, offset=0, t=0, M=g.weight_bound,
                            meta={"kind": "mixed", "coloring": coloring.tag})


def mixed_walk(g: Graph, sp: SimplePaths, inst: TriangleInstance, nodes) -> list[int]:
    by_part = {int(inst.part[x]): int(inst.back_map[x]) for x in nodes}
    a, b, c = by_part[1], by_part[2], by_part[3]
    first = sp.paths.get((a, b), [a])
    second = sp.paths.get((c, a), [a])
    return first + second[:-1]


@dataclass
class MixedReport:
    witness: Optional[CycleWitness]
    seed: int
    colorings: int = 0
    t: Optional[int] = None
    instances: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def weight(self):
        return None if self.witness is None else self.witness.weight


def _attempt(g: Graph, seed: int, trials, deterministic, keep) -> MixedReport:
    M = g.weight_bound
    est = sampled_estimates(symmetrize(g), seed)
    sp = simple_paths(g, est)
    colorings = colorings_for(g.n, deterministic, trials, seed)
    rep = MixedReport(None, seed, len(colorings))
    for col in colorings:
        inst = build_mixed_instance(g, sp, col)
        try:
            red = reduce_weights(inst, search_threshold(inst, M), M)
        except NoCycle:
            continue
        if keep:
            rep.instances.append(red)
        found = min_triangle(red.adjacency)
        if found is None:
            continue
        claimed = found[3] + red.offset
        if rep.witness is not None and claimed >= rep.witness.weight:
            continue
        cyc = lightest_cycle_on_support(g, mixed_walk(g, sp, red, found[:3]))
        if cyc is None or cyc.weight > claimed:
            rep.diagnostics.append(f"triangle certifying {claimed} maps to no cycle that light")
            continue
        validate_cycle(g, cyc)
        rep.witness = cyc
        rep.t = red.t
    return rep


def run_mixed(g: Graph, seed: int = 0, trials: int | None = None, deterministic: bool = False,
              keep_instances: bool = False) -> MixedReport:
    if any(e.w < 1 for e in g.edges):
        raise ValueError("mixed graphs need weights >= 1")
    best = None
    notes = []
    for attempt in range(MAX_RETRIES + 1):
        rep = _attempt(g, derived_seed(seed, attempt), trials, deterministic, keep_instances)
        notes.extend(rep.diagnostics)
        if best is None or (rep.witness is not None and
                            (best.witness is None or rep.witness.weight < best.witness.weight)):
            best = rep
        if not rep.diagnostics:
            break
    best.diagnostics = notes
    return best


def girth_mixed(g: Graph, seed: int = 0, trials: int | None = None,
                deterministic: bool = False) -> Optional[CycleWitness]:
    """Minimum-weight cycle of a mixed graph with positive weights, or None."""
    return run_mixed(g, seed, trials, deterministic).witness

