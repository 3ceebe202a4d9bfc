"""Minimum-weight cycle of directed graphs with weights in [-M, M].

Pipeline: staged sampled distance estimates D (with predecessor/successor
matrices), a negative-cycle check on D*D, a tripartite triangle instance whose
triangle a1-b2-c3 weighs D[a,b] + w(b,c) + D[c,a], a threshold search that
lets the layer-1 edges shift into [-M, M], and recovery of a simple cycle from
the closed walk behind the lightest triangle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import INF, MAX_MAGNITUDE, CycleWitness, Graph, InvalidCycle, Kind, to_weight_matrix, validate_cycle
from .instance import TriangleInstance
from .minplus import distance_product, min_triangle, threshold_triangle_exists
from .oracles import NegativeCycle
from .walks import lightest_cycle_in_walk

log = logging.getLogger(__name__)

MAX_RETRIES = 3
_EMPTY = -2  # record id of the zero-length walk on the diagonal
_NONE = -1


class NoCycle(ValueError):
    pass


@dataclass
class DistanceEstimates:
    """Upper bounds D with walk provenance.

    ``pred[i, j]`` / ``succ[i, j]`` are the vertex before j and the vertex
    after i on a walk of weight exactly D[i, j]; the walk itself is rebuilt
    from the bridging records by :meth:`walk`.
    """

    D: np.ndarray
    pred: np.ndarray
    succ: np.ndarray
    stages: list
    record: np.ndarray  # record id per entry
    rec_src: np.ndarray
    rec_dst: np.ndarray
    rec_left: np.ndarray
    rec_right: np.ndarray
    seed: int = 0

    @property
    def n(self) -> int:
        return int(self.D.shape[0])

    def walk(self, i: int, j: int) -> list[int]:
        """Vertex sequence of the walk behind D[i, j]."""
        rid = int(self.record[i, j])
        if rid == _NONE:
            raise KeyError(f"no walk {i} -> {j}")
        if rid == _EMPTY:
            return [i]
        out = [int(self.rec_src[rid])]
        stack = [rid]
        while stack:
            r = stack.pop()
            left = int(self.rec_left[r])
            if left == _NONE:  # an arc
                out.append(int(self.rec_dst[r]))
                continue
            right = int(self.rec_right[r])
            if right != _EMPTY:
                stack.append(right)
            if left != _EMPTY:
                stack.append(left)
        return out


def _keep_probability(stage: int, n: int) -> float:
    if stage == 0:
        return 1.0
    return min(1.0, 9 * (2 / 3) ** stage * math.log(n))


def stage_count(n: int) -> int:
    return 0 if n < 2 else math.ceil(math.log(n) / math.log(1.5))


def sampled_estimates(g: Graph, seed: int = 0) -> DistanceEstimates:
    """Staged bridging-set estimates.

    B_0 = V; B_l keeps each member of B_{l-1} so that inclusion probability is
    min(1, 9 (2/3)^l ln n). At stage l every entry (u, v) with u or v in B_l is
    lowered to min over b in B_l of D[u,b] + D[b,v]. With high probability,
    for s in B_l every s->v and v->s distance whose shortest path has at most
    (3/2)^l edges is then exact, and D*D is the distance matrix.
    """
    if g.kind is not Kind.DIRECTED:
        raise ValueError("sampled estimates need a directed graph")
    n = g.n
    D = to_weight_matrix(g, distance_form=True)
    pred = np.full((n, n), -1, dtype=np.int64)
    succ = np.full((n, n), -1, dtype=np.int64)
    record = np.full((n, n), _NONE, dtype=np.int64)
    np.fill_diagonal(record, _EMPTY)
    arcs = np.array([(e.u, e.v) for e in g.edges], dtype=np.int64).reshape(-1, 2)
    m = len(arcs)
    rec_src = [arcs[:, 0]]
    rec_dst = [arcs[:, 1]]
    rec_left = [np.full(m, _NONE, dtype=np.int64)]
    rec_right = [np.full(m, _NONE, dtype=np.int64)]
    if m:
        record[arcs[:, 0], arcs[:, 1]] = np.arange(m)
        pred[arcs[:, 0], arcs[:, 1]] = arcs[:, 0]
        succ[arcs[:, 0], arcs[:, 1]] = arcs[:, 1]
    next_id = m

    rng = np.random.default_rng([seed, 0x5A3D])
    B = np.arange(n, dtype=np.int64)
    stages = [B]
    floor = -(MAX_MAGNITUDE // 4)
    for stage in range(1, stage_count(n) + 1):
        keep = _keep_probability(stage, n) / _keep_probability(stage - 1, n)
        if keep < 1.0:
            B = B[rng.random(len(B)) < keep]
        stages.append(B)
        if len(B) == 0:
            continue
        D_old, pred_old, succ_old, rec_old = D, pred, succ, record
        D_BB = D_old[np.ix_(B, B)]
        C_row, W_row = distance_product(D_BB, D_old[B, :], witness=True)
        C_col, W_col = distance_product(D_old[:, B], D_BB, witness=True)

        cand = np.full((n, n), INF, dtype=np.int64)
        mid = np.full((n, n), -1, dtype=np.int64)
        cand[B, :] = C_row
        mid[B, :] = np.where(W_row >= 0, B[np.maximum(W_row, 0)], -1)
        col_better = C_col < cand[:, B]
        sub = cand[:, B]
        sub[col_better] = C_col[col_better]
        cand[:, B] = sub
        msub = mid[:, B]
        msub[col_better] = B[W_col[col_better]]
        mid[:, B] = msub

        us, vs = np.nonzero(cand < D_old)
        if len(us) == 0:
            continue
        bs = mid[us, vs]
        D = D_old.copy()
        pred, succ, record = pred_old.copy(), succ_old.copy(), rec_old.copy()
        D[us, vs] = np.maximum(cand[us, vs], floor)
        pred[us, vs] = pred_old[bs, vs]
        succ[us, vs] = succ_old[us, bs]
        k = len(us)
        ids = np.arange(next_id, next_id + k)
        rec_src.append(us)
        rec_dst.append(vs)
        rec_left.append(rec_old[us, bs])
        rec_right.append(rec_old[bs, vs])
        record[us, vs] = ids
        next_id += k

    return DistanceEstimates(
        D, pred, succ, stages, record,
        np.concatenate(rec_src), np.concatenate(rec_dst),
        np.concatenate(rec_left), np.concatenate(rec_right), seed,
    )


def detect_negative_cycle(est: DistanceEstimates) -> bool:
    """True iff some diagonal entry of D*D is negative."""
    if est.n == 0:
        return False
    sq = distance_product(est.D, est.D)
    return bool(np.any(np.diagonal(sq) < 0))


def build_tripartite(g: Graph, est: DistanceEstimates) -> TriangleInstance:
    """Layers V1, V2, V3 copy V; nodes are x, n + x, 2n + x.

    (x1, y2) and (x3, y1) weigh D[x, y]; (u2, v3) weighs w(u, v) per arc.
    """
    n = g.n
    N = 3 * n
    A = np.full((N, N), INF, dtype=np.int64)
    D = est.D
    _place(A, 0, n, D)           # x1 - y2 : D[x, y]
    _place(A, 2 * n, 0, D)       # x3 - y1 : D[x, y]
    W = to_weight_matrix(g)
    _place(A, n, 2 * n, W)       # u2 - v3 : w(u, v)
    part = np.repeat(np.array([1, 2, 3], dtype=np.int64), n)
    back = np.tile(np.arange(n, dtype=np.int64), 3)
    return TriangleInstance(A, part, back, offset=0, t=0, M=g.weight_bound,
                            meta={"kind": "tripartite"})


def _place(A, row0, col0, block):
    n = block.shape[0]
    A[row0:row0 + n, col0:col0 + n] = block
    A[col0:col0 + n, row0:row0 + n] = block.T


def _blocks(inst: TriangleInstance):
    n = inst.n // 3
    A = inst.adjacency
    return A[0:n, n:2 * n], A[2 * n:3 * n, 0:n], A[n:2 * n, 2 * n:3 * n]


def search_threshold(inst: TriangleInstance, M: int) -> int:
    """Smallest t in [0, nM] admitting a triangle whose layer-1 edges are both <= t."""
    D12, D31, closing = _blocks(inst)
    n = inst.n // 3
    finite = [blk[blk < INF] for blk in (D12, D31)]
    hi = max([1, n * M] + [int(f.max()) for f in finite if f.size])
    if not threshold_triangle_exists(D12, D31, closing, hi):
        raise NoCycle("instance has no triangle")
    if threshold_triangle_exists(D12, D31, closing, 0):
        return 0
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if threshold_triangle_exists(D12, D31, closing, mid):
            hi = mid
        else:
            lo = mid
    return hi


def reduce_weights(inst: TriangleInstance, t: int, M: int) -> TriangleInstance:
    """Drop layer-1 edges outside [t - M, t + M/2] and shift the rest by -t."""
    n = inst.n // 3
    A = inst.adjacency.copy()
    l1 = np.zeros(inst.n, dtype=bool)
    l1[:n] = True
    touch = (l1[:, None] ^ l1[None, :]) & (A < INF)
    drop = touch & ((2 * A > 2 * t + M) | (A < t - M))
    A[drop] = INF
    shift = touch & ~drop
    A[shift] -= t
    meta = dict(inst.meta)
    meta["reduced"] = True
    return TriangleInstance(A, inst.part, inst.back_map, offset=2 * t, t=t, M=M, meta=meta)


def threshold_and_reduce(inst: TriangleInstance, M: int) -> TriangleInstance:
    """Threshold search then weight reduction; all weights end in [-M, M]."""
    return reduce_weights(inst, search_threshold(inst, M), M)


def triangle_walk(est: DistanceEstimates, inst: TriangleInstance, nodes) -> list[int]:
    """Closed walk a ~> b -> c ~> a behind triangle (a1, b2, c3)."""
    by_part = {int(inst.part[x]): int(inst.back_map[x]) for x in nodes}
    if sorted(by_part) != [1, 2, 3]:
        raise InvalidCycle(f"triangle {nodes} is not tripartite")
    a, b, c = by_part[1], by_part[2], by_part[3]
    first = est.walk(a, b)
    second = est.walk(c, a)
    return first + second[:-1]


@dataclass
class DirectedReport:
    witness: Optional[CycleWitness]
    t: Optional[int]
    seed: int
    attempts: int = 1
    instance: Optional[TriangleInstance] = None
    estimates: Optional[DistanceEstimates] = None
    diagnostics: list = field(default_factory=list)

    @property
    def weight(self):
        return None if self.witness is None else self.witness.weight


def _attempt(g: Graph, seed: int) -> DirectedReport:
    est = sampled_estimates(g, seed)
    if detect_negative_cycle(est):
        raise NegativeCycle("graph contains a negative cycle")
    M = g.weight_bound
    inst = build_tripartite(g, est)
    try:
        red = threshold_and_reduce(inst, M)
    except NoCycle:
        return DirectedReport(None, None, seed, instance=None, estimates=est)
    found = min_triangle(red.adjacency)
    if found is None:
        return DirectedReport(None, red.t, seed, instance=red, estimates=est,
                              diagnostics=["reduced instance lost every triangle"])
    i, j, k, w = found
    claimed = w + red.offset
    walk = triangle_walk(est, red, (i, j, k))
    cyc = lightest_cycle_in_walk(g, walk)
    rep = DirectedReport(cyc, red.t, seed, instance=red, estimates=est)
    if cyc is None or cyc.weight > claimed:
        rep.diagnostics.append(f"walk behind triangle of weight {claimed} holds no cycle that light")
    elif cyc.weight < claimed:
        rep.diagnostics.append(f"recovered cycle {cyc.weight} beats the lightest triangle {claimed}")
    return rep


def derived_seed(seed: int, attempt: int) -> int:
    if attempt == 0:
        return seed
    return int(np.random.default_rng([seed, 0xD1, attempt]).integers(0, 2**31))


def run_directed(g: Graph, seed: int = 0) -> DirectedReport:
    if g.kind is not Kind.DIRECTED:
        raise ValueError("girth_directed needs a directed graph")
    best = None
    notes = []
    for attempt in range(MAX_RETRIES + 1):
        rep = _attempt(g, derived_seed(seed, attempt))
        rep.attempts = attempt + 1
        if rep.witness is not None:
            validate_cycle(g, rep.witness)
        if best is None or (rep.witness is not None and
                            (best.witness is None or rep.witness.weight < best.witness.weight)):
            best = rep
        notes.extend(rep.diagnostics)
        if not rep.diagnostics:
            break
        log.info("directed attempt %d: %s; retrying", attempt, rep.diagnostics)
    best.diagnostics = notes
    best.attempts = attempt + 1
    return best


def girth_directed(g: Graph, seed: int = 0) -> Optional[CycleWitness]:
    """Minimum-weight cycle of a directed graph; None if acyclic.

    Raises NegativeCycle when one exists.
    """
    return run_directed(g, seed).witness
