"""Turning closed walks into simple cycles, and the critical edge of a cycle."""

from __future__ import annotations

import heapq
from typing import Optional, Sequence

from .graph import CycleWitness, Graph, InvalidCycle, cycle_weight


def two_paths_cycle(g: Graph, p_xy: Sequence[int], p_xz: Sequence[int]) -> CycleWitness:
    """Simple cycle inside path(x->y) + path(x->z) + edge (y, z), undirected g.

    Both paths start at x and must be simple; the vertex before y on p_xy must
    differ from z and the vertex before z on p_xz must differ from y. With
    positive weights the result weighs at most w(p_xy) + w(p_xz) + w(y, z).

    Cases: one path is a prefix of the other (cut it at the shorter endpoint
    and close with (y, z)); otherwise they split after a shared prefix ending
    at x'. Walking p_xy past x', the first vertex q that p_xz also visits after
    x' closes a cycle x' ~> q on both paths; if there is no such q the two tails
    plus (y, z) are vertex-disjoint and form the cycle.
    """
    a, b = list(p_xy), list(p_xz)
    y, z = a[-1], b[-1]
    if a[0] != b[0]:
        raise ValueError("paths must share their first vertex")
    if y == z:
        raise ValueError("path endpoints must differ")
    if g.weight(y, z) is None:
        raise ValueError(f"no edge ({y}, {z})")
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    if k == len(b):
        # z lies on the x -> y path
        nodes = a[a.index(z):]
    elif k == len(a):
        nodes = b[b.index(y):][::-1]
    else:
        split = k - 1
        later_b = {v: i for i, v in enumerate(b) if i > split}
        q_a = next((i for i in range(split + 1, len(a)) if a[i] in later_b), None)
        if q_a is not None:
            q_b = later_b[a[q_a]]
            nodes = a[split:q_a + 1] + b[split + 1:q_b][::-1]
        else:
            nodes = a[split:] + b[split + 1:][::-1]
    if len(nodes) < 3 or len(set(nodes)) != len(nodes):
        raise InvalidCycle(f"two-paths extraction failed on {a} / {b}")
    return CycleWitness(tuple(nodes), cycle_weight(g, nodes))


def decompose_closed_walk(walk: Sequence[int]) -> list[list[int]]:
    """Split a closed walk (first vertex not repeated at the end) into simple cycles.

    Repeatedly cuts out the closest pair of copies of a vertex. For directed
    walks the pieces' weights sum to the walk's weight.
    """
    stack: list[int] = []
    pos: dict[int, int] = {}
    cycles: list[list[int]] = []
    for v in list(walk) + [walk[0]]:
        if v in pos:
            i = pos[v]
            piece = stack[i:]
            cycles.append(piece)
            for u in piece[1:]:
                del pos[u]
            del stack[i + 1:]
        else:
            pos[v] = len(stack)
            stack.append(v)
    return [c for c in cycles if len(c) >= 1]


def lightest_cycle_in_walk(g: Graph, walk: Sequence[int]) -> Optional[CycleWitness]:
    """Lightest simple directed cycle from the closed-walk decomposition.

    With no negative cycle in g every piece weighs at most the whole walk.
    """
    best = None
    for piece in decompose_closed_walk(walk):
        if len(piece) < 2:
            continue
        w = cycle_weight(g, piece)
        if best is None or w < best.weight:
            best = CycleWitness(tuple(piece), w)
    return best


def lightest_cycle_on_support(g: Graph, walk: Sequence[int]) -> Optional[CycleWitness]:
    """Lightest simple cycle using only edges the closed walk traverses.

    Meant for mixed or undirected walks with positive weights, where a walk
    may go back and forth over one undirected edge. Any simple cycle on the
    support weighs at most the walk.
    """
    k = len(walk)
    used = {}
    for i in range(k):
        u, v = walk[i], walk[(i + 1) % k]
        e = g.step(u, v)
        if e is None:
            raise InvalidCycle(f"walk step {u} -> {v} is not an edge")
        used[(e.u, e.v, e.directed)] = e
    return _lightest_cycle(list(used.values()))


def _lightest_cycle(edges) -> Optional[CycleWitness]:
    """Lightest simple cycle of a small positive-weight edge set.

    For each edge (u, v): its weight plus the shortest v -> u path that does
    not reuse it. The path never revisits u or v, so the result is simple.
    """
    out: dict[int, list] = {}
    for idx, e in enumerate(edges):
        out.setdefault(e.u, []).append((e.v, e.w, idx))
        if not e.directed:
            out.setdefault(e.v, []).append((e.u, e.w, idx))
    best = None
    for idx, e in enumerate(edges):
        if e.w < 1:
            raise ValueError("support cycles need positive weights")
        dist = {e.v: 0}
        prev = {e.v: None}
        heap = [(0, e.v)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x] or x == e.u:
                continue
            for y, w, j in out.get(x, ()):
                if j == idx or (y in dist and dist[y] <= d + w):
                    continue
                dist[y] = d + w
                prev[y] = x
                heapq.heappush(heap, (d + w, y))
        if e.u not in dist:
            continue
        total = dist[e.u] + e.w
        if best is None or total < best.weight:
            path = [e.u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            best = CycleWitness(tuple(reversed(path)), total)
    return best


def critical_edge(weights: Sequence[int], s: int = 0) -> int:
    """Index i of the critical edge (v_i, v_{i+1}) of a cycle for start vertex s.

    ``weights[j]`` is w(v_j, v_{j+1}) (indices mod len). Walk forward from s to
    the first edge whose tail sits at cycle distance <= floor(W/2) and whose
    head reaches >= ceil(W/2).
    """
    total = sum(weights)
    if total < 0:
        raise ValueError("cycle weight must be nonnegative")
    floor_half, ceil_half = total // 2, -(-total // 2)
    k = len(weights)
    dist = 0
    for step in range(k):
        i = (s + step) % k
        if dist <= floor_half and dist + weights[i] >= ceil_half:
            return i
        dist += weights[i]
    return (s + k - 1) % k


def cycle_distance(weights: Sequence[int], i: int, j: int) -> int:
    """d_C[v_i, v_j]: forward traversal weight from v_i to v_j."""
    k = len(weights)
    total = 0
    while i != j:
        total += weights[i]
        i = (i + 1) % k
    return total
