"""Brute-force ground truth.

Everything here is deliberately naive pure Python and shares nothing with the
reduction pipelines apart from the Graph container.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional

from .graph import CycleWitness, Graph, Kind

INFINITY = math.inf


class NegativeCycle(ValueError):
    """The directed input contains a cycle of negative weight."""


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    weight: Optional[int]
    witness: Optional[CycleWitness] = None

    @property
    def has_cycle(self) -> bool:
        return self.weight is not None


NO_CYCLE = OracleResult(None, None)


def _travel(g: Graph):
    """adjacency: u -> list of (v, w, edge_id)."""
    adj = [[] for _ in range(g.n)]
    for idx, e in enumerate(g.edges):
        adj[e.u].append((e.v, e.w, idx))
        if not e.directed:
            adj[e.v].append((e.u, e.w, idx))
    return adj


def oracle_apsp(g: Graph):
    """Floyd-Warshall. Returns (dist, negative_cycle) with math.inf for no path."""
    n = g.n
    d = [[INFINITY] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0
    for u, nbrs in enumerate(_travel(g)):
        for v, w, _ in nbrs:
            if w < d[u][v]:
                d[u][v] = w
    for k in range(n):
        row_k = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INFINITY:
                continue
            row_i = d[i]
            for j in range(n):
                c = dik + row_k[j]
                if c < row_i[j]:
                    row_i[j] = c
    negative = any(d[i][i] < 0 for i in range(n))
    return d, negative


def _fw_with_next(g: Graph):
    n = g.n
    d = [[INFINITY] * n for _ in range(n)]
    nxt = [[-1] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0
        nxt[i][i] = i
    for u, nbrs in enumerate(_travel(g)):
        for v, w, _ in nbrs:
            if w < d[u][v]:
                d[u][v] = w
                nxt[u][v] = v
    for k in range(n):
        for i in range(n):
            if d[i][k] == INFINITY:
                continue
            for j in range(n):
                c = d[i][k] + d[k][j]
                if c < d[i][j]:
                    d[i][j] = c
                    nxt[i][j] = nxt[i][k]
    return d, nxt


def _dijkstra_avoiding(adj, n, src, banned_edge):
    dist = [INFINITY] * n
    prev = [-1] * n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w, idx in adj[u]:
            if idx == banned_edge:
                continue
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, prev


def oracle_girth(g: Graph) -> OracleResult:
    """Exact minimum simple-cycle weight with a witness.

    Directed graphs (any sign): min over arcs (u,v) of w(u,v) + d(v,u).
    Undirected/mixed graphs (positive weights): min over edges e=(u,v) of
    w(e) + d(v,u) in G - e, which keeps e itself from posing as the return path.
    """
    if g.kind is Kind.DIRECTED:
        d, nxt = _fw_with_next(g)
        if any(d[i][i] < 0 for i in range(g.n)):
            raise NegativeCycle("graph contains a negative cycle")
        best = None
        for e in g.edges:
            back = d[e.v][e.u]
            if back == INFINITY:
                continue
            total = e.w + back
            if best is None or total < best[0]:
                best = (total, e)
        if best is None:
            return NO_CYCLE
        total, e = best
        path = [e.v]
        while path[-1] != e.u:
            path.append(nxt[path[-1]][e.u])
        nodes = [e.u] + path[:-1]
        return OracleResult(int(total), CycleWitness(tuple(nodes), int(total)))

    if any(e.w < 1 for e in g.edges):
        raise ValueError("undirected/mixed oracle needs positive weights")
    adj = _travel(g)
    best = None
    for idx, e in enumerate(g.edges):
        dist, prev = _dijkstra_avoiding(adj, g.n, e.v, idx)
        if dist[e.u] == INFINITY:
            continue
        total = e.w + dist[e.u]
        if best is None or total < best[0]:
            path = [e.u]
            while path[-1] != e.v:
                path.append(prev[path[-1]])
            # path runs u <- ... <- v; the cycle is u -e-> v -> ... -> u
            nodes = [e.u] + path[::-1][:-1]
            best = (total, nodes)
    if best is None:
        return NO_CYCLE
    total, nodes = best
    return OracleResult(int(total), CycleWitness(tuple(nodes), int(total)))


def oracle_min_triangle(g: Graph) -> OracleResult:
    """Cubic enumeration of vertex triples of an undirected graph."""
    n = g.n
    best = None
    for a in range(n):
        for b in range(a + 1, n):
            wab = g.weight(a, b)
            if wab is None:
                continue
            for c in range(b + 1, n):
                wbc, wca = g.weight(b, c), g.weight(c, a)
                if wbc is None or wca is None:
                    continue
                total = wab + wbc + wca
                if best is None or total < best[0]:
                    best = (total, (a, b, c))
    if best is None:
        return NO_CYCLE
    return OracleResult(best[0], CycleWitness(best[1], best[0]))


def enumerate_simple_cycles(g: Graph, max_n: int = 10):
    """Yield every simple cycle once as (nodes, weight).

    Undirected cycles are reported in one direction only; 2-cycles appear only
    as a pair of opposite arcs.
    """
    if g.n > max_n:
        raise OracleTooLarge(f"cycle enumeration limited to n <= {max_n}")
    adj = _travel(g)
    for start in range(g.n):
        stack = [(start, [start], 0, (-1,))]
        while stack:
            u, path, weight, used = stack.pop()
            for v, w, idx in adj[u]:
                if idx in used:
                    continue
                if v == start:
                    nodes = tuple(path)
                    if len(nodes) == 2 and not g.edges[idx].directed:
                        continue
                    if len(nodes) >= 3 and not any(g.edges[i].directed for i in used[1:] + (idx,)):
                        # undirected cycle: keep one of the two traversal directions
                        if nodes[1] > nodes[-1]:
                            continue
                    yield nodes, weight + w
                elif v > start and v not in path:
                    stack.append((v, path + [v], weight + w, used + (idx,)))


def oracle_girth_enumerate(g: Graph) -> Optional[int]:
    best = None
    for _, w in enumerate_simple_cycles(g):
        if best is None or w < best:
            best = w
    return best


def oracle_min_kcycle(g: Graph, k: int, max_n: int = 40, max_k: int = 6) -> OracleResult:
    """Minimum weight over simple cycles of exactly k vertices, by DFS.

    Each cycle is rooted at its smallest vertex. With nonnegative weights the
    search prunes partial paths that already reach the best weight.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    if g.n > max_n or k > max_k:
        raise OracleTooLarge(f"k-cycle oracle limited to n <= {max_n}, k <= {max_k}")
    adj = [sorted(nbrs, key=lambda x: x[1]) for nbrs in _travel(g)]
    nonneg = all(e.w >= 0 for e in g.edges)
    best_w = None
    best_nodes = None

    for start in range(g.n):
        path = [start]
        on_path = {start}

        def dfs(u, weight):
            nonlocal best_w, best_nodes
            if nonneg and best_w is not None and weight >= best_w:
                return
            if len(path) == k:
                for v, w, _ in adj[u]:
                    if v == start:
                        total = weight + w
                        if (best_w is None or total < best_w) and path[1] < path[-1]:
                            best_w, best_nodes = total, tuple(path)
                return
            for v, w, _ in adj[u]:
                if v > start and v not in on_path:
                    path.append(v)
                    on_path.add(v)
                    dfs(v, weight + w)
                    path.pop()
                    on_path.discard(v)

        dfs(start, 0)
    if best_w is None:
        return NO_CYCLE
    return OracleResult(best_w, CycleWitness(best_nodes, best_w))
