"""Distance (min,+) products, thresholded boolean products, minimum triangles.

Matrices are int64 numpy arrays with ``graph.INF`` as +infinity. Any sum with
an infinite operand saturates to INF.
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

from .graph import INF

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is too old; avoid the warning it triggers
    numba.config.THREADING_LAYER = "workqueue"

TILE = 64


def set_workers(workers: int | None) -> None:
    """Set the kernel thread count (default: every available core)."""
    if workers is None:
        workers = int(os.environ.get("GIRTH_WORKERS", numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(max(1, min(workers, numba.config.NUMBA_NUM_THREADS)))


@njit(cache=True, parallel=True)
def _minplus_kernel(A, BT, rows, tile, want_arg):
    # BT is B transposed so the inner loop runs over contiguous memory.
    inf = INF
    r = rows.shape[0]
    n = BT.shape[0]
    inner = A.shape[1]
    C = np.full((r, n), inf, dtype=np.int64)
    W = np.full((r, n) if want_arg else (1, 1), -1, dtype=np.int64)
    nblocks = (r + tile - 1) // tile
    for blk in prange(nblocks):
        r0 = blk * tile
        r1 = min(r, r0 + tile)
        for k0 in range(0, inner, tile):
            k1 = min(inner, k0 + tile)
            for j0 in range(0, n, tile):
                j1 = min(n, j0 + tile)
                for ri in range(r0, r1):
                    arow = A[rows[ri]]
                    for j in range(j0, j1):
                        bcol = BT[j]
                        best = C[ri, j]
                        arg = W[ri, j] if want_arg else -1
                        for k in range(k0, k1):
                            a = arow[k]
                            b = bcol[k]
                            if a < inf and b < inf:
                                s = a + b
                                if s < best:
                                    best = s
                                    arg = k
                        C[ri, j] = best
                        if want_arg:
                            W[ri, j] = arg
    return C, W


def _check(A, B):
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape} * {B.shape}")
    return A, B


def distance_product(A, B, rows=None, *, tile: int = TILE, witness: bool = False):
    """C[i,j] = min_k A[i,k] + B[k,j].

    ``rows`` restricts the output to those rows of A (in the given order).
    With ``witness`` also returns the minimizing k per entry (-1 when C is INF).
    Ties resolve to the smallest k.
    """
    A, B = _check(A, B)
    if rows is None:
        rows = np.arange(A.shape[0], dtype=np.int64)
    else:
        rows = np.asarray(rows, dtype=np.int64)
    BT = np.ascontiguousarray(B.T)
    C, W = _minplus_kernel(A, BT, rows, tile, witness)
    return (C, W) if witness else C


def naive_distance_product(A, B):
    """Reference triple loop in plain Python."""
    A = [[int(x) for x in row] for row in np.asarray(A)]
    B = [[int(x) for x in row] for row in np.asarray(B)]
    inf = int(INF)
    n, inner, m = len(A), len(B), len(B[0]) if B else 0
    C = [[inf] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            best = inf
            for k in range(inner):
                a, b = A[i][k], B[k][j]
                if a < inf and b < inf and a + b < best:
                    best = a + b
            C[i][j] = best
    return np.array(C, dtype=np.int64).reshape(n, m)


@njit(cache=True, parallel=True)
def _edge_two_paths(A, ii, jj):
    # For each listed pair (i, j): min_k A[i,k] + A[k,j] and its argmin.
    inf = INF
    m = ii.shape[0]
    n = A.shape[0]
    AT = A.T.copy()
    best = np.full(m, inf, dtype=np.int64)
    arg = np.full(m, -1, dtype=np.int64)
    for e in prange(m):
        row = A[ii[e]]
        col = AT[jj[e]]
        b = inf
        a = -1
        for k in range(n):
            x = row[k]
            y = col[k]
            if x < inf and y < inf and x + y < b:
                b = x + y
                a = k
        best[e] = b
        arg[e] = a
    return best, arg


def min_triangle(A):
    """Minimum-weight triangle of a symmetric adjacency matrix (INF diagonal).

    Evaluates min over pairs (i,j) of A[j,i] + (A*A)[i,j], computing the
    product only where A[j,i] is finite, then recovers the third vertex by a
    linear scan. Returns ``(i, j, k, weight)`` or None.
    """
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.shape[0] < 3:
        return None
    ii, jj = np.nonzero(np.triu(A < INF, 1))
    if ii.size == 0:
        return None
    two, _ = _edge_two_paths(A, ii.astype(np.int64), jj.astype(np.int64))
    closing = A[jj, ii]
    ok = two < INF
    if not ok.any():
        return None
    total = np.where(ok, two + closing, INF)
    e = int(np.argmin(total))
    i, j = int(ii[e]), int(jj[e])
    row = A[i]
    col = A[:, j]
    both = (row < INF) & (col < INF)
    sums = np.where(both, row + col, INF)
    k = int(np.argmin(sums))
    return i, j, k, int(total[e])


# --------------------------------------------------------------------------
# Boolean products over machine words


def pack_rows(mask) -> np.ndarray:
    """Pack a boolean matrix into uint64 words, one bit per column."""
    mask = np.asarray(mask, dtype=bool)
    n, m = mask.shape
    words = (m + 63) // 64
    padded = np.zeros((n, words * 64), dtype=bool)
    padded[:, :m] = mask
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(n, words)


@njit(cache=True)
def _any_common_bit(P, Q, ps, qs):
    for e in range(ps.shape[0]):
        a = P[ps[e]]
        b = Q[qs[e]]
        for w in range(a.shape[0]):
            if a[w] & b[w]:
                return True
    return False


def threshold_triangle_exists(D12, D31, closing, t) -> bool:
    """Is there a, b, c with D12[a,b] <= t, D31[c,a] <= t and closing[b,c] finite?

    D12 holds V1->V2 weights, D31 holds V3->V1 weights and ``closing`` the
    V2->V3 edges. Runs as an (OR,AND) product on packed bit rows restricted to
    the closing edges.
    """
    D12 = np.asarray(D12)
    D31 = np.asarray(D31)
    closing = np.asarray(closing)
    bs, cs = np.nonzero(closing < INF)
    if bs.size == 0:
        return False
    # row b of P: the set of a with D12[a,b] <= t; row c of Q: a with D31[c,a] <= t
    P = pack_rows((D12 <= t).T)
    Q = pack_rows(D31 <= t)
    return bool(_any_common_bit(P, Q, bs.astype(np.int64), cs.astype(np.int64)))
