"""q-reduction of chip configurations on a finite multigraph.

Two implementations share one contract: a scalar loop kernel compiled with
numba, and a vectorized numpy path. Set ``BNCHAIN_DISABLE_NUMBA=1`` to
force the numpy path (it is also used when numba is not importable).

Arguments are the adjacency matrix (edge multiplicities, zero diagonal),
the Laplacian, BFS distances from ``q``, the configuration and ``q``.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLED = os.environ.get("BNCHAIN_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not DISABLED


def reduce_numpy(adj, lap, dist, chips, q):
    D = np.array(chips, dtype=np.int64)
    # push debt toward q one BFS level at a time
    for level in range(int(dist.max()), 0, -1):
        k = -int(D[dist == level].min())
        if k > 0:
            D -= k * (lap @ (dist < level).astype(np.int64))
    n = D.shape[0]
    while True:
        burnt = np.zeros(n, dtype=bool)
        burnt[q] = True
        while True:
            heat = adj[:, burnt].sum(axis=1)
            fresh = ~burnt & (heat > D)
            if not fresh.any():
                break
            burnt |= fresh
        if burnt.all():
            return D
        unburnt = ~burnt
        h = heat[unburnt]
        k = int((D[unburnt][h > 0] // h[h > 0]).min())
        D -= k * (lap @ unburnt.astype(np.int64))


def reduce_loops(adj, lap, dist, chips, q):
    n = chips.shape[0]
    D = chips.copy()
    maxd = 0
    for v in range(n):
        if dist[v] > maxd:
            maxd = dist[v]
    for level in range(maxd, 0, -1):
        k = 0
        for v in range(n):
            if dist[v] == level and -D[v] > k:
                k = -D[v]
        if k > 0:
            for u in range(n):
                if dist[u] < level:
                    for w in range(n):
                        if dist[w] >= level and adj[u, w] != 0:
                            e = adj[u, w] * k
                            D[u] -= e
                            D[w] += e

    burnt = np.zeros(n, dtype=np.bool_)
    heat = np.zeros(n, dtype=np.int64)
    stack = np.zeros(n, dtype=np.int64)
    while True:
        for v in range(n):
            burnt[v] = False
            heat[v] = 0
        burnt[q] = True
        stack[0] = q
        top = 1
        nburnt = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for w in range(n):
                a = adj[u, w]
                if a != 0 and not burnt[w]:
                    heat[w] += a
                    if heat[w] > D[w]:
                        burnt[w] = True
                        stack[top] = w
                        top += 1
                        nburnt += 1
        if nburnt == n:
            return D
        k = -1
        for v in range(n):
            if not burnt[v] and heat[v] > 0:
                kk = D[v] // heat[v]
                if k < 0 or kk < k:
                    k = kk
        for v in range(n):
            if burnt[v]:
                for w in range(n):
                    if not burnt[w]:
                        D[v] += k * adj[v, w]
            else:
                D[v] -= k * heat[v]


if numba is not None:
    reduce_numba = numba.njit(cache=True, nogil=True)(reduce_loops)
else:  # pragma: no cover
    reduce_numba = None

reduce_kernel = reduce_numba if USE_NUMBA else reduce_numpy
