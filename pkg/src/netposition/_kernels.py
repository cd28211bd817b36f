"""Compiled kernels for the traversal-heavy measures.

Everything here operates on the CSR arrays stored by Graph (int64 indptr /
indices with sorted neighbor lists) and runs single-threaded in a fixed
order, so results are bit-identical across runs.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _has_edge(indptr, indices, u, v):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        w = indices[mid]
        if w == v:
            return True
        if w < v:
            lo = mid + 1
        else:
            hi = mid
    return False


@njit(cache=True)
def bfs_distance_sums(indptr, indices):
    """For every source: (count of reachable nodes incl. self, sum of distances)."""
    n = indptr.size - 1
    counts = np.zeros(n, dtype=np.int64)
    sums = np.zeros(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        dist[s] = 0
        total = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            total += dv
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        counts[s] = tail
        sums[s] = total
        for i in range(tail):
            dist[queue[i]] = -1
    return counts, sums


@njit(cache=True)
def bfs_harmonic_sums(indptr, indices):
    """For every source: sum over reachable u != source of 1/d(source, u)."""
    n = indptr.size - 1
    out = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        dist[s] = 0
        acc = 0.0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            if dv > 0:
                acc += 1.0 / dv
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        out[s] = acc
        for i in range(tail):
            dist[queue[i]] = -1
    return out


@njit(cache=True)
def pivot_distance_sums(indptr, indices, pivots):
    """Accumulate BFS distances from each pivot into every reached node.

    Returns (hits, sums): hits[v] = number of pivots in v's component,
    sums[v] = total distance from those pivots to v. A pivot reaches itself
    at distance 0.
    """
    n = indptr.size - 1
    hits = np.zeros(n, dtype=np.int64)
    sums = np.zeros(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for idx in range(pivots.size):
        s = pivots[idx]
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        dist[s] = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            hits[v] += 1
            sums[v] += dv
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        for i in range(tail):
            dist[queue[i]] = -1
    return hits, sums


@njit(cache=True)
def brandes_betweenness(indptr, indices):
    """Unnormalized shortest-path betweenness over unordered pairs.

    Single-source BFS with dependency accumulation; endpoints excluded.
    Sources are processed in ascending id and neighbor order is the sorted
    CSR order, so the floating-point accumulation order is fixed.
    """
    n = indptr.size - 1
    bc = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for s in range(n):
        head = 0
        tail = 0
        order[tail] = s
        tail += 1
        dist[s] = 0
        sigma[s] = 1.0
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            sv = sigma[v]
            for k in range(indptr[v], indptr[v + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sv
        for i in range(tail - 1, -1, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
        for i in range(tail):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return bc / 2.0


@njit(cache=True)
def orbit_counts_upto4(indptr, indices, eid, edge_a, edge_b):
    """Per-node induced orbit counts for the 9 graphlets on 2-4 nodes.

    Counts the small orbits and a handful of over-counting path/triangle
    aggregates directly, then solves the linear relations that tie those
    aggregates to the induced 4-node orbit counts (the classic equation
    approach for 4-node orbit counting). `eid` maps each CSR arc to its
    undirected edge id; `edge_a < edge_b` list the edges.
    """
    n = indptr.size - 1
    m = edge_a.size
    orbits = np.zeros((n, 15), dtype=np.int64)
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]

    # triangles over each edge: |N(a) & N(b)| by sorted-list merge
    tri = np.zeros(m, dtype=np.int64)
    for e in range(m):
        x = edge_a[e]
        y = edge_b[e]
        xi = indptr[x]
        yi = indptr[y]
        xe = indptr[x + 1]
        ye = indptr[y + 1]
        t = 0
        while xi < xe and yi < ye:
            a = indices[xi]
            b = indices[yi]
            if a == b:
                t += 1
                xi += 1
                yi += 1
            elif a < b:
                xi += 1
            else:
                yi += 1
        tri[e] = t

    # complete graphlets (K4), enumerated once via the ordering x > y > z, zz
    f14 = np.zeros(n, dtype=np.int64)
    scratch = np.empty(n, dtype=np.int64)
    for x in range(n):
        for px in range(indptr[x], indptr[x + 1]):
            y = indices[px]
            if y >= x:
                break
            cnt = 0
            for py in range(indptr[y], indptr[y + 1]):
                z = indices[py]
                if z >= y:
                    break
                if _has_edge(indptr, indices, x, z):
                    scratch[cnt] = z
                    cnt += 1
            for i in range(cnt):
                z = scratch[i]
                for j in range(i + 1, cnt):
                    zz = scratch[j]
                    if _has_edge(indptr, indices, z, zz):
                        f14[x] += 1
                        f14[y] += 1
                        f14[z] += 1
                        f14[zz] += 1

    # per-node aggregates and the equation solve
    common = np.zeros(n, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    is_nb = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        dx = deg[x]
        orbits[x, 0] = dx
        f_12_14 = 0
        f_10_13 = 0
        f_13_14 = 0
        f_11_13 = 0
        f_7_11 = 0
        f_5_8 = 0
        f_6_9 = 0
        f_9_12 = 0
        f_4_8 = 0
        f_8_12 = 0
        ntouched = 0

        for px in range(indptr[x], indptr[x + 1]):
            is_nb[indices[px]] = True

        for px in range(indptr[x], indptr[x + 1]):
            y = indices[px]
            ey = eid[px]
            for py in range(indptr[y], indptr[y + 1]):
                z = indices[py]
                if z == x:
                    continue
                ez = eid[py]
                if is_nb[z]:
                    # triangle {x, y, z}; take it once via z < y
                    if z < y:
                        f_12_14 += tri[ez] - 1
                        f_10_13 += (deg[y] - 1 - tri[ez]) + (deg[z] - 1 - tri[ez])
                else:
                    if common[z] == 0:
                        touched[ntouched] = z
                        ntouched += 1
                    common[z] += 1
            for px2 in range(px + 1, indptr[x + 1]):
                z = indices[px2]
                ez = eid[px2]
                if _has_edge(indptr, indices, y, z):
                    orbits[x, 3] += 1
                    f_13_14 += (tri[ey] - 1) + (tri[ez] - 1)
                    f_11_13 += (dx - 1 - tri[ey]) + (dx - 1 - tri[ez])
                else:
                    orbits[x, 2] += 1
                    f_7_11 += (dx - 2 - tri[ey]) + (dx - 2 - tri[ez])
                    f_5_8 += (deg[y] - 1 - tri[ey]) + (deg[z] - 1 - tri[ez])

        for px in range(indptr[x], indptr[x + 1]):
            y = indices[px]
            ey = eid[px]
            for py in range(indptr[y], indptr[y + 1]):
                z = indices[py]
                if z == x or is_nb[z]:
                    continue
                ez = eid[py]
                orbits[x, 1] += 1
                f_6_9 += deg[y] - 2 - tri[ey]
                f_9_12 += tri[ez]
                f_4_8 += deg[z] - 1 - tri[ez]
                f_8_12 += common[z] - 1

        k4 = f14[x]
        orbits[x, 14] = k4
        orbits[x, 13] = (f_13_14 - 6 * k4) // 2
        orbits[x, 12] = f_12_14 - 3 * k4
        orbits[x, 11] = (f_11_13 - f_13_14 + 6 * k4) // 2
        orbits[x, 10] = f_10_13 - f_13_14 + 6 * k4
        orbits[x, 9] = (f_9_12 - 2 * f_12_14 + 6 * k4) // 2
        orbits[x, 8] = (f_8_12 - 2 * f_12_14 + 6 * k4) // 2
        orbits[x, 7] = (f_13_14 + f_7_11 - f_11_13 - 6 * k4) // 6
        orbits[x, 6] = (2 * f_12_14 + f_6_9 - f_9_12 - 6 * k4) // 2
        orbits[x, 5] = 2 * f_12_14 + f_5_8 - f_8_12 - 6 * k4
        orbits[x, 4] = 2 * f_12_14 + f_4_8 - f_8_12 - 6 * k4

        for i in range(ntouched):
            common[touched[i]] = 0
        for px in range(indptr[x], indptr[x + 1]):
            is_nb[indices[px]] = False

    return orbits


def arc_edge_ids(g) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map each CSR arc of `g` to an undirected edge id.

    Returns (eid per arc, edge_a, edge_b) with edge_a < edge_b and edges
    numbered in ascending (a, b) order.
    """
    src = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees())
    dst = g.indices
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    keys = lo * np.int64(g.n) + hi
    uniq, eid = np.unique(keys, return_inverse=True)
    return eid.astype(np.int64), (uniq // g.n).astype(np.int64), (uniq % g.n).astype(np.int64)


def warmup() -> None:
    """Compile all kernels on a 2-node graph (one-time cost, cached on disk)."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    eid = np.zeros(2, dtype=np.int64)
    ea = np.zeros(1, dtype=np.int64)
    eb = np.ones(1, dtype=np.int64)
    bfs_distance_sums(indptr, indices)
    bfs_harmonic_sums(indptr, indices)
    pivot_distance_sums(indptr, indices, np.array([0], dtype=np.int64))
    brandes_betweenness(indptr, indices)
    orbit_counts_upto4(indptr, indices, eid, ea, eb)
