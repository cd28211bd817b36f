"""Brute-force reference implementations.

These spell out the definitions directly - subset enumeration for orbit
counts, explicit shortest-path enumeration for betweenness - and share no
logic with the fast paths, so agreement between the two is meaningful
evidence. Costs are exponential-ish; they are intended for graphs up to a
few dozen nodes.
"""
from __future__ import annotations

import logging
from collections import Counter
from itertools import combinations

import numpy as np

from .graph import Graph

logger = logging.getLogger(__name__)

SIZE_WARNING_THRESHOLD = 60

# (size, edge count, degree sequence) identifies every connected graphlet on
# <= 4 nodes, and within a graphlet the node's own degree identifies its
# orbit. Keys: (size, edges, degseq) -> {degree: orbit}.
_ORBIT_OF_DEGREE = {
    (2, 1, (1, 1)): {1: 0},
    (3, 2, (1, 1, 2)): {1: 1, 2: 2},
    (3, 3, (2, 2, 2)): {2: 3},
    (4, 3, (1, 1, 2, 2)): {1: 4, 2: 5},          # four-path
    (4, 3, (1, 1, 1, 3)): {1: 6, 3: 7},          # star
    (4, 4, (2, 2, 2, 2)): {2: 8},                # four-cycle
    (4, 4, (1, 2, 2, 3)): {1: 9, 2: 10, 3: 11},  # paw
    (4, 5, (2, 2, 3, 3)): {2: 12, 3: 13},        # diamond
    (4, 6, (3, 3, 3, 3)): {3: 14},               # four-clique
}


def brute_force_orbits(g: Graph) -> np.ndarray:
    """Orbit counts by enumerating every 2-, 3-, and 4-node vertex subset.

    Same output contract as `count_orbits`. Warns (and proceeds) above
    SIZE_WARNING_THRESHOLD nodes, where the quartic subset count starts to
    hurt.
    """
    n = g.n
    if n > SIZE_WARNING_THRESHOLD:
        logger.warning("brute_force_orbits on %d nodes enumerates ~%d subsets; "
                       "this is a testing oracle, expect it to be slow",
                       n, n ** 4 // 24)
    adj = [set(map(int, g.neighbors(v))) for v in range(n)]
    counts = np.zeros((n, 15), dtype=np.int64)
    nodes = range(n)

    for subset in combinations(nodes, 2):
        _tally(subset, adj, counts)
    for subset in combinations(nodes, 3):
        _tally(subset, adj, counts)
    for subset in combinations(nodes, 4):
        _tally(subset, adj, counts)
    return counts


def _tally(subset, adj, counts) -> None:
    degs = [sum(1 for u in subset if u in adj[v]) for v in subset]
    if min(degs) == 0:
        return
    size = len(subset)
    edges = sum(degs) // 2
    # with every degree >= 1, edge count alone settles connectivity here:
    # 3 nodes need >= 2 edges, 4 nodes >= 3 (two disjoint edges are the only
    # min-degree-1 disconnected case and have only 2 edges)
    if edges < size - 1:
        return
    orbit_of = _ORBIT_OF_DEGREE[(size, edges, tuple(sorted(degs)))]
    for v, d in zip(subset, degs):
        counts[v, orbit_of[d]] += 1


def brute_force_betweenness(g: Graph) -> np.ndarray:
    """Betweenness by enumerating every shortest path of every node pair.

    For each unordered pair (s, t): list all shortest s-t paths explicitly,
    then credit each interior node with its share of the pair's paths.
    """
    n = g.n
    bc = np.zeros(n, dtype=np.float64)
    adj = [list(map(int, g.neighbors(v))) for v in range(n)]
    for s in range(n):
        dist = _bfs_distances(adj, s, n)
        for t in range(s + 1, n):
            if dist[t] <= 1:
                continue  # unreachable or adjacent: no interior nodes
            paths = _shortest_paths(adj, dist, s, t)
            interior = Counter(v for path in paths for v in path[1:-1])
            for v, c in interior.items():
                bc[v] += c / len(paths)
    return bc


def _bfs_distances(adj, s, n):
    dist = [-1] * n
    dist[s] = 0
    frontier = [s]
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def _shortest_paths(adj, dist, s, t):
    """All shortest s->t paths, walking predecessors back from t."""
    if dist[t] < 0:
        return []
    paths = []
    stack = [(t, [t])]
    while stack:
        v, tail = stack.pop()
        if v == s:
            paths.append(tail[::-1])
            continue
        for w in adj[v]:
            if dist[w] == dist[v] - 1:
                stack.append((w, tail + [w]))
    return paths


def kcore_members(g: Graph, k: int) -> set[int]:
    """The k-core from its definition: cascade-delete nodes of degree < k."""
    adj = [set(map(int, g.neighbors(v))) for v in range(g.n)]
    deg = [len(a) for a in adj]
    alive = set(range(g.n))
    queue = [v for v in alive if deg[v] < k]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] < k:
                    queue.append(w)
    return alive


def verify_coreness(g: Graph, core: np.ndarray) -> None:
    """Check claimed core numbers against from-definition k-cores.

    For every k up to max(core) + 1 the set {v: core[v] >= k} must equal
    the k-core computed by cascade deletion. Equality gives both halves of
    the defining property: the claimed shell has minimum induced degree
    >= k, and no node could be promoted one level (maximality). Raises
    AssertionError on the first mismatch.
    """
    top = int(core.max(initial=0))
    for k in range(0, top + 2):
        claimed = {v for v in range(g.n) if core[v] >= k}
        actual = kcore_members(g, k)
        if claimed != actual:
            diff = sorted(claimed ^ actual)
            raise AssertionError(
                f"k={k}: claimed shell and definitional {k}-core disagree on "
                f"node(s) {diff[:5]}{'...' if len(diff) > 5 else ''}")
