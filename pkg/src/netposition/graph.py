"""Undirected simple graph over labeled members.

Nodes carry opaque string labels. Internally they get dense integer ids
assigned by sorting the labels, so the same node/edge set always produces
the same representation no matter how the input was ordered. Adjacency is
stored CSR-style (indptr/indices) with ascending neighbor lists, which the
measure kernels consume directly.
"""
from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class Graph:
    """Immutable undirected simple graph (no self-loops, no duplicate edges)."""

    __slots__ = ("labels", "indptr", "indices", "dropped_self_loops",
                 "dropped_duplicates", "_label_to_id")

    def __init__(self, labels: Sequence[str], indptr: np.ndarray, indices: np.ndarray,
                 dropped_self_loops: int = 0, dropped_duplicates: int = 0):
        self.labels = tuple(labels)
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.dropped_self_loops = int(dropped_self_loops)
        self.dropped_duplicates = int(dropped_duplicates)
        self._label_to_id = {label: i for i, label in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return self.indices.size // 2

    def degree(self, v: int) -> int:
        self._check_id(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)."""
        self._check_id(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_id(u)
        self._check_id(v)
        row = self.neighbors(u)
        k = np.searchsorted(row, v)
        return k < row.size and row[k] == v

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def id_of(self, label: str) -> int:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise KeyError(f"unknown member label: {label!r}") from None

    def label_of(self, v: int) -> str:
        self._check_id(v)
        return self.labels[v]

    def _check_id(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range [0, {self.n})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.labels == other.labels
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.labels, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(edges: Iterable[Sequence[str]], extra_nodes: Iterable[str] = ()) -> Graph:
    """Build a deduplicated simple graph from (label, label) pairs.

    Self-loops and duplicate edges are dropped; the counts end up on the
    returned graph and are logged as a warning when nonzero. `extra_nodes`
    adds members that have no edges (they keep attributes and zero-valued
    features downstream). Raises ValueError for an empty graph or a
    malformed pair.
    """
    labels: set[str] = set()
    pairs: list[tuple[str, str]] = []
    for i, pair in enumerate(edges):
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise ValueError(f"malformed edge pair at entry {i}: {pair!r}") from None
        if not isinstance(u, str) or not isinstance(v, str) or not u or not v:
            raise ValueError(f"malformed edge pair at entry {i}: {pair!r} "
                             "(labels must be non-empty strings)")
        pairs.append((u, v))
        labels.add(u)
        labels.add(v)
    for label in extra_nodes:
        if not isinstance(label, str) or not label:
            raise ValueError(f"malformed node label: {label!r}")
        labels.add(label)
    if not labels:
        raise ValueError("empty graph")

    ordered = sorted(labels)
    ids = {label: i for i, label in enumerate(ordered)}

    self_loops = 0
    duplicates = 0
    seen: set[tuple[int, int]] = set()
    for u, v in pairs:
        iu, iv = ids[u], ids[v]
        if iu == iv:
            self_loops += 1
            continue
        key = (iu, iv) if iu < iv else (iv, iu)
        if key in seen:
            duplicates += 1
        else:
            seen.add(key)
    if self_loops or duplicates:
        logger.warning("build_graph dropped %d self-loop(s) and %d duplicate edge(s)",
                       self_loops, duplicates)

    n = len(ordered)
    if seen:
        edge_arr = np.array(sorted(seen), dtype=np.int64)
        src = np.concatenate([edge_arr[:, 0], edge_arr[:, 1]])
        dst = np.concatenate([edge_arr[:, 1], edge_arr[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    else:
        indices = np.empty(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)

    return Graph(ordered, indptr, indices,
                 dropped_self_loops=self_loops, dropped_duplicates=duplicates)


def connected_components(g: Graph) -> np.ndarray:
    """Per-node component labels, contiguous 0..c-1.

    Components are numbered in order of their smallest internal node id.
    """
    comp = np.full(g.n, -1, dtype=np.int64)
    label = 0
    indptr, indices = g.indptr, g.indices
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        comp[start] = label
        stack = [start]
        while stack:
            v = stack.pop()
            for w in indices[indptr[v]:indptr[v + 1]]:
                if comp[w] < 0:
                    comp[w] = label
                    stack.append(int(w))
        label += 1
    return comp


def component_sizes(comp: np.ndarray) -> np.ndarray:
    """Size of each component, indexed by component label."""
    return np.bincount(comp)


def read_edge_csv(path) -> list[tuple[str, str]]:
    """Read an edge list CSV with header ``source,target``.

    Lines starting with ``#`` are ignored, as is any extra column (such as
    the ``weight`` column the ingest step emits). Returns label pairs in
    file order; malformed rows raise ValueError naming the line.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = csv.reader(line for line in fh if not line.startswith("#"))
        header = next(rows, None)
        if header is None or [c.strip().lower() for c in header[:2]] != ["source", "target"]:
            raise ValueError(f"{path}: expected header 'source,target', got {header!r}")
        pairs = []
        for lineno, row in enumerate(rows, start=2):
            if not row:
                continue
            if len(row) < 2 or not row[0] or not row[1]:
                raise ValueError(f"{path}: malformed edge at line {lineno}: {row!r}")
            pairs.append((row[0], row[1]))
    return pairs


def write_edge_csv(path, g: Graph, weights: dict[tuple[str, str], int] | None = None) -> None:
    """Write the graph's edges as CSV, optionally with a weight column.

    Edges are emitted in ascending (source, target) label order so repeated
    runs produce identical bytes.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if weights is None:
            writer.writerow(["source", "target"])
            for u, v in g.edge_array():
                writer.writerow([g.labels[u], g.labels[v]])
        else:
            writer.writerow(["source", "target", "weight"])
            for u, v in g.edge_array():
                a, b = g.labels[u], g.labels[v]
                writer.writerow([a, b, weights.get((a, b), 1)])
