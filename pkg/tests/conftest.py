"""Shared graph fixtures and seeded random-graph helpers."""
from itertools import combinations

import numpy as np
import pytest

from netposition.graph import Graph, build_graph


def er_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi graph; isolated nodes are kept."""
    rng = np.random.default_rng(seed)
    width = len(str(n - 1))
    labels = [f"n{i:0{width}d}" for i in range(n)]
    edges = [(labels[i], labels[j])
             for i, j in combinations(range(n), 2) if rng.random() < p]
    return build_graph(edges, extra_nodes=labels)


def random_tree(n: int, seed: int) -> Graph:
    """Seeded uniform-ish random tree (each node attaches to a random earlier one)."""
    rng = np.random.default_rng(seed)
    width = len(str(n - 1))
    labels = [f"n{i:0{width}d}" for i in range(n)]
    edges = [(labels[v], labels[int(rng.integers(v))]) for v in range(1, n)]
    return build_graph(edges)


def named_fixture_graphs() -> dict[str, Graph]:
    return {
        "triangle": build_graph([("a", "b"), ("b", "c"), ("c", "a")]),
        "p3": build_graph([("a", "b"), ("b", "c")]),
        "p4": build_graph([("a", "b"), ("b", "c"), ("c", "d")]),
        "k1_3": build_graph([("x", "a"), ("x", "b"), ("x", "c")]),
        "c4": build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
        "c5": build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]),
        "paw": build_graph([("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")]),
        "diamond": build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]),
        "k4": build_graph([(u, v) for u, v in combinations("abcd", 2)]),
    }


@pytest.fixture(scope="session")
def fixtures() -> dict[str, Graph]:
    return named_fixture_graphs()


@pytest.fixture(scope="session")
def star5() -> Graph:
    return build_graph([("x", c) for c in "abcd"])
