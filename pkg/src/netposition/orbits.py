"""Graphlet orbit counts and the two composite local position features.

Orbits 0-14 index the node positions on the 9 connected graphlets with 2-4
nodes (G0 edge, G1 path, G2 triangle, G3 four-path, G4 star, G5 four-cycle,
G6 paw, G7 diamond, G8 four-clique). A node's orbit-o count is the number
of vertex subsets containing it whose induced subgraph is that graphlet
with the node sitting on orbit o.

Orbits carry two classifications used to build scalar features:

* edges touched by the orbit within its graphlet (1, 2, or 3) - the basis
  of `local_centrality`;
* number of extra components the graphlet falls apart into when the orbit
  node is deleted (0, 1, or 2) - the basis of `local_spanning`.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import Graph

NUM_ORBITS = 15

GRAPHLET_OF_ORBIT = ("G0", "G1", "G1", "G2", "G3", "G3", "G4", "G4",
                     "G5", "G6", "G6", "G6", "G7", "G7", "G8")

EDGES_TOUCHED = np.array([1, 1, 2, 2, 1, 2, 1, 3, 2, 1, 2, 3, 2, 3, 3], dtype=np.int64)

COMPONENTS_ON_DELETION = np.array([0, 0, 1, 0, 0, 1, 0, 2, 0, 0, 0, 1, 0, 0, 0],
                                  dtype=np.int64)

# Weights for local_centrality. Orbits 2 and 5 both touch two edges but sit
# outside the published two-edge class, so they default to weight 0; the
# include_cut_orbits flag restores them at weight 2.
CENTRALITY_WEIGHTS = EDGES_TOUCHED.copy()
CENTRALITY_WEIGHTS[2] = 0
CENTRALITY_WEIGHTS[5] = 0
CENTRALITY_WEIGHTS_WITH_CUT = EDGES_TOUCHED

SPANNING_WEIGHTS = COMPONENTS_ON_DELETION


def count_orbits(g: Graph) -> np.ndarray:
    """Exact induced orbit counts, one row of 15 per node.

    Uses direct counting for the 2-3-node orbits plus the standard linear
    relations that recover the eleven 4-node orbit counts from path and
    triangle aggregates, so it runs in roughly O(sum of squared degrees)
    instead of enumerating 4-node subsets.
    """
    eid, edge_a, edge_b = _kernels.arc_edge_ids(g)
    return _kernels.orbit_counts_upto4(g.indptr, g.indices, eid, edge_a, edge_b)


def local_centrality(counts: np.ndarray, include_cut_orbits: bool = False) -> np.ndarray:
    """Edges-touched-weighted sum of a node's orbit counts.

    Accepts a single 15-vector or an (n, 15) matrix; returns a scalar or a
    vector accordingly.
    """
    weights = CENTRALITY_WEIGHTS_WITH_CUT if include_cut_orbits else CENTRALITY_WEIGHTS
    return np.asarray(counts, dtype=np.int64) @ weights


def local_spanning(counts: np.ndarray) -> np.ndarray:
    """Components-created-weighted sum of a node's orbit counts."""
    return np.asarray(counts, dtype=np.int64) @ SPANNING_WEIGHTS


def taxonomy() -> dict:
    """The orbit classification table as plain data (for docs and the CLI)."""
    return {
        "orbits": [
            {
                "orbit": o,
                "graphlet": GRAPHLET_OF_ORBIT[o],
                "edges_touched": int(EDGES_TOUCHED[o]),
                "components_on_deletion": int(COMPONENTS_ON_DELETION[o]),
                "local_centrality_weight": int(CENTRALITY_WEIGHTS[o]),
                "local_centrality_weight_with_cut_orbits": int(CENTRALITY_WEIGHTS_WITH_CUT[o]),
                "local_spanning_weight": int(SPANNING_WEIGHTS[o]),
            }
            for o in range(NUM_ORBITS)
        ],
    }
