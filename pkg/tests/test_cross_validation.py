"""Cross-checks against networkx on graphs too big for the brute-force oracles.

The in-package oracles pin down correctness on small graphs; these tests
add an independent implementation at a scale where ordering or overflow
bugs would show up. networkx is test-only and never imported by the
package itself.
"""
import networkx as nx
import numpy as np
import pytest

from netposition.centrality import betweenness, closeness_exact, coreness
from netposition.pipeline import preferential_attachment_graph

from conftest import er_graph


def to_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((int(u), int(v)) for u, v in g.edge_array())
    return h


def disconnected_graph():
    """Two ER blocks plus isolated members, to exercise the component logic."""
    from netposition.graph import build_graph
    rng = np.random.default_rng(997)
    from itertools import combinations
    edges = []
    for prefix, n in (("a", 80), ("b", 60)):
        labels = [f"{prefix}{i:03d}" for i in range(n)]
        edges += [(labels[i], labels[j])
                  for i, j in combinations(range(n), 2) if rng.random() < 0.05]
    return build_graph(edges, extra_nodes=["z1", "z2"])


@pytest.fixture(scope="module", params=["er", "pa", "disconnected"])
def graph_pair(request):
    if request.param == "er":
        g = er_graph(300, 0.02, seed=999)
    elif request.param == "pa":
        g = preferential_attachment_graph(300, 3, seed=998, vary_attachment=True)
    else:
        g = disconnected_graph()
    return g, to_networkx(g)


def test_betweenness_matches_networkx(graph_pair):
    g, h = graph_pair
    ref = nx.betweenness_centrality(h, normalized=False)
    mine = betweenness(g)
    assert np.abs(mine - np.array([ref[v] for v in range(g.n)])).max() < 1e-8


def test_closeness_matches_networkx(graph_pair):
    g, h = graph_pair
    # wf_improved=False is the plain component-restricted (|C|-1)/sum(d) form
    ref = nx.closeness_centrality(h, wf_improved=False)
    mine = closeness_exact(g)
    assert np.abs(mine - np.array([ref[v] for v in range(g.n)])).max() < 1e-12


def test_coreness_matches_networkx(graph_pair):
    g, h = graph_pair
    ref = nx.core_number(h)
    assert list(coreness(g)) == [ref[v] for v in range(g.n)]
