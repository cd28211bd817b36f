import logging

import numpy as np

from netposition.graph import build_graph
from netposition.oracles import brute_force_orbits
from netposition.orbits import (CENTRALITY_WEIGHTS, CENTRALITY_WEIGHTS_WITH_CUT,
                                COMPONENTS_ON_DELETION, EDGES_TOUCHED,
                                SPANNING_WEIGHTS, count_orbits, local_centrality,
                                local_spanning, taxonomy)

from conftest import er_graph


def orbit_map(g, counts, label):
    row = counts[g.id_of(label)]
    return {o: int(c) for o, c in enumerate(row) if c}


# --- named fixtures -----------------------------------------------------------

def test_triangle(fixtures):
    counts = count_orbits(fixtures["triangle"])
    for row in counts:
        assert {o: int(c) for o, c in enumerate(row) if c} == {0: 2, 3: 1}


def test_star_k13(fixtures):
    g = fixtures["k1_3"]
    counts = count_orbits(g)
    assert orbit_map(g, counts, "x") == {0: 3, 2: 3, 7: 1}
    for leaf in "abc":
        assert orbit_map(g, counts, leaf) == {0: 1, 1: 2, 6: 1}


def test_k4(fixtures):
    counts = count_orbits(fixtures["k4"])
    for row in counts:
        assert {o: int(c) for o, c in enumerate(row) if c} == {0: 3, 3: 3, 14: 1}


def test_paw(fixtures):
    g = fixtures["paw"]
    counts = count_orbits(g)
    assert orbit_map(g, counts, "d") == {0: 1, 1: 2, 9: 1}
    assert orbit_map(g, counts, "a") == {0: 3, 2: 2, 3: 1, 11: 1}
    for x in "bc":
        assert orbit_map(g, counts, x) == {0: 2, 1: 1, 3: 1, 10: 1}


def test_single_edge():
    g = build_graph([("a", "b")])
    counts = count_orbits(g)
    assert np.array_equal(counts, [[1] + [0] * 14, [1] + [0] * 14])


def test_empty_edge_graph():
    g = build_graph([], extra_nodes=["a", "b", "c"])
    assert not count_orbits(g).any()
    assert not brute_force_orbits(g).any()


# --- oracle agreement and identities -------------------------------------------

def test_matches_brute_force_on_random_graphs(fixtures):
    graphs = list(fixtures.values())
    graphs += [er_graph(22, p, seed) for p in (0.1, 0.25, 0.4) for seed in range(4)]
    for g in graphs:
        assert np.array_equal(count_orbits(g), brute_force_orbits(g))


def check_identities(g, counts):
    deg = g.degrees()
    assert np.array_equal(counts[:, 0], deg)
    assert np.array_equal(counts[:, 2] + counts[:, 3], deg * (deg - 1) // 2)
    total = counts.sum(axis=0)
    assert total[1] == 2 * total[2]      # path ends vs middles
    assert total[4] == total[5]          # four-path ends vs middles
    assert total[6] == 3 * total[7]      # star leaves vs centers
    assert total[9] == total[11]         # paw pendant vs cut vertex
    assert total[10] == 2 * total[11]    # paw rim vs cut vertex
    assert total[12] == total[13]        # diamond low vs high degree
    assert total[3] % 3 == 0
    assert total[8] % 4 == 0
    assert total[14] % 4 == 0


def test_orbit_identities(fixtures):
    for g in fixtures.values():
        check_identities(g, count_orbits(g))
    for seed in range(6):
        g = er_graph(35, 0.15, seed + 30)
        check_identities(g, count_orbits(g))


def test_orbit_identities_at_scale():
    # the equation solve must stay exact on a heavy-tailed mid-size graph
    from netposition.pipeline import preferential_attachment_graph
    g = preferential_attachment_graph(5000, 4, seed=77, vary_attachment=True)
    counts = count_orbits(g)
    check_identities(g, counts)
    assert counts.min() >= 0


def test_invariant_under_relabeling():
    from test_centrality import relabeled
    for seed in range(3):
        g = er_graph(25, 0.2, seed + 400)
        h, mapping = relabeled(g, seed)
        assert np.array_equal(count_orbits(g), count_orbits(h)[mapping])


def test_brute_force_warns_above_threshold(caplog):
    g = er_graph(61, 0.02, 1)
    with caplog.at_level(logging.WARNING):
        brute_force_orbits(g)
    assert any("testing oracle" in r.message for r in caplog.records)


# --- composite local features ---------------------------------------------------

def test_local_centrality_zero_vector():
    assert local_centrality(np.zeros(15, dtype=np.int64)) == 0


def test_local_centrality_k4_node():
    vec = np.zeros(15, dtype=np.int64)
    vec[0], vec[3], vec[14] = 3, 3, 1
    assert local_centrality(vec) == 12  # 1*3 + 2*3 + 3*1


def test_local_centrality_star_center_cut_orbit_flag():
    vec = np.zeros(15, dtype=np.int64)
    vec[0], vec[2], vec[7] = 3, 3, 1
    assert local_centrality(vec) == 6
    assert local_centrality(vec, include_cut_orbits=True) == 12


def test_local_spanning_examples(fixtures):
    star_center = np.zeros(15, dtype=np.int64)
    star_center[0], star_center[2], star_center[7] = 3, 3, 1
    assert local_spanning(star_center) == 5  # 1*3 + 2*1

    tri_node = count_orbits(fixtures["triangle"])[0]
    assert local_spanning(tri_node) == 0

    paw = fixtures["paw"]
    assert local_spanning(count_orbits(paw)[paw.id_of("a")]) == 3


def test_zero_spanning_implies_zero_cut_orbits():
    for seed in range(4):
        g = er_graph(30, 0.12, seed + 900)
        counts = count_orbits(g)
        spanning = local_spanning(counts)
        for v in np.flatnonzero(spanning == 0):
            assert counts[v, 2] == counts[v, 5] == counts[v, 7] == counts[v, 11] == 0


def test_feature_monotonicity_in_counts():
    base = np.arange(15, dtype=np.int64)
    for o in range(15):
        bumped = base.copy()
        bumped[o] += 1
        assert local_centrality(bumped) >= local_centrality(base)
        assert local_centrality(bumped, True) >= local_centrality(base, True)
        assert local_spanning(bumped) >= local_spanning(base)


def test_matrix_and_vector_forms_agree(fixtures):
    counts = count_orbits(fixtures["paw"])
    vec = np.array([local_centrality(row) for row in counts])
    assert np.array_equal(local_centrality(counts), vec)


# --- taxonomy -------------------------------------------------------------------

def test_edges_touched_classes():
    assert {o for o in range(15) if EDGES_TOUCHED[o] == 1} == {0, 1, 4, 6, 9}
    assert {o for o in range(15) if EDGES_TOUCHED[o] == 3} == {7, 11, 13, 14}
    assert {o for o in range(15) if EDGES_TOUCHED[o] == 2} == {2, 3, 5, 8, 10, 12}


def test_components_on_deletion_classes():
    assert {o for o in range(15) if COMPONENTS_ON_DELETION[o] == 1} == {2, 5, 11}
    assert {o for o in range(15) if COMPONENTS_ON_DELETION[o] == 2} == {7}
    assert {o for o in range(15) if COMPONENTS_ON_DELETION[o] == 0} == \
        {0, 1, 3, 4, 6, 8, 9, 10, 12, 13, 14}


def test_centrality_weights_follow_published_lists():
    assert CENTRALITY_WEIGHTS[2] == CENTRALITY_WEIGHTS[5] == 0
    assert CENTRALITY_WEIGHTS_WITH_CUT[2] == CENTRALITY_WEIGHTS_WITH_CUT[5] == 2
    assert np.array_equal(SPANNING_WEIGHTS, COMPONENTS_ON_DELETION)


def test_taxonomy_export():
    table = taxonomy()
    assert len(table["orbits"]) == 15
    row = table["orbits"][7]
    assert row["graphlet"] == "G4"
    assert row["edges_touched"] == 3
    assert row["components_on_deletion"] == 2
    assert row["local_spanning_weight"] == 2
