import numpy as np
import pytest

from netposition.graph import (build_graph, connected_components, read_edge_csv,
                               write_edge_csv)

from conftest import er_graph


def test_dedup_and_self_loop_rules():
    g = build_graph([("a", "b"), ("b", "a"), ("a", "a")])
    assert g.n == 2
    assert g.m == 1
    assert g.dropped_self_loops == 1
    assert g.dropped_duplicates == 1


def test_path_degrees():
    g = build_graph([("a", "b"), ("b", "c")])
    assert g.n == 3
    assert [g.degree(g.id_of(x)) for x in "abc"] == [1, 2, 1]


def test_triangle_degrees():
    g = build_graph([("a", "b"), ("b", "c"), ("c", "a")])
    assert list(g.degrees()) == [2, 2, 2]


def test_empty_graph_is_an_error():
    with pytest.raises(ValueError, match="empty graph"):
        build_graph([])


def test_malformed_pair_is_an_error():
    with pytest.raises(ValueError, match="entry 1"):
        build_graph([("a", "b"), ("c",)])
    with pytest.raises(ValueError, match="non-empty"):
        build_graph([("a", "")])


def test_isolated_nodes_are_retained():
    g = build_graph([("a", "b")], extra_nodes=["z"])
    assert g.labels == ("a", "b", "z")
    assert g.degree(g.id_of("z")) == 0


def test_ids_assigned_by_sorted_label():
    g = build_graph([("zebra", "apple"), ("mango", "apple")])
    assert g.labels == ("apple", "mango", "zebra")
    assert g.id_of("apple") == 0


def test_degree_sum_is_twice_edges():
    for seed in range(5):
        g = er_graph(40, 0.15, seed)
        assert int(g.degrees().sum()) == 2 * g.m


def test_build_is_idempotent_under_permutation():
    edges = [("c", "a"), ("b", "c"), ("d", "a"), ("b", "d")]
    g1 = build_graph(edges)
    rng = np.random.default_rng(7)
    for _ in range(10):
        shuffled = [edges[i] for i in rng.permutation(len(edges))]
        flipped = [(v, u) if rng.random() < 0.5 else (u, v) for u, v in shuffled]
        assert build_graph(flipped) == g1


def test_neighbor_lists_sorted_unique_valid():
    for seed in range(5):
        g = er_graph(30, 0.2, seed)
        for v in range(g.n):
            nb = g.neighbors(v)
            assert np.all(np.diff(nb) > 0)
            assert nb.size == 0 or (nb.min() >= 0 and nb.max() < g.n)
            assert v not in nb


def test_has_edge_symmetry():
    g = er_graph(25, 0.2, 3)
    for u in range(g.n):
        for v in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)


def test_invalid_id_raises():
    g = build_graph([("a", "b")])
    with pytest.raises(IndexError):
        g.degree(2)
    with pytest.raises(KeyError):
        g.id_of("nope")


def test_components_triangle_plus_isolated():
    g = build_graph([("a", "b"), ("b", "c"), ("c", "a")], extra_nodes=["d"])
    assert list(connected_components(g)) == [0, 0, 0, 1]


def test_components_connected_graph():
    g = build_graph([("a", "b"), ("b", "c"), ("c", "d")])
    assert list(connected_components(g)) == [0, 0, 0, 0]


def test_components_empty_edge_graph():
    g = build_graph([], extra_nodes=["a", "b", "c"])
    assert list(connected_components(g)) == [0, 1, 2]


def test_edge_csv_round_trip(tmp_path):
    g = er_graph(20, 0.2, 11)
    path = tmp_path / "edges.csv"
    write_edge_csv(path, g)
    g2 = build_graph(read_edge_csv(path), extra_nodes=g.labels)
    assert g2 == g


def test_edge_csv_weights_and_comments(tmp_path):
    path = tmp_path / "edges.csv"
    path.write_text("# produced by a test\nsource,target,weight\na,b,3\nb,c,1\n")
    assert read_edge_csv(path) == [("a", "b"), ("b", "c")]


def test_edge_csv_missing_header(tmp_path):
    path = tmp_path / "edges.csv"
    path.write_text("a,b\nb,c\n")
    with pytest.raises(ValueError, match="source,target"):
        read_edge_csv(path)


def test_edge_csv_malformed_row_names_line(tmp_path):
    path = tmp_path / "edges.csv"
    path.write_text("source,target\na,b\nc\n")
    with pytest.raises(ValueError, match="line 3"):
        read_edge_csv(path)
