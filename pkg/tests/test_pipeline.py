import logging

import numpy as np
import pytest

from netposition.graph import build_graph
from netposition.ingest import NodeAttributes
from netposition.orbits import count_orbits, local_centrality
from netposition.pipeline import (FEATURE_COLUMNS, SyntheticSpec,
                                  assemble_features, generate_synthetic,
                                  position_features,
                                  preferential_attachment_graph,
                                  read_feature_csv, write_feature_csv)
from netposition.regression import compare_three

from conftest import er_graph


def small_graph():
    return build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])


def full_attrs(g):
    return {label: NodeAttributes(i, float(i * 10), "doctor" if i % 2 else "nurse")
            for i, label in enumerate(g.labels)}


# --- assemble -----------------------------------------------------------------

def test_assemble_shape_and_columns():
    g = small_graph()
    position, _ = position_features(g)
    table = assemble_features(g, position, full_attrs(g))
    assert len(table) == 5
    assert list(table.columns) == list(FEATURE_COLUMNS)
    assert len(FEATURE_COLUMNS) == 1 + 8 + 15  # member + features/attrs + orbits


def test_assemble_defaults_for_missing_member(caplog):
    g = small_graph()
    position, _ = position_features(g)
    attrs = full_attrs(g)
    del attrs["c"]
    with caplog.at_level(logging.WARNING):
        table = assemble_features(g, position, attrs)
    assert "defaults" in caplog.text
    row = table[table["member"] == "c"].iloc[0]
    assert row["contribution"] == 0
    assert row["tenure_days"] == 0.0
    assert row["profession"] == "unknown"


def test_assemble_rejects_extra_member():
    g = small_graph()
    position, _ = position_features(g)
    attrs = full_attrs(g)
    attrs["ghost"] = NodeAttributes()
    with pytest.raises(ValueError, match="ghost"):
        assemble_features(g, position, attrs)


def test_assemble_rejects_mismatched_position_rows():
    g = small_graph()
    position, _ = position_features(g)
    with pytest.raises(ValueError, match="member set"):
        assemble_features(g, position.iloc[1:], full_attrs(g))


def test_assemble_values_match_owning_modules():
    g = er_graph(25, 0.2, 8)
    position, _ = position_features(g)
    table = assemble_features(g, position, {})
    assert list(table["member"]) == list(g.labels)  # nobody invented or dropped
    counts = count_orbits(g)
    assert np.array_equal(table["o3"].to_numpy(), counts[:, 3])
    assert np.array_equal(table["local_centrality"].to_numpy(),
                          local_centrality(counts))


# --- feature CSV ----------------------------------------------------------------

def test_feature_csv_round_trip(tmp_path):
    g = small_graph()
    position, _ = position_features(g)
    table = assemble_features(g, position, full_attrs(g))
    path = tmp_path / "features.csv"
    write_feature_csv(path, table)
    back = read_feature_csv(path)
    assert list(back["member"]) == list(table["member"])
    assert np.allclose(back["closeness"], table["closeness"], rtol=1e-11)
    assert np.array_equal(back["o0"], table["o0"])


def test_feature_csv_is_byte_deterministic(tmp_path):
    g = er_graph(30, 0.15, 4)
    position, _ = position_features(g)
    table = assemble_features(g, position, {})
    p1, p2 = tmp_path / "one.csv", tmp_path / "two.csv"
    write_feature_csv(p1, table)
    position2, _ = position_features(g)
    write_feature_csv(p2, assemble_features(g, position2, {}))
    assert p1.read_bytes() == p2.read_bytes()


def test_read_feature_csv_missing_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("member,closeness\na,0.5\n")
    with pytest.raises(ValueError, match="lacks column"):
        read_feature_csv(path)


# --- preferential attachment -------------------------------------------------------

def test_pa_graph_deterministic():
    a = preferential_attachment_graph(200, 3, seed=5)
    b = preferential_attachment_graph(200, 3, seed=5)
    assert a == b
    c = preferential_attachment_graph(200, 3, seed=6)
    assert a != c


def test_pa_graph_edge_count_fixed_attachment():
    g = preferential_attachment_graph(500, 4, seed=1)
    assert g.m == 4 * (500 - 4)
    assert g.n == 500


def test_pa_graph_heavy_tail():
    g = preferential_attachment_graph(2000, 4, seed=2)
    deg = g.degrees()
    assert deg.max() > 8 * np.median(deg)


def test_pa_graph_validation():
    with pytest.raises(ValueError, match="attachment"):
        preferential_attachment_graph(10, 10, seed=0)
    with pytest.raises(ValueError, match="nodes"):
        preferential_attachment_graph(1, 1, seed=0)


# --- synthetic community -------------------------------------------------------------

def test_synthetic_spec_validation():
    with pytest.raises(ValueError, match="n must be"):
        SyntheticSpec(n=5)
    with pytest.raises(ValueError, match="sigma"):
        SyntheticSpec(sigma=-0.1)
    with pytest.raises(ValueError, match="unknown planted"):
        SyntheticSpec(betas={"degree": 1.0})
    with pytest.raises(ValueError, match="at least one"):
        SyntheticSpec(betas={})


def test_synthetic_is_deterministic():
    spec = SyntheticSpec(n=150, sigma=0.2, seed=3)
    g1, attrs1 = generate_synthetic(spec)
    g2, attrs2 = generate_synthetic(spec)
    assert g1 == g2
    assert attrs1 == attrs2


def test_noiseless_plant_is_deterministic_function_of_feature():
    spec = SyntheticSpec(n=120, sigma=0.0, seed=9,
                         betas={"local_centrality": 0.8})
    g, attrs = generate_synthetic(spec)
    lc = local_centrality(count_orbits(g))
    for v, label in enumerate(g.labels):
        expected = round(np.exp(0.8 * np.log1p(lc[v])))
        assert attrs[label].contribution == expected


def test_noiseless_plant_gives_near_perfect_local_fit():
    spec = SyntheticSpec(n=400, sigma=0.0, seed=11)
    g, attrs = generate_synthetic(spec)
    position, _ = position_features(g)
    table = assemble_features(g, position, attrs)
    report = compare_three(table)
    assert report["models"]["local"]["r_squared"] >= 0.99
