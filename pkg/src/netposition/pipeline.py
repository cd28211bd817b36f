"""Orchestration: graph -> position features -> assembled table -> report.

Also hosts the synthetic-community generator used for end-to-end
validation: a seeded preferential-attachment graph whose contribution
counts are planted on chosen position features, so the regression stage
has a known right answer to recover.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import centrality
from .graph import Graph, build_graph
from .ingest import NodeAttributes
from .orbits import NUM_ORBITS, count_orbits, local_centrality, local_spanning
from .regression import log1_transform

logger = logging.getLogger(__name__)

ORBIT_COLUMNS = tuple(f"o{i}" for i in range(NUM_ORBITS))
POSITION_COLUMNS = ("closeness", "betweenness", "coreness") + ORBIT_COLUMNS + \
    ("local_centrality", "local_spanning")
ATTRIBUTE_COLUMNS = ("contribution", "tenure_days", "profession")
FEATURE_COLUMNS = ("member",) + POSITION_COLUMNS + ATTRIBUTE_COLUMNS

PLANTABLE_FEATURES = ("closeness", "betweenness", "coreness",
                      "local_centrality", "local_spanning")


def position_features(g: Graph, *, pivots: int | None = None, seed: int = 0,
                      harmonic: bool = False,
                      include_cut_orbits: bool = False) -> tuple[pd.DataFrame, dict]:
    """All position measures for every member, plus a metadata record.

    Rows are ordered by member label ascending (the graph's id order). The
    metadata captures every choice that shapes the numbers so downstream
    verification can reproduce them.
    """
    gf = centrality.global_features(g, pivots=pivots, seed=seed, harmonic=harmonic)
    orbit_counts = count_orbits(g)
    table = {"member": list(g.labels),
             "closeness": gf.closeness,
             "betweenness": gf.betweenness,
             "coreness": gf.coreness}
    for i, col in enumerate(ORBIT_COLUMNS):
        table[col] = orbit_counts[:, i]
    table["local_centrality"] = local_centrality(orbit_counts, include_cut_orbits)
    table["local_spanning"] = local_spanning(orbit_counts)
    metadata = {
        "closeness": "harmonic, normalized by n-1" if harmonic
                     else "component-restricted (|C|-1)/sum(d)",
        "closeness_estimation": None if pivots is None
                                else {"pivots": pivots, "seed": seed},
        "betweenness": "unnormalized, unordered pairs, endpoints excluded",
        "coreness": "minimum-degree k-core number",
        "include_cut_orbits": include_cut_orbits,
        "nodes": g.n,
        "edges": g.m,
    }
    return pd.DataFrame(table), metadata


def assemble_features(g: Graph, position: pd.DataFrame,
                      attrs: dict[str, NodeAttributes]) -> pd.DataFrame:
    """Join position features with member attributes into the feature table.

    The graph's member set is the universe: attributes for members not in
    the graph are an error (the symmetric difference is listed), members
    without attributes get defaults (contribution 0, tenure 0, profession
    "unknown") with a warning. One row per member, ascending label order.
    """
    members = list(g.labels)
    if list(position["member"]) != members:
        missing = sorted(set(members) - set(position["member"]))
        extra = sorted(set(position["member"]) - set(members))
        raise ValueError(f"position features do not cover the graph's member set "
                         f"(missing: {missing[:5]}, unexpected: {extra[:5]})")
    extra_attrs = sorted(set(attrs) - set(members))
    if extra_attrs:
        raise ValueError("attributes name members outside the graph; symmetric "
                         f"difference: {extra_attrs}")
    defaulted = sorted(set(members) - set(attrs))
    if defaulted:
        logger.warning("%d member(s) lack attributes, defaults applied (e.g. %s)",
                       len(defaulted), defaulted[0])
    default = NodeAttributes()
    rows = [attrs.get(member, default) for member in members]
    out = position.copy()
    out["contribution"] = [a.contribution for a in rows]
    out["tenure_days"] = [a.tenure_days for a in rows]
    out["profession"] = [a.profession for a in rows]
    return out[list(FEATURE_COLUMNS)]


def write_feature_csv(path, features: pd.DataFrame) -> None:
    """Feature table to CSV with 12 significant digits on float columns."""
    features.to_csv(path, index=False, float_format="%.12g")


def read_feature_csv(path) -> pd.DataFrame:
    frame = pd.read_csv(path, dtype={"member": str, "profession": str})
    missing = [c for c in FEATURE_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"{path}: feature CSV lacks column(s): {', '.join(missing)}")
    return frame


def write_report_json(path, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")


def preferential_attachment_graph(n: int, attachment: int = 4, seed: int = 0,
                                  vary_attachment: bool = False) -> Graph:
    """Seeded preferential-attachment graph with heavy-tailed degrees.

    Each new node attaches to `attachment` distinct existing nodes chosen
    proportionally to degree (the repeated-endpoints trick). With
    `vary_attachment` the per-node attachment count is drawn uniformly from
    1..attachment instead, which spreads the core numbers out; plain
    preferential attachment gives nearly every node the same coreness,
    which makes a degenerate regression column.
    """
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    if not 1 <= attachment < n:
        raise ValueError(f"attachment must be in [1, n), got {attachment}")
    rng = np.random.default_rng(seed)
    width = len(str(n - 1))
    label = [f"m{i:0{width}d}" for i in range(n)]

    edges: list[tuple[str, str]] = []
    repeated: list[int] = list(range(attachment))
    for v in range(attachment, n):
        a = int(rng.integers(1, attachment + 1)) if vary_attachment else attachment
        if v <= attachment:
            targets = list(range(v))[:a]
        else:
            chosen: set[int] = set()
            while len(chosen) < a:
                chosen.add(repeated[int(rng.integers(len(repeated)))])
            targets = sorted(chosen)
        for t in targets:
            edges.append((label[v], label[t]))
        repeated.extend(targets)
        repeated.extend([v] * len(targets))
    return build_graph(edges, extra_nodes=label)


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a synthetic community with a planted contribution signal."""
    n: int = 2000
    attachment: int = 4
    betas: dict = field(default_factory=lambda: {"local_centrality": 1.0,
                                                 "local_spanning": 0.5})
    sigma: float = 0.3
    seed: int = 13

    def __post_init__(self):
        if self.n < 10:
            raise ValueError(f"n must be >= 10, got {self.n}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not 1 <= self.attachment < self.n:
            raise ValueError(f"attachment must be in [1, n), got {self.attachment}")
        unknown = set(self.betas) - set(PLANTABLE_FEATURES)
        if unknown:
            raise ValueError(f"unknown planted feature(s): {sorted(unknown)}; "
                             f"choose from {PLANTABLE_FEATURES}")
        if not self.betas:
            raise ValueError("betas must plant at least one feature")

    @classmethod
    def from_json(cls, path) -> "SyntheticSpec":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        allowed = {"n", "attachment", "betas", "sigma", "seed"}
        unknown = set(raw) - allowed
        if unknown:
            raise ValueError(f"{path}: unknown synthetic spec key(s): {sorted(unknown)}")
        return cls(**raw)


_PROFESSIONS = ("doctor", "nurse", "other", "programmer")


def generate_synthetic(spec: SyntheticSpec) -> tuple[Graph, dict[str, NodeAttributes]]:
    """Seeded synthetic community: graph plus planted attributes.

    Contribution is round(exp(sum_f beta_f * log(1 + f(v)) + N(0, sigma)))
    where the features f are computed from the generated graph itself, so
    with sigma = 0 contribution is an exact function of the planted
    features. Tenure and profession are random noise controls.
    """
    g = preferential_attachment_graph(spec.n, spec.attachment, spec.seed,
                                      vary_attachment=True)
    rng = np.random.default_rng(spec.seed + 1)

    eta = np.zeros(g.n, dtype=np.float64)
    feature_values = _planted_feature_values(g, spec.betas.keys())
    for name, beta in sorted(spec.betas.items()):
        eta += beta * log1_transform(feature_values[name])
    noise = rng.normal(0.0, spec.sigma, g.n) if spec.sigma > 0 else np.zeros(g.n)
    contribution = np.rint(np.exp(eta + noise)).astype(np.int64)

    tenure = np.round(rng.uniform(0.0, 3650.0, g.n), 2)
    profession = rng.choice(_PROFESSIONS, size=g.n)

    attrs = {label: NodeAttributes(contribution=int(contribution[v]),
                                   tenure_days=float(tenure[v]),
                                   profession=str(profession[v]))
             for v, label in enumerate(g.labels)}
    return g, attrs


def _planted_feature_values(g: Graph, names) -> dict[str, np.ndarray]:
    """Only compute the measures a plant actually uses (closeness and
    betweenness are the expensive ones)."""
    values: dict[str, np.ndarray] = {}
    names = set(names)
    if names & {"local_centrality", "local_spanning"}:
        counts = count_orbits(g)
        values["local_centrality"] = local_centrality(counts).astype(np.float64)
        values["local_spanning"] = local_spanning(counts).astype(np.float64)
    if "closeness" in names:
        values["closeness"] = centrality.closeness_exact(g)
    if "betweenness" in names:
        values["betweenness"] = centrality.betweenness(g)
    if "coreness" in names:
        values["coreness"] = centrality.coreness(g).astype(np.float64)
    return values
