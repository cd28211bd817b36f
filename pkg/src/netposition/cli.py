"""Batch command-line interface.

Subcommands: ingest, features, regress, verify, taxonomy, synth. Summaries
go to stdout as JSON (``--pretty`` switches to human-oriented text); log
messages go to stderr. Every run is deterministic given its flags: the
sampling seed defaults to a fixed constant, never the clock.

Exit codes: 0 success, 1 generic failure (including verify mismatches),
2 input/usage error, 3 numerical or model error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import (betweenness, closeness_estimated, closeness_exact,
                         coreness)
from .graph import build_graph, read_edge_csv, write_edge_csv
from .ingest import (CodeDetection, InteractionPolicy, POLICY_MODES,
                     build_interaction_network, compute_attributes, parse_posts,
                     read_attrs_csv, write_attrs_csv)
from .oracles import brute_force_betweenness, brute_force_orbits, verify_coreness
from .orbits import count_orbits, taxonomy
from .pipeline import (FEATURE_COLUMNS, SyntheticSpec, assemble_features,
                       generate_synthetic, position_features, read_feature_csv,
                       write_feature_csv, write_report_json)
from .regression import RankDeficiencyError, coefficients_frame, compare_three

DEFAULT_SEED = 13
VERIFY_MAX_NODES = 60

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_MODEL = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(args, payload: dict, pretty_lines) -> None:
    if getattr(args, "pretty", False):
        for line in pretty_lines:
            print(line)
    else:
        print(json.dumps(payload, sort_keys=True))


def cmd_ingest(args) -> int:
    posts = parse_posts(args.posts)
    policy = InteractionPolicy(mode=args.policy, window=args.window)
    detection = CodeDetection(min_lines=args.min_code_lines)
    g, weights = build_interaction_network(posts, policy)
    attrs = compute_attributes(posts, detection, args.member_attrs)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    edges_path = out_dir / "edges.csv"
    attrs_path = out_dir / "attrs.csv"
    write_edge_csv(edges_path, g, weights)
    write_attrs_csv(attrs_path, attrs)

    payload = {
        "posts": len(posts),
        "threads": len({p.thread_id for p in posts}),
        "nodes": g.n,
        "edges": g.m,
        "dropped_self_loops": g.dropped_self_loops,
        "dropped_duplicate_edges": g.dropped_duplicates,
        "policy": args.policy,
        "outputs": {"edges": str(edges_path), "attributes": str(attrs_path)},
    }
    _emit(args, payload, [
        f"posts: {len(posts)} in {payload['threads']} thread(s)",
        f"network: {g.n} member(s), {g.m} edge(s) [{args.policy}]",
        f"wrote {edges_path} and {attrs_path}",
    ])
    return EXIT_OK


def _load_graph_for_features(edges_path, attrs_path):
    pairs = read_edge_csv(edges_path)
    attrs = read_attrs_csv(attrs_path) if attrs_path else {}
    # attribute-only members are kept as isolated nodes so an ingest
    # round-trip does not lose single-author threads
    g = build_graph(pairs, extra_nodes=list(attrs))
    return g, attrs


def cmd_features(args) -> int:
    g, attrs = _load_graph_for_features(args.edges, args.attrs)
    position, metadata = position_features(
        g, pivots=args.pivots, seed=args.seed, harmonic=args.harmonic,
        include_cut_orbits=args.include_cut_orbits)
    table = assemble_features(g, position, attrs)
    out = Path(args.out)
    write_feature_csv(out, table)
    meta_path = out.with_suffix(".meta.json")
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")

    payload = {"nodes": g.n, "edges": g.m, "output": str(out),
               "metadata_file": str(meta_path), "metadata": metadata}
    _emit(args, payload, [
        f"network: {g.n} member(s), {g.m} edge(s)",
        f"closeness: {metadata['closeness']}"
        + (f" (pivots={args.pivots}, seed={args.seed})" if args.pivots else ""),
        f"wrote {out} ({len(FEATURE_COLUMNS)} columns) and {meta_path}",
    ])
    return EXIT_OK


def cmd_regress(args) -> int:
    table = read_feature_csv(args.features)
    report = compare_three(table, log_offset=args.log_offset, alpha=args.alpha)
    write_report_json(args.out, report)
    if args.coefficients:
        coefficients_frame(report).to_csv(args.coefficients, index=False,
                                          float_format="%.12g")

    r2 = {name: model["r_squared"] for name, model in report["models"].items()}
    payload = {"preferred_model": report["preferred_model"], "r_squared": r2,
               "n": report["models"]["both"]["n"], "output": str(args.out)}
    lines = [f"members: {payload['n']}"]
    lines += [f"R^2 [{name}]: {value:.4f}" for name, value in sorted(r2.items())]
    lines += [f"preferred model: {report['preferred_model']}", f"wrote {args.out}"]
    _emit(args, payload, lines)
    return EXIT_OK


def _check_feature_file(g, frame, meta) -> tuple[bool, str]:
    pivots = None
    seed = DEFAULT_SEED
    harmonic = False
    cut = False
    if meta:
        est = meta.get("closeness_estimation")
        if est:
            pivots, seed = est["pivots"], est["seed"]
        harmonic = meta.get("closeness", "").startswith("harmonic")
        cut = bool(meta.get("include_cut_orbits", False))
    position, _ = position_features(g, pivots=pivots, seed=seed, harmonic=harmonic,
                                    include_cut_orbits=cut)
    if list(frame["member"]) != list(position["member"]):
        return False, "member column does not match the graph's member set"
    for col in position.columns:
        if col == "member":
            continue
        got = frame[col].to_numpy(dtype=np.float64)
        want = position[col].to_numpy(dtype=np.float64)
        ok = np.isclose(got, want, rtol=1e-9, atol=1e-12)
        if not ok.all():
            member = position["member"][int(np.argmin(ok))]
            return False, f"column {col} mismatches at member {member}"
    return True, ""


def cmd_verify(args) -> int:
    feature_frame = read_feature_csv(args.features) if args.features else None
    extra = list(feature_frame["member"]) if feature_frame is not None else ()
    g = build_graph(read_edge_csv(args.edges), extra_nodes=extra)
    if g.n > args.max_nodes:
        raise ValueError(
            f"graph has {g.n} nodes; the brute-force oracles are guarded at "
            f"{args.max_nodes}. Rerun with --max-nodes {g.n} to force it "
            "(expect roughly quartic cost in nodes).")

    checks: list[tuple[str, bool, str]] = []

    fast, slow = count_orbits(g), brute_force_orbits(g)
    if np.array_equal(fast, slow):
        checks.append(("orbit counts match subset-enumeration oracle", True, ""))
    else:
        v = int(np.argwhere(fast != slow)[0][0])
        checks.append(("orbit counts match subset-enumeration oracle", False,
                       f"first mismatch at member {g.labels[v]}"))

    bc, bc_ref = betweenness(g), brute_force_betweenness(g)
    err = float(np.abs(bc - bc_ref).max()) if g.n else 0.0
    checks.append(("betweenness matches path-enumeration oracle (<=1e-9)",
                   err <= 1e-9, f"max abs error {err:.3e}"))

    core = coreness(g)
    try:
        verify_coreness(g, core)
        tie_ok = np.array_equal(core, coreness(g, tie_break="descending"))
        checks.append(("coreness shells equal definitional k-cores", True, ""))
        checks.append(("coreness invariant under peeling tie-break", tie_ok,
                       "" if tie_ok else "ascending/descending orders disagree"))
    except AssertionError as exc:
        checks.append(("coreness shells equal definitional k-cores", False, str(exc)))

    clo_err = float(np.abs(closeness_estimated(g, g.n, seed=args.seed)
                           - closeness_exact(g)).max())
    checks.append(("full-pivot closeness estimate equals exact (<=1e-12)",
                   clo_err <= 1e-12, f"max abs error {clo_err:.3e}"))

    if feature_frame is not None:
        meta = {}
        meta_path = Path(args.features).with_suffix(".meta.json")
        if meta_path.exists():
            with open(meta_path, encoding="utf-8") as fh:
                meta = json.load(fh)
        ok, detail = _check_feature_file(g, feature_frame, meta)
        checks.append(("feature file matches recomputation", ok, detail))

    failed = False
    for name, ok, detail in checks:
        if ok:
            print(f"PASS: {name}")
        else:
            failed = True
            print(f"FAIL: {name}" + (f" ({detail})" if detail else ""))
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_taxonomy(args) -> int:
    table = taxonomy()
    if args.pretty:
        header = (f"{'orbit':>5} {'graphlet':>8} {'edges':>6} {'breaks':>7} "
                  f"{'w_centrality':>13} {'w_spanning':>11}")
        print(header)
        for row in table["orbits"]:
            print(f"{row['orbit']:>5} {row['graphlet']:>8} {row['edges_touched']:>6} "
                  f"{row['components_on_deletion']:>7} "
                  f"{row['local_centrality_weight']:>13} {row['local_spanning_weight']:>11}")
    else:
        print(json.dumps(table, sort_keys=True))
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.config:
        spec = SyntheticSpec.from_json(args.config)
        overrides = {}
        if args.n is not None:
            overrides["n"] = args.n
        if args.sigma is not None:
            overrides["sigma"] = args.sigma
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            spec = SyntheticSpec(n=overrides.get("n", spec.n),
                                 attachment=spec.attachment,
                                 betas=spec.betas,
                                 sigma=overrides.get("sigma", spec.sigma),
                                 seed=overrides.get("seed", spec.seed))
    else:
        spec = SyntheticSpec(n=args.n if args.n is not None else 2000,
                             sigma=args.sigma if args.sigma is not None else 0.3,
                             seed=args.seed if args.seed is not None else DEFAULT_SEED)

    g, attrs = generate_synthetic(spec)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    edges_path = out_dir / "edges.csv"
    attrs_path = out_dir / "attrs.csv"
    write_edge_csv(edges_path, g)
    write_attrs_csv(attrs_path, attrs)

    payload = {"nodes": g.n, "edges": g.m, "sigma": spec.sigma, "seed": spec.seed,
               "attachment": spec.attachment, "planted_betas": spec.betas,
               "outputs": {"edges": str(edges_path), "attributes": str(attrs_path)}}
    _emit(args, payload, [
        f"community: {g.n} member(s), {g.m} edge(s) "
        f"(attachment {spec.attachment}, seed {spec.seed})",
        f"planted: {spec.betas} with sigma={spec.sigma}",
        f"wrote {edges_path} and {attrs_path}",
    ])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netposition",
        description="Network-position measures and the contribution regression pipeline.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="posts CSV -> edge list + member attributes")
    p.add_argument("--posts", required=True, help="posts CSV (thread_id,author,timestamp[,body][,has_code])")
    p.add_argument("--policy", choices=POLICY_MODES, default="reply-chain")
    p.add_argument("--window", type=_positive_int, default=None,
                   help="co-thread mode: only link posts at most this many positions apart")
    p.add_argument("--member-attrs", default=None,
                   help="side CSV member,profession[,tenure_days]")
    p.add_argument("--min-code-lines", type=_positive_int, default=3,
                   help="consecutive code-shaped lines that count as code (default 3)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("features", help="edge list -> per-member position features")
    p.add_argument("--edges", required=True, help="edge CSV (source,target[,weight])")
    p.add_argument("--attrs", default=None, help="attributes CSV from ingest")
    p.add_argument("--pivots", type=_positive_int, default=None,
                   help="estimate closeness from this many sampled pivots (default: exact)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--harmonic", action="store_true",
                   help="harmonic closeness instead of the standard form (exact only)")
    p.add_argument("--include-cut-orbits", action="store_true",
                   help="give orbits 2 and 5 weight 2 in local centrality")
    p.add_argument("--out", required=True, help="feature CSV to write")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("regress", help="feature CSV -> three-regression report")
    p.add_argument("--features", required=True)
    p.add_argument("--log-offset", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", required=True, help="report JSON to write")
    p.add_argument("--coefficients", default=None, help="optional flat coefficient CSV")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("verify", help="run the brute-force oracles against the fast paths")
    p.add_argument("--edges", required=True)
    p.add_argument("--features", default=None,
                   help="also check a feature CSV against recomputation")
    p.add_argument("--max-nodes", type=_positive_int, default=VERIFY_MAX_NODES,
                   help=f"size guard for the oracles (default {VERIFY_MAX_NODES})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("taxonomy", help="print the orbit classification table")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_taxonomy)

    p = sub.add_parser("synth", help="generate a synthetic community with a planted signal")
    p.add_argument("--config", default=None, help="synthetic spec JSON")
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RankDeficiencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: cannot open {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
