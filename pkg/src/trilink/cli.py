"""Command-line interface.

Subcommands: ``pairwise`` (success-probability experiments), ``linkpred``
(standard link prediction with neighborhood seeding), ``diagnose``
(convergence and rank-stability traces), ``triangles`` (count/list), and
``gen-gpa`` (synthetic graph generation). Results go to CSV files with a
JSON metadata sidecar; stdout carries progress only.

Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .diffusion import DiffusionParams, make_seed, rank_stability, trpr_iterates
from .experiments import (
    DEFAULT_LINKPRED_METHODS,
    DEFAULT_PAIRWISE_METHODS,
    run_pairwise_experiment,
    run_standard_linkpred,
    write_linkpred_reports,
    write_pairwise_reports,
)
from .generators import GpaParams, generate_gpa
from .graph import (
    DataError,
    _token,
    build_graph,
    largest_connected_component,
    load_edge_list,
    write_edge_list,
)
from .triangles import enumerate_triangles


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; we reserve 2 for data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _csv_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _csv_strs(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _build_parser() -> _Parser:
    p = _Parser(prog="trilink", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.subcommands = {}
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        sp = sub.add_parser(name, **kw)
        p.subcommands[name] = sp
        return sp

    def common(sp):
        sp.add_argument("--config", help="JSON file supplying defaults for any flag")
        sp.add_argument("--seed", type=int, default=0, help="master RNG seed")
        sp.add_argument("--alpha", type=float, default=0.85)
        sp.add_argument("--iterations", type=int, default=10, help="reinforced-iteration step count")
        sp.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
        sp.add_argument("--out-dir", default=".", help="directory for result files")

    sp = add_parser("pairwise", help="success-probability experiments on seed edges")
    common(sp)
    sp.add_argument("--input", required=True, help="edge-list file")
    sp.add_argument("--protocol", choices=["holdout", "loeto", "temporal"], default="holdout")
    sp.add_argument(
        "--fraction",
        type=float,
        default=None,
        help="held-out fraction for holdout (default 0.3) / training fraction for temporal (default 0.7)",
    )
    sp.add_argument("--methods", default=",".join(DEFAULT_PAIRWISE_METHODS))
    sp.add_argument("--k", default="5,25", help="comma-separated top-k cutoffs")
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--truth-mode", choices=["and", "or"], default="and")
    sp.add_argument("--candidate-rule", choices=["either", "both"], default=None)
    sp.add_argument("--allow-empty-truth", action="store_true")
    sp.add_argument("--timestamps", action="store_true", help="input lines are 'u v t'")
    sp.set_defaults(fn=cmd_pairwise)

    sp = add_parser("linkpred", help="standard link prediction, neighborhood seeding vs single seed")
    common(sp)
    sp.add_argument("--input", required=True)
    sp.add_argument("--fraction", type=float, default=0.2, help="held-out test fraction")
    sp.add_argument("--num-nodes", type=int, default=100, help="top-degree cohort size")
    sp.add_argument("--methods", default=",".join(DEFAULT_LINKPRED_METHODS))
    sp.add_argument("--timestamps", action="store_true")
    sp.set_defaults(fn=cmd_linkpred)

    sp = add_parser("diagnose", help="convergence and rank-stability trace of the reinforced iteration")
    common(sp)
    sp.add_argument("--input", required=True)
    sp.add_argument("--edge", default=None, help="seed edge as 'u,v' (default: edge in the most triangles)")
    sp.add_argument("--max-iters", type=int, default=200)
    sp.add_argument("--top-k", type=int, default=100)
    sp.add_argument("--weighted", action="store_true")
    sp.add_argument("--timestamps", action="store_true")
    sp.set_defaults(fn=cmd_diagnose)

    sp = add_parser("triangles", help="count (and optionally list) triangles of an edge list")
    sp.add_argument("input")
    sp.add_argument("--list", action="store_true", help="print the triples as TSV")
    sp.add_argument("--timestamps", action="store_true")
    sp.add_argument("--config", help=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_triangles)

    sp = add_parser("gen-gpa", help="generate a preferential-attachment graph")
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--p-edge", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--clique", type=int, default=5, help="starting clique size")
    sp.add_argument("--out", required=True, help="output edge-list path")
    sp.add_argument("--config", help=argparse.SUPPRESS)
    sp.set_defaults(fn=cmd_gen_gpa)

    return p


def _load_graph(args, lcc: bool = True):
    edges = load_edge_list(args.input, has_timestamps=getattr(args, "timestamps", False))
    g = build_graph(edges)
    return largest_connected_component(g) if lcc else g


def cmd_pairwise(args) -> int:
    params = DiffusionParams(alpha=args.alpha, iterations=args.iterations)
    if args.protocol == "temporal":
        data = load_edge_list(args.input, has_timestamps=True)
    else:
        data = _load_graph(args)
    result = run_pairwise_experiment(
        data,
        args.protocol,
        _csv_strs(args.methods),
        k_values=_csv_ints(args.k),
        trials=args.trials,
        fraction=args.fraction,
        truth_mode=args.truth_mode,
        candidate_rule=args.candidate_rule,
        params=params,
        rng_seed=args.seed,
        threads=args.threads,
        allow_empty_truth=args.allow_empty_truth,
    )
    paths = write_pairwise_reports(result, args.out_dir)
    for row in result.summary:
        print(f"{row.method:>10s}  k={row.k:<3d} mean_sp={row.mean_sp:.4f}")
    for path in paths.values():
        print(f"wrote {path}")
    return 0


def cmd_linkpred(args) -> int:
    params = DiffusionParams(alpha=args.alpha, iterations=args.iterations)
    g = _load_graph(args)
    result = run_standard_linkpred(
        g,
        test_fraction=args.fraction,
        num_nodes=args.num_nodes,
        methods=_csv_strs(args.methods),
        params=params,
        rng_seed=args.seed,
        threads=args.threads,
    )
    paths = write_linkpred_reports(result, args.out_dir)
    for row in result.summary:
        print(
            f"{row.method:>12s}  mean_auc={row.mean_auc:.4f} "
            f"delta={row.mean_delta_vs_baseline:+.4f} dist={row.mean_dist_to_diag:+.4f}"
        )
    for path in paths.values():
        print(f"wrote {path}")
    return 0


def _default_diagnose_edge(g, ts) -> tuple[int, int]:
    if ts.count == 0:
        e = g.edge_array()[0]
        return int(e[0]), int(e[1])
    counts: dict[tuple[int, int], int] = {}
    for a, b, c in ts.triples:
        for e in ((int(a), int(b)), (int(a), int(c)), (int(b), int(c))):
            counts[e] = counts.get(e, 0) + 1
    return min(counts, key=lambda e: (-counts[e], e))


def cmd_diagnose(args) -> int:
    params = DiffusionParams(alpha=args.alpha, iterations=args.iterations)
    g = _load_graph(args)
    ts = enumerate_triangles(g)
    if args.edge:
        toks = [_token(t) for t in args.edge.split(",")]
        if len(toks) != 2:
            raise DataError(f"--edge expects 'u,v', got {args.edge!r}")
        try:
            u, v = g.label_index[toks[0]], g.label_index[toks[1]]
        except KeyError as missing:
            raise DataError(f"node {missing} not in the graph's largest component")
    else:
        u, v = _default_diagnose_edge(g, ts)
    seed = make_seed(g, "pair", u, v)
    iterates = [seed.dense(g.n)]
    deltas = []
    for _, x, _, delta in trpr_iterates(g, ts, seed, params, args.weighted, iterations=args.max_iters):
        iterates.append(x)
        deltas.append(delta)

    os.makedirs(args.out_dir, exist_ok=True)
    path = os.path.join(args.out_dir, "diagnose.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("iter,l1_delta,spearman_full,kendall_full,spearman_top100,kendall_top100\n")
        for i in range(1, len(iterates)):
            rho_f, tau_f = rank_stability(iterates[i - 1], iterates[i])
            rho_t, tau_t = rank_stability(iterates[i - 1], iterates[i], top_k=args.top_k)
            fh.write(f"{i},{deltas[i - 1]!r},{rho_f!r},{tau_f!r},{rho_t!r},{tau_t!r}\n")
        ref = min(params.iterations, args.max_iters)
        rho_f, tau_f = rank_stability(iterates[ref], iterates[-1])
        rho_t, tau_t = rank_stability(iterates[ref], iterates[-1], top_k=args.top_k)
        gap = float(np.abs(iterates[-1] - iterates[ref]).sum())
        fh.write(f"{ref}v{args.max_iters},{gap!r},{rho_f!r},{tau_f!r},{rho_t!r},{tau_t!r}\n")
    meta = {
        "command": "diagnose",
        "input": str(args.input),
        "seed_edge": [g.labels[u], g.labels[v]],
        "alpha": args.alpha,
        "iterations": args.iterations,
        "max_iters": args.max_iters,
        "top_k": args.top_k,
        "weighted": args.weighted,
    }
    meta_path = os.path.join(args.out_dir, "diagnose_metadata.json")
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"seed edge: ({g.labels[u]}, {g.labels[v]})")
    print(f"wrote {path}")
    print(f"wrote {meta_path}")
    return 0


def cmd_triangles(args) -> int:
    edges = load_edge_list(args.input, has_timestamps=args.timestamps)
    g = build_graph(edges)
    ts = enumerate_triangles(g)
    print(ts.count)
    if args.list:
        for a, b, c in ts.triples:
            print(f"{g.labels[a]}\t{g.labels[b]}\t{g.labels[c]}")
    return 0


def cmd_gen_gpa(args) -> int:
    g = generate_gpa(
        GpaParams(p_edge=args.p_edge, steps=args.steps, seed_clique=args.clique, rng_seed=args.seed)
    )
    write_edge_list(args.out, g)
    meta = {
        "command": "gen-gpa",
        "steps": args.steps,
        "p_edge": args.p_edge,
        "seed_clique": args.clique,
        "rng_seed": args.seed,
        "rng": "numpy.random.default_rng (PCG64)",
        "nodes": g.n,
        "edges": g.m,
    }
    meta_path = f"{args.out}.meta.json"
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {args.out} (n={g.n}, m={g.m})")
    print(f"wrote {meta_path}")
    return 0


def _apply_config(parser: _Parser, argv: list[str]) -> None:
    if "--config" not in argv:
        return
    path = argv[argv.index("--config") + 1] if argv.index("--config") + 1 < len(argv) else None
    if path is None:
        return
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        raise DataError(f"config {path} must hold a JSON object")
    defaults = {key.replace("-", "_"): val for key, val in cfg.items()}
    for sp in parser.subcommands.values():
        sp.set_defaults(**defaults)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
