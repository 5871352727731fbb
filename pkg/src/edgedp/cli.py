"""Command-line front end: privatize graphs, compute spectra, run the
accuracy sweep, and run the exhaustive verification suite.

Exit codes: 0 success, 1 usage error, 2 data/validation error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiment import (
    ExperimentConfig,
    ExperimentError,
    config_from_json,
    run_experiment,
)
from .graph import PrivacyParams, edge_distance
from .graph_io import (
    MECHANISM_TAGS,
    IngestValidationError,
    LabeledGraph,
    ParseError,
    load_edge_list,
    save_graph,
    write_results,
    write_summary,
)
from .mechanisms import flip_probability, sample_private_graph
from .oracle import DEFAULT_ENUMERATION_CAP, EnumerationCapError, run_verification
from .spectra import laplacian_spectrum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _fail(message: str) -> int:
    sys.stderr.write(f"edgedp: error: {message}\n")
    return EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edgedp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_priv = sub.add_parser("privatize", help="sample one private graph")
    p_priv.add_argument("graph", help="edge-list file of the sensitive graph")
    p_priv.add_argument("--epsilon", type=float, required=True)
    p_priv.add_argument("--adjacency", type=int, default=1)
    p_priv.add_argument("--seed", type=int, default=0)
    p_priv.add_argument("--out", required=True, help="output edge-list path")

    p_spec = sub.add_parser("spectrum", help="Laplacian spectrum of a graph")
    p_spec.add_argument("graph", help="edge-list file")
    p_spec.add_argument("--out", required=True, help="output CSV path")

    p_exp = sub.add_parser("experiment", help="spectral accuracy sweep")
    p_exp.add_argument("--config", help="flat JSON config; flags override")
    p_exp.add_argument("--dataset", help="edge-list file of the sensitive graph")
    p_exp.add_argument(
        "--epsilon", type=float, action="append", dest="epsilons",
        help="grid point, repeatable (default: 0.835*l for l=1..8)",
    )
    p_exp.add_argument("--adjacency", type=int, dest="adjacency_a")
    p_exp.add_argument("--trials", type=int)
    p_exp.add_argument("--seed", type=int)
    p_exp.add_argument(
        "--mechanisms",
        help=f"comma-separated subset of {','.join(MECHANISM_TAGS)}",
    )
    p_exp.add_argument("--expect-nodes", type=int, dest="expect_nodes")
    p_exp.add_argument("--expect-edges", type=int, dest="expect_edges")
    p_exp.add_argument("--baseline-sensitivity", type=float, dest="baseline_sensitivity")
    p_exp.add_argument("--baseline-lower", type=float, dest="baseline_lower")
    p_exp.add_argument("--baseline-upper", type=float, dest="baseline_upper")
    p_exp.add_argument(
        "--error-metric", choices=("relative", "absolute"), dest="error_metric"
    )
    p_exp.add_argument("--out", required=True, help="detail CSV path")
    p_exp.add_argument(
        "--summary-out", help="summary CSV path (default: <out>.summary.csv)"
    )

    p_ver = sub.add_parser("verify", help="exhaustive small-n verification")
    p_ver.add_argument("-n", "--nodes", type=int, default=3)
    p_ver.add_argument(
        "--epsilon", type=float, action="append", dest="epsilons",
        help="grid point, repeatable (default: 0 0.5 1 2.5)",
    )
    p_ver.add_argument(
        "--adjacency", type=int, action="append", dest="adjacencies",
        help="grid point, repeatable (default: 1 2)",
    )
    p_ver.add_argument("--samples", type=int, default=1_000_000)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument(
        "--perturb-p", type=float, default=0.0,
        help="self-test hook: shift the sampler's edge-keep probability",
    )
    p_ver.add_argument(
        "--max-nodes", type=int, default=DEFAULT_ENUMERATION_CAP,
        help="enumeration cap override",
    )
    p_ver.add_argument("--out", help="JSON report path (default: stdout)")
    return parser


def cmd_privatize(args) -> int:
    try:
        params = PrivacyParams(args.epsilon, args.adjacency)
    except ValueError as exc:
        sys.stderr.write(f"edgedp privatize: {exc}\n")
        return EXIT_USAGE
    try:
        labeled = load_edge_list(args.graph)
    except (ParseError, IngestValidationError, OSError) as exc:
        return _fail(str(exc))
    private = sample_private_graph(labeled.graph, params, args.seed)
    try:
        save_graph(LabeledGraph(private, labeled.labels), args.out)
    except OSError as exc:
        return _fail(str(exc))
    p = flip_probability(params).p
    realized = edge_distance(labeled.graph, private)
    sys.stderr.write(f"edge keep probability p = {p:.17g}\n")
    sys.stderr.write(f"realized edge distance = {realized}\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    try:
        labeled = load_edge_list(args.graph)
    except (ParseError, IngestValidationError, OSError) as exc:
        return _fail(str(exc))
    spec = laplacian_spectrum(labeled.graph)
    lines = ["index,eigenvalue"]
    lines.extend(
        f"{i},{format(v, '.17g')}" for i, v in enumerate(spec.values, start=1)
    )
    try:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_OK


def _experiment_config(args) -> ExperimentConfig:
    overrides = {
        "dataset": args.dataset,
        "epsilons": tuple(args.epsilons) if args.epsilons else None,
        "adjacency_a": args.adjacency_a,
        "trials": args.trials,
        "seed": args.seed,
        "mechanisms": (
            tuple(t.strip() for t in args.mechanisms.split(",") if t.strip())
            if args.mechanisms
            else None
        ),
        "expect_nodes": args.expect_nodes,
        "expect_edges": args.expect_edges,
        "baseline_sensitivity": args.baseline_sensitivity,
        "baseline_lower": args.baseline_lower,
        "baseline_upper": args.baseline_upper,
        "error_metric": args.error_metric,
    }
    if args.config:
        return config_from_json(args.config, overrides)
    present = {k: v for k, v in overrides.items() if v is not None}
    if "dataset" not in present:
        raise ExperimentError("--dataset (or a config file) is required")
    return ExperimentConfig(**present)


def cmd_experiment(args) -> int:
    try:
        config = _experiment_config(args)
    except (ExperimentError, ValueError) as exc:
        sys.stderr.write(f"edgedp experiment: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        return _fail(str(exc))
    try:
        records, summary_rows, _ = run_experiment(config)
    except (ExperimentError, ParseError, IngestValidationError, OSError) as exc:
        return _fail(str(exc))
    summary_out = args.summary_out or f"{args.out}.summary.csv"
    try:
        write_results(records, args.out)
        write_summary(summary_rows, summary_out)
    except OSError as exc:
        return _fail(str(exc))
    sys.stderr.write(
        f"wrote {len(records)} trial rows to {args.out}, "
        f"{len(summary_rows)} summary rows to {summary_out}\n"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    epsilons = tuple(args.epsilons) if args.epsilons else (0.0, 0.5, 1.0, 2.5)
    adjacencies = tuple(args.adjacencies) if args.adjacencies else (1, 2)
    try:
        report = run_verification(
            args.nodes,
            epsilons,
            adjacencies,
            samples=args.samples,
            seed=args.seed,
            perturb_p=args.perturb_p,
            max_nodes=args.max_nodes,
        )
    except (EnumerationCapError, ValueError) as exc:
        return _fail(str(exc))
    payload = json.dumps(report.to_dict(), indent=2)
    if args.out:
        try:
            Path(args.out).write_text(payload + "\n", encoding="utf-8")
        except OSError as exc:
            return _fail(str(exc))
    else:
        print(payload)
    if not report.passed:
        failing = [c["name"] for c in report.checks if not c["pass"]]
        sys.stderr.write(f"verification FAILED: {', '.join(failing)}\n")
        return EXIT_VERIFY
    sys.stderr.write(f"verification passed ({len(report.checks)} checks)\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "privatize": cmd_privatize,
        "spectrum": cmd_spectrum,
        "experiment": cmd_experiment,
        "verify": cmd_verify,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
