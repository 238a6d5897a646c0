"""Command-line interface.

Subcommands: simulate, embed, classify, diagnose, subgraph, grid. Every
subcommand accepts ``--config FILE``, a flat ``key = value`` file whose keys
match the long option names (dashes or underscores); flags given on the
command line override the file.
"""
from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager

from . import diagnostics as diag
from .embed import ase, lse
from .errors import InvariantError, NumericalError, ParameterError
from .graph_io import load_corpus, load_edge_list
from .harness import (
    ROW_FIELDS,
    ExperimentRow,
    SimulationConfig,
    derive_seed,
    run_kd_grid,
    run_simulation,
    run_subgraph_experiment,
    write_csv,
)
from .knn import loo_cv_error
from .model import (
    compute_probability_matrix,
    sample_adjacency,
    sample_dirichlet_latents,
    second_moment_summary,
)


def read_config(path) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def parse_int_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(t) for t in text]
    out = []
    for part in str(text).replace(",", " ").split():
        if ":" in part:  # inclusive range a:b or a:b:step
            bits = [int(b) for b in part.split(":")]
            step = bits[2] if len(bits) > 2 else 1
            out.extend(range(bits[0], bits[1] + 1, step))
        else:
            out.append(int(part))
    return out


def _floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(t) for t in text]
    return [float(t) for t in str(text).replace(",", " ").split()]


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value file; command-line flags take precedence")
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="output CSV path (default: stdout)")


def _corpus_args(p):
    p.add_argument("--edges", help="edge list file")
    p.add_argument("--labels", help="label file")
    p.add_argument("--n", type=int, help="declared vertex count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdpg", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Dirichlet simulation sweep (MSE and LOO error vs n)")
    _common(p)
    p.add_argument("--n-values", help="e.g. '100,200' or '100:1000:100'")
    p.add_argument("--replicates", type=int)
    p.add_argument("--alpha", help="Dirichlet parameter, e.g. '2,2,2'")
    p.add_argument("--d", type=int, help="latent dimension kept")
    p.add_argument("--k", help="fixed k, or 'paper' for 2*floor(sqrt(n)/4)+1")
    p.add_argument("--workers", type=int)

    p = sub.add_parser("embed", help="spectral embedding of an edge list")
    _common(p)
    p.add_argument("--edges")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--kind", choices=["adjacency", "laplacian"])
    p.add_argument("--laplacian-scaling", choices=["linear", "sqrt"])

    p = sub.add_parser("classify", help="LOO k-NN error on a labeled corpus")
    _common(p)
    _corpus_args(p)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kind", choices=["adjacency", "laplacian"])

    p = sub.add_parser("diagnose", help="concentration bound checks on simulated Dirichlet graphs")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--alpha")
    p.add_argument("--delta", type=float, help="eigengap parameter (default: just below the supremum)")
    p.add_argument("--runs", type=int, help="number of seeds")
    p.add_argument("--log-base", choices=["e", "2"])

    p = sub.add_parser("subgraph", help="LOO error on random induced subgraphs")
    _common(p)
    _corpus_args(p)
    p.add_argument("--sizes")
    p.add_argument("--replicates", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--kind", choices=["adjacency", "laplacian"])

    p = sub.add_parser("grid", help="LOO error over a (d, k) grid on the full corpus")
    _common(p)
    _corpus_args(p)
    p.add_argument("--d-values")
    p.add_argument("--k-values")
    p.add_argument("--kind", choices=["adjacency", "laplacian"])
    return parser


DEFAULTS = {
    "embed": {"d": 2, "kind": "adjacency", "laplacian_scaling": "linear"},
    "classify": {"d": 10, "k": 9, "kind": "adjacency"},
    "diagnose": {"n": 500, "d": 2, "alpha": "2,2,2", "runs": 1, "seed": 0, "log_base": "e"},
    "subgraph": {"sizes": "100", "replicates": 100, "d": 10, "k": 9, "seed": 0, "kind": "adjacency"},
    "grid": {"d_values": "1:50", "k_values": "1,5,9,13,17", "kind": "adjacency"},
}


def _merge(args) -> dict:
    opts = dict(DEFAULTS.get(args.command, {}))
    if args.config:
        opts.update(read_config(args.config))
    opts.update({k: v for k, v in vars(args).items() if v is not None and k not in ("config", "command")})
    return opts


def _require(opts, *keys):
    missing = [k for k in keys if opts.get(k) in (None, "")]
    if missing:
        raise ParameterError(f"missing required option(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")


def cmd_simulate(opts):
    mapping = {
        "n_values": opts.get("n_values"),
        "replicates": opts.get("replicates"),
        "alpha": opts.get("alpha"),
        "keep_dims": opts.get("d", opts.get("keep_dims")),
        "k_rule": opts.get("k", opts.get("k_rule")),
        "seed": opts.get("seed"),
        "output_path": opts.get("output", opts.get("output_path")),
        "workers": opts.get("workers"),
    }
    if isinstance(mapping["n_values"], str):
        mapping["n_values"] = parse_int_list(mapping["n_values"])
    cfg = SimulationConfig.from_mapping({k: v for k, v in mapping.items() if v is not None})
    with _output(cfg.output_path) as fh:
        write_csv(run_simulation(cfg), fh, ROW_FIELDS)


def _embed(A, opts):
    d = int(opts["d"])
    if opts["kind"] == "laplacian":
        return lse(A, d, scaling=opts.get("laplacian_scaling", "linear"))
    return ase(A, d)


def cmd_embed(opts):
    _require(opts, "edges")
    A = load_edge_list(opts["edges"], int(opts["n"]) if opts.get("n") else None)
    emb = _embed(A, opts)
    names = ["vertex"] + [f"x{j + 1}" for j in range(emb.d)]
    records = [dict(zip(names, [i, *row])) for i, row in enumerate(emb.coords.tolist())]
    with _output(opts.get("output")) as fh:
        write_csv(records, fh, names)


def cmd_classify(opts):
    _require(opts, "edges", "labels")
    corpus = load_corpus(opts["edges"], opts["labels"], int(opts["n"]) if opts.get("n") else None)
    emb = _embed(corpus.adjacency, opts)
    k = int(opts["k"])
    err = loo_cv_error(emb.coords, corpus.labels, k, class_count=max(2, len(corpus.class_names)))
    row = ExperimentRow("classify", corpus.n, 0, None, None, err, None, k, emb.d)
    with _output(opts.get("output")) as fh:
        write_csv([row], fh, ROW_FIELDS)


def diagnose_reports(n, d, alpha, runs, seed, delta=None, log_base="e"):
    """Bound reports for ``runs`` independent simulated graphs."""
    summary = second_moment_summary(alpha, d)
    delta = summary.delta * (1 - 1e-9) if delta is None else float(delta)
    for r in range(runs):
        rseed = derive_seed(seed, "diagnose", n, r)
        X = sample_dirichlet_latents(n, alpha, d, derive_seed(rseed, "latents"))
        P = compute_probability_matrix(X)
        A = sample_adjacency(P, derive_seed(rseed, "graph"))
        reports = [diag.check_frobenius_a2_p2(A, P, log_base)]
        reports += diag.check_eigenvalue_concentration(P, summary, d, log_base)
        reports.append(diag.check_theorem1(A, X, summary, d, delta, log_base))
        reports += diag.check_eigenvector_bound(A, P, summary, d, delta, log_base)
        for rep in reports:
            yield rep.with_seed(rseed)


def cmd_diagnose(opts):
    reports = diagnose_reports(
        int(opts["n"]), int(opts["d"]), _floats(opts["alpha"]), int(opts["runs"]), int(opts["seed"]),
        opts.get("delta"), opts["log_base"],
    )
    with _output(opts.get("output")) as fh:
        write_csv(reports, fh, diag.CSV_FIELDS)


def cmd_subgraph(opts):
    _require(opts, "edges", "labels")
    corpus = load_corpus(opts["edges"], opts["labels"], int(opts["n"]) if opts.get("n") else None)
    rows = run_subgraph_experiment(corpus, parse_int_list(opts["sizes"]), int(opts["replicates"]), int(opts["k"]),
                                   int(opts["d"]), int(opts["seed"]), kind=opts["kind"])
    with _output(opts.get("output")) as fh:
        write_csv(rows, fh, ROW_FIELDS)


def cmd_grid(opts):
    _require(opts, "edges", "labels")
    corpus = load_corpus(opts["edges"], opts["labels"], int(opts["n"]) if opts.get("n") else None)
    rows = run_kd_grid(corpus, parse_int_list(opts["d_values"]), parse_int_list(opts["k_values"]), kind=opts["kind"])
    with _output(opts.get("output")) as fh:
        write_csv(rows, fh, ROW_FIELDS)


COMMANDS = {
    "simulate": cmd_simulate,
    "embed": cmd_embed,
    "classify": cmd_classify,
    "diagnose": cmd_diagnose,
    "subgraph": cmd_subgraph,
    "grid": cmd_grid,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    opts = _merge(args)
    opts.pop("verbose", None)
    try:
        COMMANDS[args.command](opts)
    except (ParameterError, InvariantError, NumericalError, OSError) as exc:
        print(f"rdpg {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
