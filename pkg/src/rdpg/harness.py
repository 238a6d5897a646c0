"""Monte Carlo experiment drivers and CSV output.

Every replicate draws its randomness from a seed derived by hashing
``(master seed, experiment name, n, replicate)``, so adding or removing grid
points never perturbs the rows that remain.
"""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Iterable, Iterator, Sequence

import numpy as np

from .align import mse_per_vertex, orthogonal_procrustes
from .embed import ase, lse
from .errors import NumericalError, ParameterError
from .graph_io import LabeledCorpus
from .knn import loo_cv_error, paper_k
from .model import (
    assign_threshold_labels,
    compute_probability_matrix,
    make_rng,
    sample_adjacency,
    sample_blockmodel,
    sample_dirichlet_latents,
)

log = logging.getLogger(__name__)


def derive_seed(master: int, *parts) -> int:
    """64-bit seed from BLAKE2b over the master seed and the given parts."""
    key = "\x1f".join(str(p) for p in (int(master), *parts)).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


@dataclass
class SimulationConfig:
    n_values: list[int] = field(default_factory=lambda: list(range(100, 1001, 100)))
    replicates: int = 50
    alpha: tuple[float, ...] = (2.0, 2.0, 2.0)
    keep_dims: int = 2
    k_rule: int | str = "paper"
    seed: int = 0
    output_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        self.n_values = [int(n) for n in self.n_values]
        self.alpha = tuple(float(a) for a in self.alpha)
        if not self.n_values or min(self.n_values) < 10:
            raise ParameterError("n_values must be non-empty with every n >= 10")
        if self.replicates < 1:
            raise ParameterError("replicates must be >= 1")
        if self.k_rule != "paper":
            self.k_rule = int(self.k_rule)
            if self.k_rule < 1:
                raise ParameterError("fixed k must be >= 1")

    def k_for(self, n: int) -> int:
        return paper_k(n) if self.k_rule == "paper" else int(self.k_rule)

    @classmethod
    def from_mapping(cls, mapping: dict) -> "SimulationConfig":
        """Build from string values such as those in a ``key=value`` config file."""
        known = {f.name for f in fields(cls)}
        unknown = set(mapping) - known
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        kw = {}
        for key, value in mapping.items():
            if value is None:
                continue
            if key in ("n_values", "alpha") and isinstance(value, str):
                value = [float(v) if key == "alpha" else int(v) for v in value.replace(",", " ").split()]
            elif key in ("replicates", "keep_dims", "seed", "workers"):
                value = int(value)
            elif key == "k_rule" and str(value) != "paper":
                value = int(value)
            kw[key] = value
        return cls(**kw)


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    n: int
    replicate: int
    seed: int | None
    mse_per_vertex: float | None
    loo_error_estimated: float
    loo_error_true: float | None
    k: int
    d: int


ROW_FIELDS = tuple(f.name for f in fields(ExperimentRow))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(records: Iterable, out, field_names: Sequence[str]) -> None:
    """Write dataclass records (or dicts) as RFC-4180 CSV with LF line endings.

    ``out`` is a path or a text stream.
    """
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", newline="") as fh:
            write_csv(records, fh, field_names)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(field_names)
    for rec in records:
        get = rec.get if isinstance(rec, dict) else lambda k, r=rec: getattr(r, k)
        w.writerow([_fmt(get(name)) for name in field_names])


def rows_to_csv(rows: Iterable[ExperimentRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, ROW_FIELDS)
    return buf.getvalue()


def simulate_replicate(n: int, replicate: int, config: SimulationConfig) -> ExperimentRow:
    seed = derive_seed(config.seed, "simulation", n, replicate)
    d = config.keep_dims
    X = sample_dirichlet_latents(n, config.alpha, d, derive_seed(seed, "latents"))
    y = assign_threshold_labels(X)
    A = sample_adjacency(compute_probability_matrix(X), derive_seed(seed, "graph"))
    Xhat = orthogonal_procrustes(ase(A, d).coords, X).aligned
    k = config.k_for(n)
    return ExperimentRow(
        experiment="simulation",
        n=n,
        replicate=replicate,
        seed=seed,
        mse_per_vertex=mse_per_vertex(Xhat, X),
        loo_error_estimated=loo_cv_error(Xhat, y, k),
        loo_error_true=loo_cv_error(X, y, k),
        k=k,
        d=d,
    )


def _safe_replicate(args):
    n, r, config = args
    try:
        return simulate_replicate(n, r, config)
    except (NumericalError, np.linalg.LinAlgError) as exc:
        log.warning("simulation n=%d replicate=%d skipped: %s", n, r, exc)
        return None


def run_simulation(config: SimulationConfig) -> Iterator[ExperimentRow]:
    """Yield one row per ``(n, replicate)`` in sorted order.

    Replicates that hit a numerical failure are logged and skipped.
    """
    tasks = [(n, r, config) for n in sorted(config.n_values) for r in range(config.replicates)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            results = pool.map(_safe_replicate, tasks, chunksize=max(1, len(tasks) // (4 * config.workers)))
            for row in results:
                if row is not None:
                    yield row
    else:
        for task in tasks:
            row = _safe_replicate(task)
            if row is not None:
                yield row


def _embed(A, d, kind, laplacian_scaling="linear"):
    if kind == "adjacency":
        return ase(A, d)
    if kind == "laplacian":
        return lse(A, d, scaling=laplacian_scaling)
    raise ParameterError(f"kind must be 'adjacency' or 'laplacian', got {kind!r}")


def run_subgraph_experiment(corpus: LabeledCorpus, sizes, replicates: int, k: int, d: int, seed: int,
                            kind: str = "adjacency", laplacian_scaling: str = "linear") -> Iterator[ExperimentRow]:
    """LOO k-NN error on uniformly random induced subgraphs.

    Subsets are drawn without any connectivity filtering. A full-size subset
    is the whole graph in its original vertex order.
    """
    C = len(corpus.class_names)
    for size in sorted(int(s) for s in sizes):
        if not 2 <= size <= corpus.n:
            raise ParameterError(f"subgraph size {size} outside [2, {corpus.n}]")
        if k > size - 1 or d > size:
            raise ParameterError(f"k={k}, d={d} too large for subgraph size {size}")
        for r in range(replicates):
            rseed = derive_seed(seed, "subgraph", size, r)
            idx = np.sort(make_rng(rseed).choice(corpus.n, size=size, replace=False))
            sub = corpus.induced(idx)
            try:
                emb = _embed(sub.adjacency, d, kind, laplacian_scaling)
            except NumericalError as exc:
                log.warning("subgraph size=%d replicate=%d skipped: %s", size, r, exc)
                continue
            yield ExperimentRow("subgraph", size, r, rseed, None,
                                loo_cv_error(emb.coords, sub.labels, k, class_count=max(C, 2)), None, k, d)


def run_kd_grid(corpus: LabeledCorpus, d_values, k_values, kind: str = "adjacency",
                laplacian_scaling: str = "linear") -> Iterator[ExperimentRow]:
    """LOO error for every ``(d, k)`` on the full corpus.

    The embedding is computed once at ``max(d_values)`` and truncated, which
    is exact because eigenpairs are ordered.
    """
    d_values = sorted(int(d) for d in d_values)
    k_values = sorted(int(k) for k in k_values)
    if d_values[-1] > corpus.n:
        raise ParameterError(f"max d={d_values[-1]} exceeds n={corpus.n}")
    full = _embed(corpus.adjacency, d_values[-1], kind, laplacian_scaling)
    C = max(len(corpus.class_names), 2)
    for d in d_values:
        coords = full.coords[:, :d]
        for k in k_values:
            yield ExperimentRow("grid", corpus.n, 0, None, None,
                                loo_cv_error(coords, corpus.labels, k, class_count=C), None, k, d)


def blockmodel_corpus(block_sizes, B, seed: int) -> LabeledCorpus:
    """Synthetic labeled corpus from a stochastic blockmodel; labels are the blocks."""
    _, labels, A = sample_blockmodel(block_sizes, B, seed)
    counts = tuple(int(s) for s in block_sizes)
    return LabeledCorpus(A, labels, tuple(f"block{i}" for i in range(len(counts))), counts)


def surrogate_corpus(seed: int = 0, n: int = 1000) -> LabeledCorpus:
    """Five-class blockmodel standing in for a labeled hyperlink graph.

    Block fractions are 0.31, 0.27, 0.19, 0.14, 0.09; within-block edge
    probability 0.25, between-block 0.08 (a rank-5 positive definite ``B``).
    """
    fractions = np.array([0.31, 0.27, 0.19, 0.14, 0.09])
    sizes = np.floor(fractions * n).astype(int)
    sizes[-1] += n - sizes.sum()
    B = np.full((5, 5), 0.08) + np.eye(5) * (0.25 - 0.08)
    return blockmodel_corpus(sizes, B, seed)


def summarize(rows: Iterable[ExperimentRow]) -> dict[int, dict[str, float]]:
    """Per-``n`` means of the numeric row fields."""
    by_n: dict[int, list[ExperimentRow]] = {}
    for row in rows:
        by_n.setdefault(row.n, []).append(row)
    out = {}
    for n, group in sorted(by_n.items()):
        stats = {"count": len(group)}
        for name in ("mse_per_vertex", "loo_error_estimated", "loo_error_true"):
            vals = [getattr(r, name) for r in group if getattr(r, name) is not None]
            stats[name] = float(np.mean(vals)) if vals else math.nan
        out[n] = stats
    return out

