"""Edge-list and label-file ingestion.

Edge lists are whitespace-separated ``u v`` pairs of 0-indexed vertex ids;
label files are ``vertex_id class_name`` lines. Blank lines and lines
starting with ``#`` are skipped in both.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParameterError
from .model import check_adjacency


class GraphFormatError(ParameterError):
    pass


@dataclass(frozen=True)
class LabeledCorpus:
    adjacency: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]
    class_counts: tuple[int, ...]

    def __post_init__(self):
        check_adjacency(self.adjacency)
        if self.labels.shape != (self.adjacency.shape[0],):
            raise ParameterError("labels length must match vertex count")
        if sum(self.class_counts) != self.n:
            raise ParameterError("class counts do not sum to n")

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def chance_error(self) -> float:
        return 1.0 - max(self.class_counts) / self.n

    def induced(self, vertices) -> "LabeledCorpus":
        idx = np.asarray(vertices, dtype=np.int64)
        labels = self.labels[idx]
        counts = tuple(int(c) for c in np.bincount(labels, minlength=len(self.class_names)))
        return LabeledCorpus(self.adjacency[np.ix_(idx, idx)], labels, self.class_names, counts)


def _content_lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield lineno, line.split()


def load_edge_list(path, n_declared: int | None = None) -> np.ndarray:
    edges = []
    for lineno, tok in _content_lines(path):
        if len(tok) != 2:
            raise GraphFormatError(f"{path}:{lineno}: expected 'u v', got {' '.join(tok)!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id in {' '.join(tok)!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"{path}:{lineno}: negative vertex id")
        if u == v:
            raise GraphFormatError(f"{path}:{lineno}: self-loop on vertex {u}")
        if n_declared is not None and max(u, v) >= n_declared:
            raise GraphFormatError(f"{path}:{lineno}: vertex id {max(u, v)} >= declared n={n_declared}")
        edges.append((u, v))
    if n_declared is not None:
        n = n_declared
    else:
        n = 1 + max((max(e) for e in edges), default=-1)
    A = np.zeros((n, n), dtype=np.uint8)
    if edges:
        e = np.asarray(edges, dtype=np.int64)
        A[e[:, 0], e[:, 1]] = 1
        A[e[:, 1], e[:, 0]] = 1
    return A


def load_labels(path, n: int):
    """Return ``(labels, class_names, class_counts)``; class indices follow first appearance."""
    names: dict[str, int] = {}
    seen: dict[int, int] = {}
    duplicates, out_of_range = [], []
    for lineno, tok in _content_lines(path):
        if len(tok) != 2:
            raise GraphFormatError(f"{path}:{lineno}: expected 'vertex_id class_name'")
        try:
            v = int(tok[0])
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id {tok[0]!r}") from None
        if not 0 <= v < n:
            out_of_range.append(v)
            continue
        if v in seen:
            duplicates.append(v)
            continue
        seen[v] = names.setdefault(tok[1], len(names))
    if out_of_range:
        raise GraphFormatError(f"vertex ids outside [0, {n}): {sorted(set(out_of_range))}")
    if duplicates:
        raise GraphFormatError(f"vertices labeled more than once: {sorted(set(duplicates))}")
    missing = sorted(set(range(n)) - set(seen))
    if missing:
        raise GraphFormatError(f"{len(missing)} unlabeled vertices, e.g. {missing[:10]}")
    labels = np.array([seen[v] for v in range(n)], dtype=np.int64)
    counts = tuple(int(c) for c in np.bincount(labels, minlength=len(names)))
    return labels, tuple(names), counts


def load_corpus(edges_path, labels_path, n: int | None = None) -> LabeledCorpus:
    A = load_edge_list(edges_path, n)
    if n is None:
        # a label file can reference trailing isolated vertices the edge list never mentions
        n_labels = sum(1 for _ in _content_lines(labels_path))
        if n_labels > A.shape[0]:
            A = load_edge_list(edges_path, n_labels)
    labels, names, counts = load_labels(labels_path, A.shape[0])
    return LabeledCorpus(A, labels, names, counts)


def write_corpus(corpus: LabeledCorpus, edges_path, labels_path) -> None:
    iu, ju = np.nonzero(np.triu(corpus.adjacency, k=1))
    with open(edges_path, "w") as fh:
        fh.write(f"# n={corpus.n}\n")
        fh.writelines(f"{u} {v}\n" for u, v in zip(iu, ju))
    # lead with each class's first vertex so reloading reproduces the class indices
    heads = [int(np.flatnonzero(corpus.labels == c)[0]) for c in range(len(corpus.class_names))
             if corpus.class_counts[c] > 0]
    rest = [v for v in range(corpus.n) if v not in set(heads)]
    with open(labels_path, "w") as fh:
        fh.writelines(f"{v} {corpus.class_names[corpus.labels[v]]}\n" for v in heads + rest)


def write_edge_list(A, path) -> None:
    iu, ju = np.nonzero(np.triu(np.asarray(A), k=1))
    Path(path).write_text("".join(f"{u} {v}\n" for u, v in zip(iu, ju)))
