"""k-nearest-neighbor vertex classification with deterministic tie rules.

Neighbors at equal distance are taken in increasing training index. Vote
ties go to the class appearing first in ``class_order``. Distances are
compared exactly, with no tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError


def _sq_dists(points: np.ndarray, queries: np.ndarray) -> np.ndarray:
    # direct differences, not the ||a||^2 - 2ab + ||b||^2 expansion, so that
    # ties are decided the same way no matter which path computes them
    return np.sum((queries[:, None, :] - points[None, :, :]) ** 2, axis=2)


def _vote(neighbor_labels: np.ndarray, rank: np.ndarray, n_classes: int) -> np.ndarray:
    """Majority label per row; ``rank[c]`` is the tie-break position of class ``c``."""
    counts = np.zeros((neighbor_labels.shape[0], n_classes), dtype=np.int64)
    rows = np.repeat(np.arange(neighbor_labels.shape[0]), neighbor_labels.shape[1])
    np.add.at(counts, (rows, neighbor_labels.ravel()), 1)
    order = np.argsort(rank)  # classes in tie-break order
    best = np.argmax(counts[:, order], axis=1)  # first maximum wins
    return order[best]


@dataclass(frozen=True)
class KnnModel:
    points: np.ndarray
    labels: np.ndarray
    k: int
    class_count: int | None = None
    class_order: tuple | None = field(default=None)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        labels = np.asarray(self.labels, dtype=np.int64)
        if pts.shape[0] == 0:
            raise ParameterError("empty training set")
        if labels.shape != (pts.shape[0],):
            raise ParameterError("one label per training point required")
        if not 1 <= self.k <= pts.shape[0]:
            raise ParameterError(f"k={self.k} must lie in [1, m={pts.shape[0]}]")
        C = self.class_count if self.class_count is not None else int(labels.max()) + 1
        C = max(C, 2)
        if labels.min() < 0 or labels.max() >= C:
            raise ParameterError(f"labels must lie in [0, {C})")
        order = tuple(range(C)) if self.class_order is None else tuple(self.class_order)
        if sorted(order) != list(range(C)):
            raise ParameterError("class_order must be a permutation of 0..C-1")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_count", C)
        object.__setattr__(self, "class_order", order)

    @property
    def _rank(self) -> np.ndarray:
        rank = np.empty(self.class_count, dtype=np.int64)
        rank[list(self.class_order)] = np.arange(self.class_count)
        return rank

    def predict(self, queries) -> np.ndarray:
        Q = np.atleast_2d(np.asarray(queries, dtype=float))
        if Q.shape[1] != self.points.shape[1]:
            raise ParameterError(f"query dimension {Q.shape[1]} != training dimension {self.points.shape[1]}")
        D = _sq_dists(self.points, Q)
        nbrs = np.argsort(D, axis=1, kind="stable")[:, : self.k]
        return _vote(self.labels[nbrs], self._rank, self.class_count)


def knn_predict(model: KnnModel, query) -> int:
    return int(model.predict(np.asarray(query, dtype=float)[None, :])[0])


def loo_cv_error(points, labels, k: int, class_count=None, class_order=None) -> float:
    """Leave-one-out error of the k-NN rule: each point predicted from all others."""
    X = np.atleast_2d(np.asarray(points, dtype=float))
    y = np.asarray(labels, dtype=np.int64)
    n = X.shape[0]
    if n < 2:
        raise ParameterError("leave-one-out needs at least two points")
    if y.shape != (n,):
        raise ParameterError("one label per point required")
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k={k} must lie in [1, n-1={n - 1}]")
    # reuse the model for validation and tie-break ranks
    model = KnnModel(X, y, k, class_count=class_count, class_order=class_order)
    rank = model._rank
    chunk = max(1, 2**22 // max(1, n * X.shape[1]))
    wrong = 0
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        D = _sq_dists(X, X[start:stop])
        D[np.arange(stop - start), np.arange(start, stop)] = np.inf
        nbrs = np.argsort(D, axis=1, kind="stable")[:, :k]
        pred = _vote(y[nbrs], rank, model.class_count)
        wrong += int(np.sum(pred != y[start:stop]))
    return wrong / n


def paper_k(n: int) -> int:
    """Neighbor count ``2 * floor(sqrt(n) / 4) + 1``."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    return 2 * (math.isqrt(n) // 4) + 1
