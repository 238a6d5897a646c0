"""Finite-sample concentration bounds evaluated on simulated instances.

Each check returns :class:`BoundReport` objects pairing an observed quantity
with its theoretical bound. Logarithms are natural unless ``log_base=2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .align import orthogonal_procrustes
from .embed import ase, symmetric_eig
from .errors import ParameterError
from .model import SecondMomentSummary

CSV_FIELDS = ("name", "n", "d", "delta", "gamma", "observed", "bound", "satisfied", "seed")


@dataclass(frozen=True)
class BoundReport:
    name: str
    observed: float
    bound: float
    n: int
    d: int
    delta: float | None = None
    gamma: float | None = None
    seed: int | None = None

    @property
    def satisfied(self) -> bool:
        return bool(self.observed <= self.bound)

    def with_seed(self, seed: int) -> "BoundReport":
        return BoundReport(self.name, self.observed, self.bound, self.n, self.d, self.delta, self.gamma, seed)


def _log(x: float, log_base) -> float:
    if log_base in ("e", None):
        return math.log(x)
    if log_base in (2, "2"):
        return math.log2(x)
    raise ParameterError(f"log_base must be 'e' or 2, got {log_base!r}")


def _square_pair(A, P):
    A = np.asarray(A, dtype=float)
    P = np.asarray(P, dtype=float)
    if A.ndim != 2 or A.shape != P.shape or A.shape[0] != A.shape[1]:
        raise ParameterError(f"size mismatch: {A.shape} vs {P.shape}")
    return A, P


def frobenius_a2_p2_bound(n: int, log_base="e") -> float:
    return math.sqrt(3 * n**3 * _log(n, log_base))


def eigenvalue_bound(n: int, d: int, log_base="e") -> float:
    return 2 * d**2 * math.sqrt(n * _log(n, log_base))


def theorem1_bound(n: int, d: int, delta: float, log_base="e") -> float:
    """``2 d sqrt(3 log(n) / delta^3)``, the Frobenius bound on the aligned embedding error."""
    if delta <= 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return 2 * d * math.sqrt(3 * _log(n, log_base) / delta**3)


def eigenvector_bound(n: int, delta: float, log_base="e") -> float:
    if delta <= 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    return math.sqrt(3 * _log(n, log_base) / (delta**2 * n))


def check_frobenius_a2_p2(A, P, log_base="e") -> BoundReport:
    A, P = _square_pair(A, P)
    n = A.shape[0]
    observed = float(np.linalg.norm(A @ A - P @ P))
    return BoundReport("frobenius_A2_P2", observed, frobenius_a2_p2_bound(n, log_base), n, 0)


def check_eigenvalue_concentration(P, summary: SecondMomentSummary, d: int, log_base="e") -> list[BoundReport]:
    """Eigenvalues of ``P`` against ``n`` times the second-moment eigenvalues.

    Besides one deviation report per ``i <= d`` this returns:

    * ``rank_residual_P``: largest ``|lambda_i(P)|`` for ``i > d`` against ``1e-8 * n``;
    * ``eigengap_P``: observed ``delta * n`` against the smallest pairwise gap among
      the first ``d + 1`` eigenvalues, so it is satisfied when the gap exceeds ``delta * n``.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ParameterError(f"P must be square, got {P.shape}")
    n = P.shape[0]
    mom = np.asarray(summary.eigenvalues, dtype=float)
    if mom.size < d:
        raise ParameterError(f"summary has {mom.size} eigenvalues, need {d}")
    lam = symmetric_eig(P).values
    bound = eigenvalue_bound(n, d, log_base)
    reports = [
        BoundReport(f"eigenvalue_{i + 1}", float(abs(lam[i] - n * mom[i])), bound, n, d, summary.delta)
        for i in range(d)
    ]
    tail = float(np.max(np.abs(lam[d:]))) if n > d else 0.0
    reports.append(BoundReport("rank_residual_P", tail, 1e-8 * n, n, d, summary.delta))
    head = np.concatenate([lam[:d], [lam[d] if n > d else 0.0]])
    gaps = np.abs(head[:, None] - head[None, :])[~np.eye(d + 1, dtype=bool)]
    reports.append(BoundReport("eigengap_P", summary.delta * n, float(gaps.min()), n, d, summary.delta))
    return reports


def check_theorem1(A, X, summary: SecondMomentSummary, d: int, delta: float | None = None, log_base="e") -> BoundReport:
    """Procrustes-aligned Frobenius error of the adjacency embedding vs. the bound.

    The minimum over orthogonal matrices is no larger than the error at any
    particular orthogonal matrix, so this check is at least as strict as the
    bound requires.
    """
    X = np.asarray(X, dtype=float)
    delta = summary.delta if delta is None else delta
    emb = ase(A, d)
    res = orthogonal_procrustes(emb.coords, X)
    n = X.shape[0]
    return BoundReport("theorem1", res.frobenius_error, theorem1_bound(n, d, delta, log_base), n, d, delta)


def vertex_exceedance_fraction(aligned, X, gamma: float) -> float:
    """Fraction of vertices whose squared estimation error exceeds ``n^-gamma``."""
    aligned = np.asarray(aligned, dtype=float)
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    err = np.sum((aligned - X) ** 2, axis=1)
    return float(np.mean(err > n ** (-gamma)))


def check_eigenvector_bound(A, P, summary: SecondMomentSummary, d: int, delta: float | None = None, log_base="e") -> list[BoundReport]:
    """Sign-minimized distance between the top ``d`` eigenvectors of ``A`` and ``P``."""
    A, P = _square_pair(A, P)
    n = A.shape[0]
    delta = summary.delta if delta is None else delta
    UA = symmetric_eig(A).vectors[:, :d]
    UP = symmetric_eig(P).vectors[:, :d]
    bound = eigenvector_bound(n, delta, log_base)
    out = []
    for i in range(d):
        obs = min(np.linalg.norm(UA[:, i] - UP[:, i]), np.linalg.norm(UA[:, i] + UP[:, i]))
        out.append(BoundReport(f"eigenvector_{i + 1}", float(obs), bound, n, d, delta))
    return out
