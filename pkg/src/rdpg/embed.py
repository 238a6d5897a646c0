"""Adjacency and Laplacian spectral embeddings."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError

_SIGN_TIE_RTOL = 1e-9


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues sorted by decreasing magnitude with matching unit eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class Embedding:
    coords: np.ndarray
    retained_eigenvalues: np.ndarray
    kind: str
    # signed eigenvalues of the embedded matrix, same order as retained_eigenvalues
    signed_eigenvalues: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    def truncate(self, d: int) -> "Embedding":
        if not 1 <= d <= self.d:
            raise ParameterError(f"cannot truncate a {self.d}-dimensional embedding to d={d}")
        signed = None if self.signed_eigenvalues is None else self.signed_eigenvalues[:d]
        return Embedding(self.coords[:, :d].copy(), self.retained_eigenvalues[:d].copy(), self.kind, signed)


def _fix_signs(V: np.ndarray) -> np.ndarray:
    # largest-magnitude entry of each column made positive; near-equal magnitudes
    # resolve to the lowest index
    mags = np.abs(V)
    top = mags.max(axis=0)
    first = np.argmax(mags >= top * (1 - _SIGN_TIE_RTOL), axis=0)
    signs = np.where(V[first, np.arange(V.shape[1])] < 0, -1.0, 1.0)
    return V * signs


def symmetric_eig(M: np.ndarray, tol: float = 1e-10) -> EigenPairs:
    """Full eigendecomposition of a real symmetric matrix.

    Eigenvalues come back ordered by decreasing magnitude (ties keep ascending
    signed order from the solver, which is deterministic). Each eigenvector is
    signed so its largest-magnitude entry is positive.

    Raises
    ------
    ParameterError
        If ``M`` is not square or not symmetric to 1e-12 relative.
    NumericalError
        If the solver fails or the relative residual ``||MV - V diag(w)||_F / ||M||_F``
        exceeds ``tol``.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ParameterError(f"expected a non-empty square matrix, got shape {M.shape}")
    fro = np.linalg.norm(M)
    if np.linalg.norm(M - M.T) > 1e-12 * max(fro, 1.0):
        raise ParameterError("matrix is not symmetric")
    try:
        w, V = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver did not converge: {exc}") from exc
    order = np.argsort(-np.abs(w), kind="stable")
    w = w[order]
    V = _fix_signs(V[:, order])
    resid = np.linalg.norm(M @ V - V * w)
    if resid > tol * max(fro, 1.0):
        raise NumericalError(f"eigendecomposition residual {resid:.3g} exceeds {tol:g} * ||M||_F")
    return EigenPairs(values=w, vectors=V)


def _top_pairs(M: np.ndarray, d: int, tol: float):
    n = M.shape[0]
    if not 1 <= d <= n:
        raise ParameterError(f"d must lie in [1, n={n}], got {d}")
    eig = symmetric_eig(M, tol=tol)
    mags = np.abs(eig.values)
    if d < n and abs(mags[d - 1] - mags[d]) <= 1e-10:
        warnings.warn(
            f"eigenvalue magnitudes {d} and {d + 1} coincide ({mags[d - 1]:.6g}); "
            "keeping the lower-index eigenpairs",
            RuntimeWarning,
            stacklevel=3,
        )
    return eig.values[:d], eig.vectors[:, :d]


def ase(A: np.ndarray, d: int, tol: float = 1e-10) -> Embedding:
    """Adjacency spectral embedding ``U_A S_A^{1/2}``.

    ``S_A`` holds the ``d`` largest eigenvalues of ``|A|``, i.e. the largest
    ``|lambda_i(A)|``; ``U_A`` holds the matching eigenvectors of ``A``.
    """
    A = np.asarray(A, dtype=float)
    vals, U = _top_pairs(A, d, tol)
    s = np.abs(vals)
    return Embedding(U * np.sqrt(np.maximum(s, 0.0)), s, "adjacency", vals)


def laplacian(A: np.ndarray) -> np.ndarray:
    """``D^{-1/2} A D^{-1/2}`` with ``D_ii = deg(i) / (n - 1)``."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n < 2:
        raise ParameterError("Laplacian needs at least two vertices")
    deg = A.sum(axis=1)
    isolated = np.flatnonzero(deg <= 0)
    if isolated.size:
        raise ParameterError(f"vertex {int(isolated[0])} is isolated (degree 0); Laplacian undefined")
    r = 1.0 / np.sqrt(deg / (n - 1))
    L = A * r[:, None] * r[None, :]
    return (L + L.T) / 2


def lse(A: np.ndarray, d: int, scaling: str = "linear", tol: float = 1e-10) -> Embedding:
    """Laplacian spectral embedding.

    ``scaling="linear"`` returns ``U_L S_L``; ``scaling="sqrt"`` returns
    ``U_L S_L^{1/2}`` instead.
    """
    if scaling not in ("linear", "sqrt"):
        raise ParameterError(f"scaling must be 'linear' or 'sqrt', got {scaling!r}")
    L = laplacian(A)
    vals, U = _top_pairs(L, d, tol)
    s = np.abs(vals)
    factor = s if scaling == "linear" else np.sqrt(s)
    return Embedding(U * factor, s, "laplacian", vals)
