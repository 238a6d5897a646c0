"""Random dot product graph model.

Latent positions are plain ``(n, d)`` float arrays, probability and adjacency
matrices are ``(n, n)`` arrays. The helpers below sample them and validate
their invariants.

Randomness comes from :class:`numpy.random.Philox`, a counter-based
generator, so a seed fully determines every draw.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantError, NumericalError, ParameterError

_INNER_TOL = 1e-12


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def check_latent_positions(X: np.ndarray, tol: float = _INNER_TOL) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise InvariantError(f"latent positions must be a non-empty (n, d) matrix, got shape {X.shape}")
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms > 1 + tol):
        i = int(np.argmax(norms))
        raise InvariantError(f"row {i} has norm {norms[i]:.6g} > 1")
    G = X @ X.T
    if G.min() < -tol or G.max() > 1 + tol:
        raise InvariantError("pairwise inner products fall outside [0, 1]")
    return X


def check_adjacency(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvariantError(f"adjacency must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise InvariantError("adjacency is not symmetric")
    if np.any(np.diag(A) != 0):
        raise InvariantError("adjacency has nonzero diagonal")
    if not np.all((A == 0) | (A == 1)):
        raise InvariantError("adjacency entries must be 0 or 1")
    return A


def sample_dirichlet_latents(n: int, alpha, keep_dims: int, seed: int) -> np.ndarray:
    """Draw ``n`` Dirichlet(alpha) vectors and keep the first ``keep_dims`` coordinates.

    Each draw is a vector of independent Gamma(alpha_i, 1) variates
    normalized by its sum.
    """
    alpha = np.asarray(alpha, dtype=float)
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if alpha.ndim != 1 or alpha.size < 2 or np.any(alpha <= 0):
        raise ParameterError(f"alpha must be a vector of >= 2 positive reals, got {alpha}")
    if not 1 <= keep_dims <= alpha.size - 1:
        raise ParameterError(f"keep_dims must lie in [1, {alpha.size - 1}], got {keep_dims}")
    rng = make_rng(seed)
    g = rng.standard_gamma(alpha, size=(n, alpha.size))
    Z = g / g.sum(axis=1, keepdims=True)
    return np.ascontiguousarray(Z[:, :keep_dims])


def compute_probability_matrix(X: np.ndarray) -> np.ndarray:
    """Return ``P = X X^T``.

    The diagonal holds squared row norms; it is kept for completeness but
    :func:`sample_adjacency` never reads it.
    """
    X = check_latent_positions(X)
    P = X @ X.T
    # symmetrize exactly so downstream symmetry checks are bitwise
    return (P + P.T) / 2


def sample_adjacency(P: np.ndarray, seed: int) -> np.ndarray:
    """Sample a symmetric hollow Bernoulli(P) adjacency matrix.

    One uniform variate is drawn per pair ``i < j`` in row-major order, so the
    graph depends only on ``(P, seed)``.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ParameterError(f"P must be square, got shape {P.shape}")
    if not np.array_equal(P, P.T):
        raise ParameterError("P is not symmetric")
    n = P.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    p = P[iu, ju]
    if p.size and (p.min() < 0 or p.max() > 1):
        raise ParameterError("off-diagonal entries of P must lie in [0, 1]")
    u = make_rng(seed).random(p.size)
    A = np.zeros((n, n), dtype=np.uint8)
    hit = u < p
    A[iu[hit], ju[hit]] = 1
    A[ju[hit], iu[hit]] = 1
    return A


def assign_threshold_labels(X: np.ndarray) -> np.ndarray:
    """Label 1 where the first coordinate is strictly below the second, else 0."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise ParameterError("threshold labels need at least two latent dimensions")
    return (X[:, 0] < X[:, 1]).astype(np.int64)


@dataclass(frozen=True)
class SecondMomentSummary:
    moment: np.ndarray
    eigenvalues: np.ndarray
    delta: float


def dirichlet_second_moment(alpha, keep_dims: int) -> np.ndarray:
    """Closed-form ``E[X X^T]`` for the leading ``keep_dims`` Dirichlet coordinates."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.ndim != 1 or alpha.size < 2 or np.any(alpha <= 0):
        raise ParameterError(f"alpha must be a vector of >= 2 positive reals, got {alpha}")
    if not 1 <= keep_dims <= alpha.size - 1:
        raise ParameterError(f"keep_dims must lie in [1, {alpha.size - 1}], got {keep_dims}")
    a0 = alpha.sum()
    a = alpha[:keep_dims]
    M = np.outer(a, a) + np.diag(a)
    return M / (a0 * (a0 + 1))


def summarize_moment(moment: np.ndarray, rel_tol: float = 1e-12) -> SecondMomentSummary:
    """Eigenvalues and the supremum eigengap parameter for a second-moment matrix.

    ``delta`` is ``min(smallest pairwise gap, smallest eigenvalue) / 2``; any
    strictly smaller positive value satisfies the eigengap condition.
    """
    M = np.asarray(moment, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ParameterError(f"moment must be square, got {M.shape}")
    if not np.allclose(M, M.T, rtol=0, atol=rel_tol * max(1.0, np.abs(M).max())):
        raise ParameterError("moment matrix is not symmetric")
    M = (M + M.T) / 2
    vals = np.linalg.eigvalsh(M)[::-1]
    scale = max(abs(vals[0]), np.finfo(float).tiny)
    if vals[-1] <= rel_tol * scale:
        raise NumericalError(f"second moment matrix is rank deficient (smallest eigenvalue {vals[-1]:.3g})")
    gap = np.min(-np.diff(vals)) if vals.size > 1 else np.inf
    if gap <= rel_tol * scale:
        raise NumericalError("second moment matrix has repeated eigenvalues")
    return SecondMomentSummary(moment=M, eigenvalues=vals, delta=float(min(gap, vals[-1]) / 2))


def second_moment_summary(alpha, keep_dims: int) -> SecondMomentSummary:
    return summarize_moment(dirichlet_second_moment(alpha, keep_dims))


def sample_blockmodel(block_sizes, B: np.ndarray, seed: int):
    """Sample a stochastic blockmodel as an RDPG.

    ``B`` must be positive semi-definite with entries in [0, 1]; block latent
    vectors are its scaled eigenvectors, so ``P_ij = B[y_i, y_j]``.
    Returns ``(X, labels, A)`` with vertices ordered by block.
    """
    B = np.asarray(B, dtype=float)
    sizes = np.asarray(block_sizes, dtype=int)
    if B.shape != (sizes.size, sizes.size):
        raise ParameterError("B must be square with one row per block")
    vals, vecs = np.linalg.eigh((B + B.T) / 2)
    if vals.min() < -1e-12:
        raise ParameterError("B must be positive semi-definite")
    keep = vals > 1e-12
    nu = vecs[:, keep] * np.sqrt(vals[keep])
    labels = np.repeat(np.arange(sizes.size), sizes)
    X = nu[labels]
    P = B[np.ix_(labels, labels)]
    A = sample_adjacency(P, seed)
    return X, labels, A
