import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class AlignmentResult:
    rotation: np.ndarray
    aligned: np.ndarray
    frobenius_error: float


def _check_pair(A, B):
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape != B.shape or A.shape[1] < 1:
        raise ParameterError(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def orthogonal_procrustes(Xhat, X) -> AlignmentResult:
    """Find the orthogonal ``W`` minimizing ``||Xhat W - X||_F``.

    With ``Xhat^T X = U S V^T``, the minimizer is ``W = U V^T``. Reflections
    are allowed. When the cross-covariance is rank deficient the minimizer is
    not unique; the one built from the SVD factors is returned and a
    ``RuntimeWarning`` is emitted.
    """
    Xhat, X = _check_pair(Xhat, X)
    U, s, Vt = np.linalg.svd(Xhat.T @ X)
    if s[-1] <= 1e-12 * max(s[0], np.finfo(float).tiny):
        warnings.warn("Procrustes cross-covariance is rank deficient; minimizer is not unique",
                      RuntimeWarning, stacklevel=2)
    W = U @ Vt
    aligned = Xhat @ W
    return AlignmentResult(W, aligned, float(np.linalg.norm(aligned - X)))


def mse_per_vertex(aligned, X) -> float:
    aligned, X = _check_pair(aligned, X)
    return float(np.sum((aligned - X) ** 2) / aligned.shape[0])
