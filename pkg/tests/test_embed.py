import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import jacobi_eigvals
from rdpg.align import orthogonal_procrustes
from rdpg.embed import ase, laplacian, lse, symmetric_eig
from rdpg.errors import ParameterError
from rdpg.model import compute_probability_matrix, sample_adjacency, sample_dirichlet_latents

K3 = np.ones((3, 3)) - np.eye(3)
K4 = np.ones((4, 4)) - np.eye(4)


def random_graph(n, seed):
    X = sample_dirichlet_latents(n, (1, 1, 1), 2, seed=seed)
    return sample_adjacency(compute_probability_matrix(X), seed=seed + 1).astype(float)


def test_identity():
    np.testing.assert_allclose(symmetric_eig(np.eye(3)).values, [1, 1, 1])


def test_k3_spectrum():
    eig = symmetric_eig(K3)
    np.testing.assert_allclose(eig.values, [2, -1, -1], atol=1e-12)
    np.testing.assert_allclose(eig.vectors[:, 0], np.ones(3) / math.sqrt(3), atol=1e-12)


def test_diagonal_magnitude_order():
    np.testing.assert_allclose(symmetric_eig(np.diag([3.0, -5.0, 1.0])).values, [-5, 3, 1])


def test_asymmetric_rejected():
    with pytest.raises(ParameterError):
        symmetric_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_sign_convention():
    eig = symmetric_eig(random_graph(30, 4))
    V = eig.vectors
    idx = np.argmax(np.abs(V), axis=0)
    assert np.all(V[idx, np.arange(V.shape[1])] > 0)


def test_against_jacobi_oracle():
    rng = np.random.default_rng(8)
    for _ in range(5):
        M = rng.standard_normal((7, 7))
        M = M + M.T
        got = np.sort(symmetric_eig(M).values)
        np.testing.assert_allclose(got, jacobi_eigvals(M), atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32), n=st.integers(2, 100))
def test_residual_and_orthonormality(seed, n):
    A = random_graph(n, seed)
    eig = symmetric_eig(A)
    V, w = eig.vectors, eig.values
    assert np.linalg.norm(A @ V - V * w) <= 1e-8 * max(np.linalg.norm(A), 1.0)
    np.testing.assert_allclose(V.T @ V, np.eye(n), atol=1e-8)
    assert np.all(np.diff(np.abs(w)) <= 1e-12)
    # |A| spectrum equals |spectrum of A|
    absA = V @ np.diag(np.abs(w)) @ V.T
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(absA))[::-1], np.abs(w), atol=1e-8)
    # Gram reconstruction from the full-dimensional embedding
    emb = ase(A, n)
    np.testing.assert_allclose((emb.coords * np.sign(emb.signed_eigenvalues)) @ emb.coords.T, A, atol=1e-6)


def test_ase_k3():
    emb = ase(K3, 1)
    np.testing.assert_allclose(emb.coords[:, 0], math.sqrt(2 / 3), atol=1e-12)
    np.testing.assert_allclose(emb.retained_eigenvalues, [2])


def test_ase_zero_matrix_warns():
    with pytest.warns(RuntimeWarning):
        emb = ase(np.zeros((4, 4)), 1)
    assert not emb.coords.any()
    assert emb.retained_eigenvalues[0] == 0


def test_ase_d_too_large():
    with pytest.raises(ParameterError):
        ase(K3, 4)


def test_ase_exact_recovery():
    X = sample_dirichlet_latents(60, (2, 2, 2), 2, seed=5)
    P = compute_probability_matrix(X)
    res = orthogonal_procrustes(ase(P, 2).coords, X)
    assert res.frobenius_error < 1e-9


def test_ase_columns_orthogonal():
    emb = ase(random_graph(80, 2), 4)
    G = emb.coords.T @ emb.coords
    np.testing.assert_allclose(G - np.diag(np.diag(G)), 0, atol=1e-8)


def test_truncation_consistency():
    A = random_graph(90, 6)
    big = ase(A, 6)
    for d in range(1, 6):
        np.testing.assert_array_equal(ase(A, d).coords, big.coords[:, :d])
        np.testing.assert_array_equal(big.truncate(d).coords, big.coords[:, :d])


def test_ase_permutation_equivariance():
    rng = np.random.default_rng(1)
    checked = 0
    for seed in range(20):
        A = random_graph(60, 100 + seed)
        w = np.abs(symmetric_eig(A).values)
        if min(w[0] - w[1], w[1] - w[2]) < 1e-6:
            continue
        perm = rng.permutation(60)
        Ap = A[np.ix_(perm, perm)]
        np.testing.assert_allclose(ase(Ap, 2).coords, ase(A, 2).coords[perm], atol=1e-9)
        checked += 1
    assert checked >= 10


def test_determinism():
    A = random_graph(70, 9)
    assert np.array_equal(ase(A, 3).coords, ase(A, 3).coords)


def test_lse_k3_k4():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        np.testing.assert_allclose(lse(K3, 1).coords[:, 0], 2 / math.sqrt(3), atol=1e-12)
        np.testing.assert_allclose(lse(K4, 1).coords[:, 0], 1.5, atol=1e-12)
    np.testing.assert_allclose(lse(K4, 1, scaling="sqrt").coords[:, 0], math.sqrt(3) / 2, atol=1e-12)


def test_laplacian_matches_definition():
    A = random_graph(40, 3)
    A[0, :] = A[:, 0] = 0
    A[0, 1] = A[1, 0] = 1
    deg = A.sum(axis=1) / 39
    np.testing.assert_allclose(laplacian(A), A / np.sqrt(np.outer(deg, deg)), atol=1e-14)


def test_lse_isolated_vertex():
    A = np.zeros((4, 4))
    A[0, 1] = A[1, 0] = A[1, 2] = A[2, 1] = 1
    with pytest.raises(ParameterError, match="vertex 3"):
        lse(A, 1)


def test_lse_bad_scaling():
    with pytest.raises(ParameterError):
        lse(K3, 1, scaling="cube")
