import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdpg.errors import InvariantError, NumericalError, ParameterError
from rdpg.model import (
    assign_threshold_labels,
    check_adjacency,
    compute_probability_matrix,
    dirichlet_second_moment,
    sample_adjacency,
    sample_blockmodel,
    sample_dirichlet_latents,
    second_moment_summary,
    summarize_moment,
)


def test_dirichlet_support():
    X = sample_dirichlet_latents(3, (2, 2, 2), 2, seed=7)
    assert X.shape == (3, 2)
    assert np.all(X >= 0)
    assert np.all(X.sum(axis=1) <= 1)


def test_dirichlet_deterministic():
    a = sample_dirichlet_latents(50, (2, 2, 2), 2, seed=11)
    b = sample_dirichlet_latents(50, (2, 2, 2), 2, seed=11)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_dirichlet_latents(50, (2, 2, 2), 2, seed=12))


def test_dirichlet_empirical_moment():
    X = sample_dirichlet_latents(10**6, (2, 2, 2), 2, seed=2024)
    expected = np.array([[1 / 7, 2 / 21], [2 / 21, 1 / 7]])
    np.testing.assert_allclose(X.T @ X / len(X), expected, atol=0.005)


def test_closed_form_moment_matches_monte_carlo():
    # closed form checked against an unrelated Dirichlet sampler
    rng = np.random.default_rng(5)
    for alpha in [(2, 2, 2), (1, 1, 1), (0.5, 3, 1.5, 2)]:
        Z = rng.dirichlet(alpha, 400_000)[:, :2]
        np.testing.assert_allclose(dirichlet_second_moment(alpha, 2), Z.T @ Z / len(Z), atol=0.003)


@pytest.mark.parametrize("alpha,keep", [((2, 0, 2), 2), ((2, 2, 2), 3), ((2, 2, 2), 0), ((-1, 2), 1)])
def test_dirichlet_bad_parameters(alpha, keep):
    with pytest.raises(ParameterError):
        sample_dirichlet_latents(5, alpha, keep, seed=0)


@pytest.mark.parametrize(
    "X,expected",
    [
        ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
        ([[0.5, 0.25], [0.25, 0.5]], [[0.3125, 0.25], [0.25, 0.3125]]),
        ([[0.6, 0.0], [0.6, 0.0]], [[0.36, 0.36], [0.36, 0.36]]),
    ],
)
def test_probability_matrix(X, expected):
    np.testing.assert_allclose(compute_probability_matrix(np.array(X)), expected, rtol=0, atol=1e-15)


def test_probability_matrix_rejects_negative_inner_products():
    with pytest.raises(InvariantError):
        compute_probability_matrix(np.array([[0.5, 0.0], [-0.5, 0.0]]))


def test_probability_matrix_exact_and_equivariant():
    X = sample_dirichlet_latents(40, (2, 2, 2), 2, seed=3)
    P = compute_probability_matrix(X)
    assert np.max(np.abs(X @ X.T - P)) == 0
    perm = np.random.default_rng(0).permutation(40)
    np.testing.assert_array_equal(compute_probability_matrix(X[perm]), P[np.ix_(perm, perm)])


def test_adjacency_extremes():
    assert not sample_adjacency(np.zeros((5, 5)), seed=1).any()
    full = sample_adjacency(np.ones((5, 5)), seed=1)
    np.testing.assert_array_equal(full, 1 - np.eye(5, dtype=np.uint8))


def test_adjacency_rejects_asymmetric():
    P = np.array([[0, 0.2], [0.3, 0]])
    with pytest.raises(ParameterError):
        sample_adjacency(P, seed=0)


def test_adjacency_mean_degree():
    n = 2000
    P = np.full((n, n), 0.3)
    A = sample_adjacency(P, seed=99)
    # binomial oracle: sd of the mean edge density ~ sqrt(.21 / 2e6) ~ 3e-4
    assert 0.29 <= A.sum() / (n * (n - 1)) <= 0.31


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**63), n=st.integers(1, 200))
def test_adjacency_symmetric_hollow(seed, n):
    X = sample_dirichlet_latents(n, (2, 2, 2), 2, seed=seed)
    A = sample_adjacency(compute_probability_matrix(X), seed=seed)
    check_adjacency(A)


def test_edge_frequency():
    P = np.full((3, 3), 0.5)
    hits = sum(int(sample_adjacency(P, seed=s)[0, 2]) for s in range(10_000))
    assert 0.47 <= hits / 10_000 <= 0.53


@pytest.mark.parametrize("row,label", [((0.2, 0.5), 1), ((0.5, 0.2), 0), ((0.3, 0.3), 0)])
def test_threshold_labels(row, label):
    assert assign_threshold_labels(np.array([row]))[0] == label


def test_threshold_labels_needs_two_dims():
    with pytest.raises(ParameterError):
        assign_threshold_labels(np.ones((3, 1)) * 0.5)


@pytest.mark.parametrize(
    "alpha,moment,eigs,delta",
    [
        ((2, 2, 2), [[1 / 7, 2 / 21], [2 / 21, 1 / 7]], (5 / 21, 1 / 21), 1 / 42),
        ((1, 1, 1), [[1 / 6, 1 / 12], [1 / 12, 1 / 6]], (1 / 4, 1 / 12), 1 / 24),
    ],
)
def test_second_moment_summary(alpha, moment, eigs, delta):
    s = second_moment_summary(alpha, 2)
    np.testing.assert_allclose(s.moment, moment, atol=1e-15)
    np.testing.assert_allclose(s.eigenvalues, eigs, atol=1e-15)
    assert s.delta == pytest.approx(delta, abs=1e-15)


def test_eigengap_condition_holds_just_below_supremum():
    s = second_moment_summary((2, 2, 2), 2)
    delta = s.delta * (1 - 1e-9)
    l1, l2 = s.eigenvalues
    assert 2 * delta < l2
    assert 2 * delta < l1 - l2


def test_repeated_eigenvalues_rejected():
    with pytest.raises(NumericalError):
        summarize_moment(0.2 * np.eye(2))


def test_rank_deficient_moment_rejected():
    with pytest.raises(NumericalError):
        summarize_moment(np.array([[0.25, 0.25], [0.25, 0.25]]))


def test_blockmodel_probabilities():
    B = np.array([[0.5, 0.1], [0.1, 0.4]])
    X, labels, A = sample_blockmodel([3, 4], B, seed=0)
    np.testing.assert_allclose(X @ X.T, B[np.ix_(labels, labels)], atol=1e-12)
    check_adjacency(A)
    assert list(labels) == [0, 0, 0, 1, 1, 1, 1]
