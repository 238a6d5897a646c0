import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rdpg import diagnostics as diag
from rdpg.errors import ParameterError
from rdpg.model import (
    SecondMomentSummary,
    compute_probability_matrix,
    sample_adjacency,
    sample_dirichlet_latents,
    second_moment_summary,
)

SUMMARY = second_moment_summary((2, 2, 2), 2)


def instance(n, seed):
    X = sample_dirichlet_latents(n, (2, 2, 2), 2, seed=seed)
    P = compute_probability_matrix(X)
    return X, P, sample_adjacency(P, seed=seed + 1)


def test_bound_formulas():
    assert diag.frobenius_a2_p2_bound(100) == pytest.approx(3716.92, abs=0.01)
    assert diag.eigenvalue_bound(1000, 2) == pytest.approx(664.90, abs=0.01)
    assert diag.theorem1_bound(1000, 2, 1 / 42) == pytest.approx(4956.36, abs=0.01)
    assert diag.eigenvector_bound(1000, 1 / 42) == pytest.approx(6.0461, abs=1e-4)
    assert diag.eigenvector_bound(10**6, 1 / 42) == pytest.approx(0.27039, abs=1e-5)


def test_theorem1_bound_edge_cases():
    assert diag.theorem1_bound(1000, 0, 0.1) == 0
    assert diag.theorem1_bound(500, 4, 0.05) == pytest.approx(2 * diag.theorem1_bound(500, 2, 0.05))
    with pytest.raises(ParameterError):
        diag.theorem1_bound(100, 2, 0.0)


def test_log_base_switch():
    assert diag.theorem1_bound(1024, 1, 1.0, log_base=2) == pytest.approx(2 * math.sqrt(30))
    with pytest.raises(ParameterError):
        diag.theorem1_bound(1024, 1, 1.0, log_base=10)


@given(n=st.integers(3, 10**7), d=st.integers(1, 20), delta=st.floats(1e-4, 1.0))
def test_theorem1_bound_monotone(n, d, delta):
    b = diag.theorem1_bound(n, d, delta)
    assert diag.theorem1_bound(n + 1, d, delta) > b
    assert diag.theorem1_bound(n, d + 1, delta) > b
    assert diag.theorem1_bound(n, d, delta * 1.01) < b


@given(obs=st.floats(0, 1e6), bound=st.floats(0, 1e6))
def test_report_definition(obs, bound):
    r = diag.BoundReport("x", obs, bound, 10, 2)
    assert r.satisfied == (obs <= bound)


def test_exact_case_zeroes_everything():
    X, P, _ = instance(80, 3)
    assert diag.check_frobenius_a2_p2(P, P).observed == 0
    assert diag.check_theorem1(P, X, SUMMARY, 2).observed < 1e-8
    for r in diag.check_eigenvector_bound(P, P, SUMMARY, 2):
        assert r.observed < 1e-8
        assert r.satisfied


def test_eigenvalue_concentration_reports():
    _, P, _ = instance(1000, 4)
    reports = {r.name: r for r in diag.check_eigenvalue_concentration(P, SUMMARY, 2)}
    assert reports["eigenvalue_1"].bound == pytest.approx(664.90, abs=0.01)
    assert reports["eigenvalue_1"].satisfied and reports["eigenvalue_2"].satisfied
    assert reports["rank_residual_P"].satisfied
    assert reports["eigengap_P"].satisfied


def test_eigenvalue_concentration_degenerate_input():
    P = np.zeros((20, 20))
    reports = diag.check_eigenvalue_concentration(P, SUMMARY, 2)
    np.testing.assert_allclose([reports[0].observed, reports[1].observed], 20 * SUMMARY.eigenvalues)


def test_shape_mismatch():
    with pytest.raises(ParameterError):
        diag.check_frobenius_a2_p2(np.zeros((3, 3)), np.zeros((4, 4)))


def test_vertex_exceedance_fraction():
    X = np.zeros((4, 2))
    aligned = X.copy()
    aligned[0] = [1, 0]
    assert diag.vertex_exceedance_fraction(aligned, X, 0.5) == 0.25


def test_small_monte_carlo_satisfies_bounds():
    for seed in range(5):
        X, P, A = instance(200, 10 * seed)
        assert diag.check_frobenius_a2_p2(A, P).satisfied
        assert diag.check_theorem1(A, X, SUMMARY, 2, delta=0.0238).satisfied


def test_moment_summary_from_custom_matrix():
    s = SecondMomentSummary(np.diag([0.3, 0.1]), np.array([0.3, 0.1]), 0.05)
    X, P, A = instance(100, 1)
    assert len(diag.check_eigenvector_bound(A, P, s, 2)) == 2


@pytest.mark.parametrize("n", [200, 500])
def test_violation_rate(n):
    runs = 100
    frob = thm = 0
    for seed in range(runs):
        X, P, A = instance(n, 1000 * seed + n)
        frob += not diag.check_frobenius_a2_p2(A, P).satisfied
        thm += not diag.check_theorem1(A, X, SUMMARY, 2, delta=0.0238).satisfied
    for count, p_max in [(frob, 2 / n**2), (thm, 2 * 5 / n**2)]:
        rate = count / runs
        se = math.sqrt(max(rate * (1 - rate), p_max * (1 - p_max)) / runs)
        assert rate <= p_max + 3 * se
