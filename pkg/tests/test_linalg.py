import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from stsdiscord.linalg import expm, jacobi_eigvalsh

finite = st.floats(-3, 3, allow_nan=False)


@given(arrays(float, (5, 5), elements=finite))
@settings(max_examples=40)
def test_expm_matches_scipy(m):
    np.testing.assert_allclose(expm(m), scipy.linalg.expm(m), rtol=1e-11, atol=1e-11)


def test_expm_antisymmetric_is_orthogonal():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(40, 40)) * 4
    g = g - g.T
    u = expm(g)
    np.testing.assert_allclose(u.T @ u, np.eye(40), atol=1e-12)


def test_expm_zero_and_scalar():
    np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))
    assert expm(np.array([[2.0]]))[0, 0] == pytest.approx(np.exp(2.0), rel=1e-14)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 17])
def test_jacobi_matches_lapack(n):
    rng = np.random.default_rng(n)
    a = rng.normal(size=(6, n, n))
    a = a + a.transpose(0, 2, 1)
    np.testing.assert_allclose(jacobi_eigvalsh(a), np.linalg.eigvalsh(a), atol=1e-12)


def test_jacobi_single_matrix_and_degenerate():
    a = np.diag([3.0, 1.0, 1.0, 2.0])
    np.testing.assert_allclose(jacobi_eigvalsh(a), [1, 1, 2, 3])
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    b = q @ np.diag([1e-15, 1e-15, 0.5, 0.5, 0.5, 2.0]) @ q.T
    np.testing.assert_allclose(jacobi_eigvalsh(b), np.linalg.eigvalsh(b), atol=1e-13)
