import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from stsdiscord.exceptions import ParameterError
from stsdiscord.states import (
    StsParams,
    characteristic_function,
    gaussian_charfn,
    is_separable,
    lambdas_from_quadratures,
    separability_threshold_r,
    sts_covariance,
)

from conftest import sts_params


def test_vacuum():
    cov = sts_covariance(StsParams(0, 0, 0))
    assert (cov.a, cov.b, cov.c1, cov.c2) == (0.5, 0.5, 0.0, 0.0)


def test_pure_tmsv_values():
    # independent high-precision evaluation
    sh, ch = mpmath.sinh(1), mpmath.cosh(1)
    cov = sts_covariance(StsParams(1, 0, 0))
    assert cov.a == pytest.approx(float(sh**2 + 0.5), abs=1e-14)
    assert cov.b == cov.a
    assert cov.a == pytest.approx(1.881098, abs=1e-6)
    assert abs(cov.c1) == pytest.approx(float(sh * ch), abs=1e-14)
    assert abs(cov.c1) == pytest.approx(1.813430, abs=1e-6)


def test_thermal_tmsv_values():
    sh, ch = mpmath.sinh(1), mpmath.cosh(1)
    cov = sts_covariance(StsParams(1, 10, 10))
    assert cov.a == pytest.approx(float(21 * sh**2 + 10.5), rel=1e-14)
    assert abs(cov.c1) == pytest.approx(float(21 * sh * ch), rel=1e-14)
    assert cov.c1 < 0 < cov.c2


def test_rejects_negative_parameters():
    for args in [(-0.1, 0, 0), (0, -1, 0), (0, 0, -1), (float("nan"), 0, 0)]:
        with pytest.raises(ParameterError):
            StsParams(*args)


@given(sts_params())
def test_c1_is_minus_c2(p):
    cov = sts_covariance(p)
    assert cov.c1 == -cov.c2


@given(st.floats(0, 100), st.floats(0, 100))
def test_unsqueezed_is_thermal_product(n1, n2):
    cov = sts_covariance(StsParams(0, n1, n2))
    assert cov.c1 == 0 and cov.c2 == 0
    assert cov.a == n1 + 0.5 and cov.b == n2 + 0.5


@given(sts_params())
def test_swap_symmetry(p):
    cov = sts_covariance(p)
    sw = sts_covariance(StsParams(p.r, p.n2, p.n1))
    assert sw.a == pytest.approx(cov.b, rel=1e-14)
    assert sw.b == pytest.approx(cov.a, rel=1e-14)
    assert abs(sw.c1) == pytest.approx(abs(cov.c1), rel=1e-14)


def test_charfn_normalisation_and_product_form():
    p = StsParams(0.7, 2.0, 3.0)
    assert characteristic_function(p, 0, 0) == 1
    q = StsParams(0.0, 2.0, 3.0)
    l1, l2 = 0.3 - 0.2j, -0.5 + 0.1j
    expected = math.exp(-(2.5) * abs(l1) ** 2) * math.exp(-(3.5) * abs(l2) ** 2)
    assert characteristic_function(q, l1, l2) == pytest.approx(expected, rel=1e-14)


def test_charfn_covariance_consistency_grid():
    """Tr[rho D D] against exp(-Lambda^T sigma Lambda / 2) on 5^4 points for 20 states."""
    rng = np.random.default_rng(11)
    axis = np.linspace(-1.0, 1.0, 5)
    grid = np.meshgrid(axis, axis, axis, axis, indexing="ij")
    for _ in range(20):
        p = StsParams(rng.uniform(0, 1.5), rng.uniform(0, 5), rng.uniform(0, 5))
        l1, l2 = lambdas_from_quadratures(*grid)
        lhs = characteristic_function(p, l1, l2)
        rhs = gaussian_charfn(sts_covariance(p), *grid)
        np.testing.assert_allclose(lhs.real, rhs, rtol=1e-10)
        assert np.all(lhs.imag == 0)


def test_separability_examples():
    assert is_separable(StsParams(1, 1000, 1000))
    res = is_separable(StsParams(1, 1000, 1000))
    assert res.lhs == pytest.approx(1e6 / 2001)
    assert not is_separable(StsParams(1, 0, 0))
    one = is_separable(StsParams(1, 1, 1))
    assert not one and one.lhs == pytest.approx(1 / 3)
    assert one.n_r == pytest.approx(1.3811, abs=1e-4)


def test_separability_boundary():
    n = 3.0
    r_star = separability_threshold_r(n)
    assert math.sinh(r_star) ** 2 == pytest.approx(n * n / (1 + 2 * n), rel=1e-14)
    assert is_separable(StsParams(r_star * (1 - 1e-9), n, n))
    assert not is_separable(StsParams(r_star * (1 + 1e-9), n, n))
    res = is_separable(StsParams(0.0, 0.0, 0.0))  # 0 > 0 fails: boundary case
    assert not res and res.boundary
