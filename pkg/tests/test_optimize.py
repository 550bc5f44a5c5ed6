import math

import pytest
from hypothesis import given, strategies as st

from stsdiscord.exceptions import NoRootError
from stsdiscord.optimize import bisect, expand_bracket, golden_section_max, golden_section_min


@given(st.floats(-5, 5), st.floats(0.1, 10))
def test_golden_quadratic(x0, scale):
    res = golden_section_min(lambda x: scale * (x - x0) ** 2, -10, 10, tol=1e-9)
    assert res.x == pytest.approx(x0, abs=1e-8)


def test_golden_monotone_returns_boundary():
    assert golden_section_min(lambda x: x, 0.0, 1.0).x == 0.0
    assert golden_section_max(lambda x: x, 0.0, 1.0).x == 1.0


def test_golden_max_of_sine():
    res = golden_section_max(math.sin, 0.0, 3.0, tol=1e-10)
    # the argmax of a quadratic peak is only resolved to ~sqrt(machine eps)
    assert res.x == pytest.approx(math.pi / 2, abs=1e-7)
    assert res.fx == pytest.approx(1.0, abs=1e-15)


def test_bisect_sqrt2():
    root = bisect(lambda x: x * x - 2, 0.0, 2.0, tol=1e-12)
    assert root.x == pytest.approx(math.sqrt(2), abs=1e-12)
    assert root.f_lo < 0 < root.f_hi


def test_bisect_requires_sign_change():
    with pytest.raises(NoRootError):
        bisect(lambda x: x * x + 1, -1.0, 1.0)


def test_expand_bracket():
    lo, hi, f_lo, f_hi = expand_bracket(lambda x: x - 37.5, 0.0, 1.0)
    assert lo < 37.5 <= hi and f_lo < 0 <= f_hi
    with pytest.raises(NoRootError):
        expand_bracket(lambda x: -1.0, 0.0, 1.0, limit=100)
