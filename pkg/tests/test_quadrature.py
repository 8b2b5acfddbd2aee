import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cylplate.errors import QuadratureError
from cylplate.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, gk15, integrate


def test_rule_weights_sum_to_two():
    assert math.isclose(KRONROD_WEIGHTS.sum(), 2.0, rel_tol=1e-15)
    assert math.isclose(GAUSS_WEIGHTS.sum(), 2.0, rel_tol=1e-15)
    assert np.allclose(NODES, -NODES[::-1])


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_exact_for_polynomials(deg):
    # the 15-point Kronrod rule integrates degree <= 22 exactly
    val, _, _ = gk15(lambda x: x ** deg, -1.0, 1.0)
    want = 0.0 if deg % 2 else 2.0 / (deg + 1)
    assert abs(val - want) < 1e-14


@settings(max_examples=50, deadline=None)
@given(a=st.floats(-5, 5), w=st.floats(0.1, 5))
def test_integrate_exponential(a, w):
    b = a + w
    val, err = integrate(np.exp, [a, b], rel_tol=1e-12)
    want = math.exp(b) - math.exp(a)
    assert abs(val - want) <= 1e-12 * abs(want) * 10
    assert err >= 0


def test_endpoint_singularity_is_handled():
    val, _ = integrate(lambda x: 1.0 / np.sqrt(x), [0.0, 1.0], rel_tol=1e-10)
    assert abs(val - 2.0) < 1e-9


def test_breakpoints_split_the_range():
    f = lambda x: np.abs(x - 0.3)
    val, _ = integrate(f, [0.0, 0.3, 1.0], rel_tol=1e-13)
    assert abs(val - (0.045 + 0.245)) < 1e-14


def test_non_convergence_reports_progress():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(1.0 / x) / x, [1e-6, 1.0], rel_tol=1e-14, max_intervals=20)
    assert info.value.value is not None and info.value.error > 0


def test_result_deterministic():
    f = lambda x: np.cos(40 * x) * np.exp(-x)
    assert integrate(f, [0, 3], rel_tol=1e-9) == integrate(f, [0, 3], rel_tol=1e-9)


def test_rejects_bad_points():
    with pytest.raises(ValueError):
        integrate(np.exp, [1.0, 0.0])
    with pytest.raises(ValueError):
        integrate(np.exp, [1.0])
