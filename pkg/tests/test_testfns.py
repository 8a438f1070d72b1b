import math

import numpy as np
import pytest
from scipy import integrate

from ebband.testfns import (
    CASES,
    TestFunction,
    beta_density,
    eval_test_function,
    normalization_constant,
)


@pytest.mark.parametrize(
    "a,b,t,expected",
    [(1, 1, 0.3, 1.0), (10, 5, 0.0, 0.0), (2, 2, 0.5, 1.5)],
)
def test_beta_density_examples(a, b, t, expected):
    assert beta_density(a, b, t) == pytest.approx(expected, abs=1e-14)


def test_beta_density_matches_closed_form_integral():
    # Beta(30, 17) has a large normalizer; its density still integrates to 1
    val, _ = integrate.quad(lambda t: beta_density(30, 17, t), 0, 1, epsabs=1e-13)
    assert val == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("a,b,t", [(0, 1, 0.5), (1, -2, 0.5), (2, 2, -0.1), (2, 2, 1.5)])
def test_beta_density_domain(a, b, t):
    with pytest.raises(ValueError):
        beta_density(a, b, t)


def test_normalization_closed_forms():
    assert normalization_constant(4) == pytest.approx(18.0, rel=1e-12)
    # 0.9 + 2 * int_0^0.05 (1 + 8u)^2 du = 1.0453333...
    assert normalization_constant(5) == pytest.approx(1 / math.sqrt(0.9 + 2 * 0.0726666666666667), rel=1e-12)
    assert normalization_constant(5) == pytest.approx(0.97807, abs=1e-4)


@pytest.mark.parametrize("case_id", [1, 2, 3])
def test_normalization_against_riemann_sum(case_id):
    m = 10**6
    t = (np.arange(m) + 0.5) / m
    c = normalization_constant(case_id)
    raw = eval_test_function(case_id, t) / c
    riemann = 1.0 / math.sqrt(np.mean(raw * raw))
    assert c == pytest.approx(riemann, abs=1e-6)


@pytest.mark.parametrize("case_id", CASES)
def test_unit_energy(case_id):
    m = 10**5
    t = np.arange(1, m + 1) / m
    assert np.mean(eval_test_function(case_id, t) ** 2) == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("case_id", CASES)
def test_unit_energy_quadrature(case_id):
    breaks = [0.45, 0.5, 0.55] if case_id == 5 else [1 / 3, 0.5, 2 / 3]
    val, _ = integrate.quad(lambda t: eval_test_function(case_id, t) ** 2, 0, 1,
                            points=breaks, limit=500, epsabs=1e-12)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_eval_examples():
    assert eval_test_function(4, 0.5) == pytest.approx(3.0, abs=1e-12)
    assert eval_test_function(4, 0.2) == 0.0
    assert eval_test_function(5, 0.5) == pytest.approx(1.3693, abs=1e-3)


def test_case4_symmetry_exact():
    u = np.arange(0, 2**10 // 6 + 1) / 2**10  # dyadic, so 1/2 +- u is exact
    np.testing.assert_array_equal(eval_test_function(4, 0.5 - u), eval_test_function(4, 0.5 + u))


def test_case5_flat_parts():
    c = normalization_constant(5)
    t = np.concatenate([np.linspace(0, 0.449, 200), np.linspace(0.5501, 1, 200)])
    assert np.all(eval_test_function(5, t) == c)


def test_pure_and_vectorized():
    t = np.linspace(0, 1, 101)
    for case_id in CASES:
        a = eval_test_function(case_id, t)
        np.testing.assert_array_equal(a, eval_test_function(case_id, t))
        np.testing.assert_array_equal(a[::10], [eval_test_function(case_id, s) for s in t[::10]])


def test_bad_case():
    with pytest.raises(ValueError):
        normalization_constant(6)
    with pytest.raises(ValueError):
        TestFunction(0)


def test_callable_wrapper():
    f = TestFunction(3)
    assert f.normalization_constant > 0
    assert f(0.25) == eval_test_function(3, 0.25)
