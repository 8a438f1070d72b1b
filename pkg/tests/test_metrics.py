import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ebband.band import Band
from ebband.metrics import (
    ball_coverage,
    band_widths,
    excess_mass,
    noncoverage_fraction,
    sup_coverage,
)
from ebband.transform import synthesize


def make_band(lower, upper):
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    return Band(lower.size, lower, upper, 0.5 * (lower + upper), 1, 0.0)


def ramp_case(n):
    t = np.arange(1, n + 1) / n
    return 2 * t, make_band(np.zeros(n), np.ones(n))


def test_noncoverage_examples():
    n = 100
    assert noncoverage_fraction(np.zeros(n), make_band(-np.ones(n), np.ones(n))) == 0.0
    f, band = ramp_case(4096)
    assert abs(noncoverage_fraction(f, band) - 0.5) <= 1 / 4096
    up = np.linspace(0, 1, n)
    assert noncoverage_fraction(up, make_band(up - 1, up)) == 0.0


def test_excess_mass_examples():
    n = 100
    assert excess_mass(np.zeros(n), make_band(-np.ones(n), np.ones(n))) == (0.0, 0.0)
    f, band = ramp_case(4096)
    absolute, relative = excess_mass(f, band)
    # int_{1/2}^1 (2t - 1) dt = 1/4; the L1 mass of 2t is 1
    assert absolute == pytest.approx(0.25, abs=2 / 4096)
    assert relative == pytest.approx(0.25, abs=2 / 4096)


def test_excess_mass_homogeneity():
    f, band = ramp_case(512)
    a1, r1 = excess_mass(f, band)
    a2, r2 = excess_mass(2 * f, make_band(2 * band.lower, 2 * band.upper))
    assert a2 == pytest.approx(2 * a1, rel=1e-14)
    assert r2 == pytest.approx(r1, rel=1e-14)


def test_excess_mass_zero_function_sentinel():
    n = 10
    _, rel = excess_mass(np.zeros(n), make_band(np.ones(n), 2 * np.ones(n)))
    assert rel == float("inf")


def test_sup_coverage_examples():
    f = np.linspace(-1, 1, 20)
    assert sup_coverage(f, make_band(f, f))
    lower = f.copy()
    lower[7] += 1e-9
    assert not sup_coverage(f, make_band(lower, f + 1))


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, 30, elements=st.floats(-2, 2)), st.floats(0, 1.5))
def test_sup_coverage_agrees_with_nc(f, half):
    band = make_band(-half * np.ones(30), half * np.ones(30))
    assert sup_coverage(f, band) == (noncoverage_fraction(f, band) == 0.0)
    absolute, _ = excess_mass(f, band)
    if absolute > 0:
        assert noncoverage_fraction(f, band) > 0


def test_ball_coverage_examples():
    assert ball_coverage(np.ones(4), np.ones(4), 0.0)
    assert not ball_coverage(np.array([1.0, 0.0]), np.zeros(2), 0.999)
    with pytest.raises(ValueError):
        ball_coverage(np.ones(3), np.ones(4), 1.0)
    with pytest.raises(ValueError):
        ball_coverage(np.ones(3), np.ones(3), -1.0)


def test_ball_distance_matches_grid_norm():
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal((2, 64))
    grid_dist = np.sqrt(np.mean((synthesize(a) - synthesize(b)) ** 2))
    assert ball_coverage(a, b, grid_dist + 1e-9)
    assert not ball_coverage(a, b, grid_dist - 1e-9)


def test_band_widths_examples():
    n = 5
    assert band_widths(make_band(np.zeros(n), 0.3 * np.ones(n))) == pytest.approx((0.3, 0.3))
    assert band_widths(make_band(np.zeros(n), np.zeros(n))) == (0.0, 0.0)
    assert band_widths(make_band(np.zeros(3), [1.0, 2.0, 3.0])) == (3.0, 2.0)


def test_length_mismatch():
    band = make_band(np.zeros(3), np.ones(3))
    for fn in (noncoverage_fraction, excess_mass, sup_coverage):
        with pytest.raises(ValueError):
            fn(np.zeros(4), band)


def test_relabeling_invariance():
    rng = np.random.default_rng(1)
    f = rng.standard_normal(50)
    lo, hi = -np.abs(rng.standard_normal(50)), np.abs(rng.standard_normal(50))
    perm = rng.permutation(50)
    a, b = make_band(lo, hi), make_band(lo[perm], hi[perm])
    assert noncoverage_fraction(f, a) == noncoverage_fraction(f[perm], b)
    assert excess_mass(f, a) == pytest.approx(excess_mass(f[perm], b), rel=1e-14)
    assert band_widths(a) == pytest.approx(band_widths(b))
