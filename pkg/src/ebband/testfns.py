"""The five test signals on [0, 1], scaled to unit L2 norm."""

from __future__ import annotations

import functools
import math

import numpy as np

CASES = (1, 2, 3, 4, 5)

# Gauss-Legendre nodes per panel and panel count for the smooth cases.
_GL_NODES = 200
_GL_PANELS = 64


def _check_case(case_id):
    if case_id not in CASES:
        raise ValueError(f"case_id must be one of {CASES}, got {case_id!r}")


def _check_unit_interval(t):
    t = np.asarray(t, dtype=float)
    if np.any(~((t >= 0.0) & (t <= 1.0))):
        raise ValueError("t must lie in [0, 1]")
    return t


def _log_beta(a, b):
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_density(a, b, t):
    """Density of Beta(a, b) at ``t`` (scalar or array)."""
    if not (a > 0 and b > 0):
        raise ValueError(f"beta parameters must be positive, got a={a}, b={b}")
    t = _check_unit_interval(t)
    scale = math.exp(-_log_beta(a, b))
    with np.errstate(divide="ignore"):
        out = np.power(t, a - 1.0) * np.power(1.0 - t, b - 1.0) * scale
    return out[()] if out.ndim == 0 else out


def _raw(case_id, t):
    if case_id == 1:
        return beta_density(10, 5, t) + beta_density(7, 7, t) + beta_density(5, 10, t)
    if case_id == 2:
        return 3.0 * beta_density(30, 17, t) + 2.0 * beta_density(3, 11, t)
    if case_id == 3:
        return (
            7.0 * beta_density(15, 30, t)
            + 2.0 * np.sin(32.0 * np.pi * t - 2.0 * np.pi / 3.0)
            - 3.0 * np.cos(16.0 * np.pi * t)
            - np.cos(64.0 * np.pi * t)
        )
    if case_id == 4:
        # Written as a tent around 1/2 so the two halves mirror exactly.
        d = np.abs(t - 0.5)
        inside = (t >= 1.0 / 3.0) & (t <= 2.0 / 3.0)
        return np.where(inside, np.maximum(1.0 / 6.0 - d, 0.0), 0.0)
    # case 5; at t = 0.5 both pieces give 1.4, the rising one is used.
    rising = (t >= 0.45) & (t <= 0.5)
    falling = (t > 0.5) & (t <= 0.55)
    return (
        1.0
        + np.where(rising, 8.0 * (t - 0.45), 0.0)
        + np.where(falling, 8.0 * (0.55 - t), 0.0)
    )


def _gauss_legendre_sq_integral(case_id):
    x, w = np.polynomial.legendre.leggauss(_GL_NODES)
    edges = np.linspace(0.0, 1.0, _GL_PANELS + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    vals = _raw(case_id, t)
    return math.fsum(weights * vals * vals)


@functools.lru_cache(maxsize=None)
def normalization_constant(case_id):
    """Positive scale c such that the integral of (c * f_raw)^2 over [0, 1] is 1."""
    _check_case(case_id)
    if case_id == 4:
        sq = 2.0 * (1.0 / 6.0) ** 3 / 3.0
    elif case_id == 5:
        sq = 0.9 + 2.0 * (1.4**3 - 1.0) / 24.0
    else:
        sq = _gauss_legendre_sq_integral(case_id)
    return 1.0 / math.sqrt(sq)


def eval_test_function(case_id, t):
    """Normalized test signal ``case_id`` evaluated at ``t``."""
    _check_case(case_id)
    t = _check_unit_interval(t)
    out = normalization_constant(case_id) * _raw(case_id, t)
    return out[()] if np.ndim(out) == 0 else out


class TestFunction:
    """One of the five normalized signals, callable on points of [0, 1]."""

    __test__ = False  # keep pytest from collecting it

    def __init__(self, case_id):
        _check_case(case_id)
        self.case_id = case_id
        self.normalization_constant = normalization_constant(case_id)

    def __call__(self, t):
        return eval_test_function(self.case_id, t)

    def __repr__(self):
        return f"TestFunction(case_id={self.case_id})"
