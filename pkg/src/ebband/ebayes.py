"""Empirical Bayes posterior for the Gaussian sequence model.

Model: S_j = theta_j + Z_j / sqrt(n_eff), prior theta_j ~ N(0, j^(-1-2 alpha)),
independent over j = 1..n.  The smoothness alpha is set by maximizing the
marginal likelihood of S over a bracket, then the conjugate posterior is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

GRID_POINTS = 200
ALPHA_TOL = 1e-4
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PosteriorParams:
    alpha_hat: float
    n: int
    post_mean: np.ndarray
    post_var: np.ndarray
    bracket: tuple[float, float]
    n_eff: float


def default_bracket(n):
    return (0.0, math.log(n))


def _log_index(m):
    return np.log(np.arange(1, m + 1, dtype=float))


def log_marginal_likelihood(S, n_eff, alpha):
    """Marginal log-likelihood of ``S`` at smoothness ``alpha``, up to a constant.

    Each S_j is N(0, v_j) with v_j = j^(-1-2 alpha) + 1/n_eff.
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    if n_eff <= 0:
        raise ValueError(f"n_eff must be positive, got {n_eff}")
    S = np.asarray(S, dtype=float)
    logj = _log_index(S.shape[-1])
    return _loglik(S * S, logj, n_eff, alpha)


def _loglik(S2, logj, n_eff, alpha):
    # log v_j = log(j^(-1-2a) + 1/n_eff), evaluated stably via logaddexp
    log_v = np.logaddexp(-(1.0 + 2.0 * alpha) * logj, -math.log(n_eff))
    terms = log_v + S2 * np.exp(-log_v)
    return -0.5 * math.fsum(terms)


def estimate_alpha(S, n_eff, bracket=None):
    """Maximize the marginal likelihood over ``bracket`` (default [0, ln n]).

    A 200-point grid locates the best cell, then golden-section search refines
    within the neighbouring cells to 1e-4.
    """
    S = np.asarray(S, dtype=float)
    if S.size == 0:
        raise ValueError("S must be nonempty")
    if bracket is None:
        bracket = default_bracket(max(S.size, 2))
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 <= lo <= hi) or not math.isfinite(hi):
        raise ValueError(f"invalid alpha bracket {bracket!r}")
    if hi == lo:
        return lo

    S2 = S * S
    logj = _log_index(S.size)

    def objective(a):
        return _loglik(S2, logj, n_eff, a)

    alphas = np.linspace(lo, hi, GRID_POINTS)
    values = [objective(a) for a in alphas]
    k = int(np.argmax(values))
    a = alphas[max(k - 1, 0)]
    b = alphas[min(k + 1, GRID_POINTS - 1)]

    # golden-section search for a maximum on [a, b]
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > ALPHA_TOL:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = objective(d)

    # the refined point must not lose to the grid winner or the cell ends
    candidates = [(fc, c), (fd, d), (values[k], alphas[k]), (objective(a), a), (objective(b), b)]
    best = max(candidates, key=lambda item: item[0])
    return float(min(max(best[1], lo), hi))


def posterior_params(S, n_eff, alpha, bracket=None):
    """Conjugate normal posterior given ``alpha``."""
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    S = np.asarray(S, dtype=float)
    n = S.size
    prec = n_eff + np.exp((1.0 + 2.0 * alpha) * _log_index(n))
    post_var = 1.0 / prec
    post_mean = n_eff * post_var * S
    if bracket is None:
        bracket = default_bracket(max(n, 2))
    return PosteriorParams(
        alpha_hat=float(alpha),
        n=n,
        post_mean=post_mean,
        post_var=post_var,
        bracket=(float(bracket[0]), float(bracket[1])),
        n_eff=float(n_eff),
    )


def fit_posterior(S, n_eff, bracket=None):
    """Estimate alpha and return the posterior at that value."""
    S = np.asarray(S, dtype=float)
    if bracket is None:
        bracket = default_bracket(max(S.size, 2))
    alpha = estimate_alpha(S, n_eff, bracket)
    return posterior_params(S, n_eff, alpha, bracket)


def sample_posterior(params, N, rng):
    """``N`` independent posterior draws as an (N, n) array."""
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    z = rng.standard_normal((N, params.n))
    z *= np.sqrt(params.post_var)
    z += params.post_mean
    return z


def kept_count(level, N):
    """m = round-half-up(level * N), at least 1."""
    return max(1, min(N, math.floor(level * N + 0.5)))


def nearest_order(draws, center):
    """Draw distances to ``center`` and the stable (distance, index) ordering."""
    draws = np.asarray(draws)
    dist = np.empty(draws.shape[0])
    for start in range(0, draws.shape[0], 1024):
        diff = draws[start:start + 1024] - center
        dist[start:start + 1024] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return dist, np.argsort(dist, kind="stable")


def credible_radius(draws, center, level):
    """Distance of the m-th closest draw to ``center``, m = round-half-up(level * N)."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    draws = np.atleast_2d(np.asarray(draws, dtype=float))
    if draws.shape[0] == 0:
        raise ValueError("draws must be nonempty")
    dist, order = nearest_order(draws, center)
    m = kept_count(level, draws.shape[0])
    return float(dist[order[m - 1]])
