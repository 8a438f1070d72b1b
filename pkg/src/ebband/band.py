"""Envelope band over the posterior draws nearest the posterior mean."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ebayes import kept_count, nearest_order
from .transform import DEFAULT_BASIS, synthesize

_CHUNK = 256


@dataclass(frozen=True)
class Band:
    n: int
    lower: np.ndarray
    upper: np.ndarray
    center: np.ndarray
    kept: int
    radius: float

    @property
    def width(self):
        return self.upper - self.lower


def build_band(draws, params, level=0.95, basis=DEFAULT_BASIS):
    """Keep the m = round-half-up(level * N) draws closest to the posterior mean
    in coefficient l2 and take their pointwise min and max on the grid.
    """
    draws = np.asarray(draws, dtype=float)
    if draws.ndim != 2 or draws.shape[0] < 2:
        raise ValueError("need at least two draws")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    n = params.n
    if draws.shape[1] != n:
        raise ValueError(f"draws have {draws.shape[1]} coordinates, expected {n}")

    dist, order = nearest_order(draws, params.post_mean)
    m = kept_count(level, draws.shape[0])
    kept = order[:m]

    lower = np.full(n, np.inf)
    upper = np.full(n, -np.inf)
    for start in range(0, m, _CHUNK):
        curves = synthesize(draws[kept[start:start + _CHUNK]], basis=basis)
        np.minimum(lower, curves.min(axis=0), out=lower)
        np.maximum(upper, curves.max(axis=0), out=upper)

    return Band(
        n=n,
        lower=lower,
        upper=upper,
        center=synthesize(params.post_mean, basis=basis),
        kept=m,
        radius=float(dist[kept[-1]]),
    )
