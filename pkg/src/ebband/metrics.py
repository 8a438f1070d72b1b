"""Per-replication evaluation of a band against the truth on the grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ReplicationMetrics:
    max_width: float
    ave_width: float
    nc: float
    re: float
    sup_covered: bool
    ball_covered: bool
    alpha_hat: float
    radius: float = float("nan")


def _aligned(f_grid, band):
    f = np.asarray(f_grid, dtype=float)
    if f.shape != band.lower.shape:
        raise ValueError(f"length mismatch: {f.shape} vs band {band.lower.shape}")
    return f


def noncoverage_fraction(f_grid, band):
    """Fraction of grid points where f leaves the closed band."""
    f = _aligned(f_grid, band)
    outside = (f < band.lower) | (f > band.upper)
    return float(np.count_nonzero(outside)) / f.size


def excess_mass(f_grid, band):
    """Mass of f outside the band, absolute and relative to the L1 mass of f.

    Returns ``(absolute, relative)``; relative is ``inf`` when f vanishes on the
    grid but still escapes the band.
    """
    f = _aligned(f_grid, band)
    over = np.maximum(f - band.upper, 0.0) + np.maximum(band.lower - f, 0.0)
    absolute = float(np.mean(over))
    if absolute == 0.0:
        return 0.0, 0.0
    mass = float(np.mean(np.abs(f)))
    return absolute, (absolute / mass if mass > 0 else float("inf"))


def sup_coverage(f_grid, band):
    f = _aligned(f_grid, band)
    return bool(np.all((band.lower <= f) & (f <= band.upper)))


def ball_coverage(theta_true, post_mean, radius):
    theta_true = np.asarray(theta_true, dtype=float)
    post_mean = np.asarray(post_mean, dtype=float)
    if theta_true.shape != post_mean.shape:
        raise ValueError(f"length mismatch: {theta_true.shape} vs {post_mean.shape}")
    if radius < 0:
        raise ValueError(f"radius must be nonnegative, got {radius}")
    return bool(np.linalg.norm(theta_true - post_mean) <= radius)


def band_widths(band):
    """(max width, average width) of the band over the grid."""
    w = band.upper - band.lower
    return float(np.max(w)), float(np.mean(w))
