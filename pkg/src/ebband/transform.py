"""Regression data on the grid i/n and the cosine sequence-model transform.

Grid samples y_1..y_n map to coefficients S_1..S_n in an orthonormal cosine
basis of R^n, scaled so that (1/n) sum_i y_i^2 = sum_j S_j^2 and N(0, sigma^2)
noise on y becomes N(0, sigma^2/n) noise on each S_j.

Two bases are available:

``"cosine"`` (default)
    S_j = (w_j/n) sum_i y_i cos((j - 1) pi (i - 1/2) / n), w_1 = 1, w_j = sqrt(2),
    a DCT-II.  Contains the constant function.
``"half-cosine"``
    S_j = (sqrt(2)/n) sum_i y_i cos((j - 1/2) pi (i - 1/2) / n), a DCT-IV.  Every
    basis curve vanishes at t = 1.

Both directions of either transform go through one complex FFT of length 2n.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

BASES = ("cosine", "half-cosine")
DEFAULT_BASIS = "cosine"


@dataclass(frozen=True)
class RegressionData:
    n: int
    y: np.ndarray
    sigma: float
    truth: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if len(self.y) != self.n:
            raise ValueError(f"expected {self.n} observations, got {len(self.y)}")

    @property
    def grid(self):
        return grid(self.n)


@dataclass(frozen=True)
class SequenceObservations:
    n: int
    S: np.ndarray
    noise_level: float
    basis: str = DEFAULT_BASIS


def grid(n):
    """Design points t_i = i/n, i = 1..n."""
    return np.arange(1, n + 1, dtype=float) / n


def generate_data(f, n, sigma, rng):
    """Draw y_i = f(i/n) + sigma * z_i with z_i standard normal from ``rng``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    truth = np.asarray(f(grid(n)), dtype=float)
    z = rng.standard_normal(n)
    y = truth + sigma * z if sigma > 0 else truth.copy()
    return RegressionData(n=n, y=y, sigma=float(sigma), truth=truth)


def _check_basis(basis):
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}, got {basis!r}")


# --- fast kernels -----------------------------------------------------------


@functools.lru_cache(maxsize=32)
def _twiddles(n, basis):
    m = np.arange(n)
    if basis == "cosine":
        post = np.exp(-1j * np.pi * m / (2 * n))
        pre = None
    else:
        pre = np.exp(-1j * np.pi * m / (2 * n))
        pre.setflags(write=False)
        post = np.exp(-1j * np.pi * (2 * m + 1) / (4 * n))
    post.setflags(write=False)
    return pre, post


def dct2(x):
    """X_k = sum_m x_m cos(pi k (2m + 1) / (2n)) along the last axis."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    _, post = _twiddles(n, "cosine")
    return (np.fft.fft(x, n=2 * n, axis=-1)[..., :n] * post).real


def dct3(c):
    """y_m = sum_k c_k cos(pi k (2m + 1) / (2n)); transpose of :func:`dct2`."""
    c = np.asarray(c, dtype=float)
    n = c.shape[-1]
    _, post = _twiddles(n, "cosine")
    return (2 * n) * np.fft.ifft(c * post.conj(), n=2 * n, axis=-1)[..., :n].real


def dct4(x):
    """X_k = sum_m x_m cos(pi (2k + 1)(2m + 1) / (4n)) along the last axis."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    pre, post = _twiddles(n, "half-cosine")
    return (np.fft.fft(x * pre, n=2 * n, axis=-1)[..., :n] * post).real


def cosine_kernel(n, basis=DEFAULT_BASIS):
    """Matrix C[j, i] of raw cosines (j indexes frequency, i the sample)."""
    _check_basis(basis)
    two_i = 2 * np.arange(n, dtype=np.int64) + 1
    if basis == "cosine":
        freq = 2 * np.arange(n, dtype=np.int64)
    else:
        freq = two_i
    # integer phase reduction mod 8n keeps entries accurate for large n
    phase = np.outer(freq, two_i) % (8 * n)
    return np.cos(np.pi * phase / (4.0 * n))


@functools.lru_cache(maxsize=32)
def _weights(n, basis):
    if basis == "cosine":
        w = np.full(n, np.sqrt(2.0))
        w[0] = 1.0
    else:
        w = np.full(n, np.sqrt(2.0))
    w.setflags(write=False)
    return w


# --- calibrated transforms --------------------------------------------------


def analyze_values(y, basis=DEFAULT_BASIS):
    """Coefficients of grid values ``y`` (any leading batch shape)."""
    _check_basis(basis)
    y = np.asarray(y, dtype=float)
    n = y.shape[-1]
    raw = dct2(y) if basis == "cosine" else dct4(y)
    return raw * (_weights(n, basis) / n)


def analyze(data, basis=DEFAULT_BASIS):
    """Map regression data to calibrated sequence-model coefficients."""
    S = analyze_values(data.y, basis)
    return SequenceObservations(n=data.n, S=S, noise_level=data.sigma / np.sqrt(data.n), basis=basis)


def synthesize(theta, n=None, basis=DEFAULT_BASIS):
    """Grid values of the curve with coefficients ``theta``; inverse of analyze.

    Accepts one coefficient vector or a stack of them along the last axis.
    """
    _check_basis(basis)
    theta = np.asarray(theta, dtype=float)
    if n is not None and theta.shape[-1] != n:
        raise ValueError(f"expected {n} coefficients, got {theta.shape[-1]}")
    w = _weights(theta.shape[-1], basis)
    if basis == "cosine":
        return dct3(theta * w)
    return dct4(theta * w)


def analyze_direct(y, basis=DEFAULT_BASIS):
    """O(n^2) matrix form of :func:`analyze_values`, for checking."""
    y = np.asarray(y, dtype=float)
    n = y.shape[-1]
    return (y @ cosine_kernel(n, basis).T) * (_weights(n, basis) / n)


def true_coefficients(truth, basis=DEFAULT_BASIS):
    """Coefficients of the noiseless grid samples; the reference for ball coverage."""
    return analyze_values(truth, basis)


def transform_check(n, basis=DEFAULT_BASIS, seed=0):
    """Round-trip, Gram and Parseval errors for grid size ``n``.

    Gram is the largest entry of |C C^T - D| with D the diagonal Gram of the
    raw kernel ((n/2) I, with n in the constant slot for the cosine basis).
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _check_basis(basis)
    rng = np.random.default_rng(seed)
    y = rng.standard_normal(n)
    S = analyze_values(y, basis)
    roundtrip = float(np.max(np.abs(synthesize(S, basis=basis) - y)))
    energy = float(np.mean(y * y))
    parseval = abs(energy - float(np.sum(S * S))) / energy
    C = cosine_kernel(n, basis)
    diag = np.full(n, n / 2.0)
    if basis == "cosine":
        diag[0] = n
    gram = 0.0
    for start in range(0, n, 512):
        stop = min(start + 512, n)
        block = C[start:stop] @ C.T
        block[np.arange(stop - start), np.arange(start, stop)] -= diag[start:stop]
        gram = max(gram, float(np.max(np.abs(block))))
    return {"roundtrip": roundtrip, "gram": gram, "parseval": parseval}
