"""One-sided DFT helpers.

Convention: forward transform unnormalized, inverse divides by ``N``.
Only the nonnegative half ``h = 0 .. N//2`` is stored; the negative half of a
real signal is its Hermitian mirror and is never materialized.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OneSidedSpectrum:
    bins: np.ndarray
    grid: np.ndarray
    n_time: int

    def __post_init__(self):
        h = self.n_time // 2 + 1
        if self.bins.shape[-1] != h or self.grid.shape != (h,):
            raise ValueError(
                f"expected {h} bins for n_time={self.n_time}, got {self.bins.shape[-1]}"
            )


def frequency_grid(n: int) -> np.ndarray:
    """Normalized frequencies ``h / n`` of the one-sided bins, in ``[0, 0.5]``."""
    return np.arange(n // 2 + 1) / n


def rfft(x: np.ndarray) -> np.ndarray:
    return np.fft.rfft(x, axis=-1)


def irfft(bins: np.ndarray, n: int) -> np.ndarray:
    return np.fft.irfft(bins, n=n, axis=-1)


def forward_one_sided(x) -> OneSidedSpectrum:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a 1-D sequence")
    if x.size < 4:
        raise ValueError("at least 4 samples are required")
    if not np.all(np.isfinite(x)):
        raise ValueError("input must be finite")
    return OneSidedSpectrum(rfft(x), frequency_grid(x.size), x.size)


def to_time_mode(s: OneSidedSpectrum) -> np.ndarray:
    """Real sequence whose one-sided spectrum is ``s`` (Hermitian completion)."""
    return irfft(s.bins, s.n_time)


def half_spectrum_energy(bins: np.ndarray, n: int) -> float:
    """Time-domain energy ``sum(x**2)`` computed from one-sided bins."""
    w = np.full(bins.shape[-1], 2.0)
    w[0] = 1.0
    if n % 2 == 0:
        w[-1] = 1.0
    return float(np.sum(w * np.abs(bins) ** 2) / n)
